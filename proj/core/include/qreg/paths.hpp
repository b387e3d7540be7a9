// paths.hpp — Influence functional over piecewise-constant double paths

#pragma once

#include <set>
#include <vector>

#include "qreg/decay.hpp"
#include "qreg/register.hpp"

namespace qreg {

/// A double path (zeta_up, zeta_down) of register labels, constant on each
/// of the p+1 segments [t_j, t_{j+1}) cut by the switch times. Stored as the
/// per-segment blip/sojourn vectors: xi[s] and chi[s] belong to segment s.
struct PiecewisePath {
    double total_time = 0;
    std::vector<double> switch_times;            // inside (0, total_time), sorted
    std::vector<std::vector<double>> xi;         // segments x N, entries in {-1,0,1}
    std::vector<std::vector<double>> chi;        // segments x N

    /// Degenerate p = 0 path holding one (l, m) pair for the whole interval.
    static PiecewisePath constant(const BasisPair& pair, double t);

    int segments() const { return static_cast<int>(xi.size()); }
    int n_qubits() const { return xi.empty() ? 0 : static_cast<int>(xi.front().size()); }
    double segment_start(int s) const { return s == 0 ? 0.0 : switch_times[s - 1]; }
    double segment_end(int s) const {
        return s + 1 == segments() ? total_time : switch_times[s];
    }

    void validate() const;
};

struct Influence {
    double lambda_b = 0;  // decay exponent
    double x_b = 0;       // phase [rad]
};

/// Lazily evaluated Toeplitz kernel matrices Q_m(tau), usually backed by a
/// phonon bath through a KernelCache; any profile source can be plugged in
/// instead (synthetic kernels, site-diagonal gate kernels). Q2 extends
/// evenly to negative times, Q1 oddly, matching the parity of their
/// defining integrands.
class ToeplitzKernels {
  public:
    using ProfileSource = std::function<DecayProfile(double tau)>;

    ToeplitzKernels(BathModel bath, RegisterGeometry geometry, KernelCache* cache = nullptr,
                    QuadratureConfig cfg = {});
    ToeplitzKernels(RegisterGeometry geometry, ProfileSource source);

    /// Profile at |tau|; tau = 0 yields the zero profile.
    const DecayProfile& profile(double tau) const;
    /// <x| Qm(tau) |y> with the parity extension applied.
    double form(int m, std::span<const double> x, std::span<const double> y, double tau) const;
    double form_offdiagonal(int m, std::span<const double> x, std::span<const double> y,
                            double tau) const;
    /// <x| K_jk |y> for the four-term difference kernel between segments
    /// [t_k_prev, t_k] and [t_j_prev, t_j]; the linear-in-tau part of Q1
    /// drops out of this combination.
    double difference_form(int m, std::span<const double> x, std::span<const double> y,
                           double t_j, double t_j_prev, double t_k, double t_k_prev) const;

    const RegisterGeometry& geometry() const { return geometry_; }

  private:
    RegisterGeometry geometry_;
    ProfileSource source_;
    mutable std::unordered_map<double, DecayProfile> profiles_;
};

/// Influence functional of a phonon bath over a general path,
///   Lambda = sum_j <xi_j|Q2(dt_j)|xi_j> + sum_{j>k} <xi_j|L_jk|xi_k>,
///   X      = sum_j <xi_j|Q1(dt_j)|chi_j> + sum_{j>k} <xi_j|X_jk|chi_k>,
/// with the difference kernels
///   K_jk = Q(t_j - t_{k-1}) + Q(t_{j-1} - t_k) - Q(t_j - t_k) - Q(t_{j-1} - t_{k-1}).
/// The linear-in-t part of Q1 cancels inside the differences.
Influence influence_functional(const PiecewisePath& path, const ToeplitzKernels& kernels);

Influence influence_functional(const PiecewisePath& path, const BathModel& bath,
                               const RegisterGeometry& geometry, KernelCache* cache = nullptr,
                               const QuadratureConfig& cfg = {});

/// Decomposition of a path into its frozen ("trivial") qubits and the rest,
/// with the cross terms between the two parts isolated. By bilinearity,
///   lambda(full) = lambda_trivial + lambda_dynamical + lambda_cross
/// and likewise for the phase; the cross terms involve only the
/// off-diagonal kernel part, so they vanish for site-diagonal baths.
struct PathSplit {
    std::vector<double> xi_trivial, chi_trivial;      // constant in time
    std::vector<std::vector<double>> xi_dynamical;    // per segment
    std::vector<std::vector<double>> chi_dynamical;
    double lambda_trivial = 0, x_trivial = 0;
    double lambda_dynamical = 0, x_dynamical = 0;
    double lambda_cross = 0, x_cross = 0;
};

/// frozen_qubits: 0-based indices whose path components never switch
/// (violations throw std::invalid_argument).
PathSplit split_path(const PiecewisePath& path, const std::set<int>& frozen_qubits,
                     const ToeplitzKernels& kernels);

/// Closed-form single-qubit and C-NOT stage durations:
///   T_not = pi/(2 delta), T_1 = 3 pi/(4 eps), T_2 = 7 pi/(8 eps),
///   T_hadamard = pi/(2 sqrt(2) delta)   (Hadamard runs at delta = eps).
struct GateDurations {
    double t_not = 0;
    double t_phase_1 = 0;
    double t_phase_2 = 0;
    double t_hadamard = 0;
};

GateDurations gate_durations(double delta, double epsilon);

}  // namespace qreg
