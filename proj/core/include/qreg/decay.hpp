// decay.hpp — Time-dependent decay/phase kernels and their Toeplitz assembly

#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "qreg/quadrature.hpp"
#include "qreg/types.hpp"

namespace qreg {

/// Decay kernel of a phonon bath at qubit separation r,
///   Q2_r(t) = int_0^inf J_r(w)/w^2 (1 - cos wt) coth(beta w/2) dw.
/// Zero at t = 0 by construction.
double q2_r(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
            const QuadratureConfig& cfg = {});

/// Phase kernel, temperature independent,
///   Q1_r(t) = int_0^inf J_r(w)/w^2 (sin wt - wt) dw.
double q1_r(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
            const QuadratureConfig& cfg = {});

/// Gate-bath kernels with the ohmic spectral density eta*w*exp(-w/omega_c):
/// which = 1 gives the phase kernel (no temperature dependence), which = 2
/// the decay kernel. At T = 0 they reduce to
///   q2 = (eta/2) ln(1 + omega_c^2 t^2),  q1 = eta [atan(omega_c t) - omega_c t],
/// which the quadrature must reproduce; the closed forms are not used here.
double q_fermionic(double eta, double omega_c_f, double temperature, double t, int which,
                   const QuadratureConfig& cfg = {});

/// Thread-safe memo for kernel values, keyed by bath, geometry scales,
/// separation, time and temperature. Values are deterministic, so concurrent
/// duplicate computation is harmless. The quadrature configuration is not
/// part of the key; use one configuration per cache instance.
class KernelCache {
  public:
    double q1(const BathModel&, const RegisterGeometry&, int r, double t,
              const QuadratureConfig& cfg = {});
    double q2(const BathModel&, const RegisterGeometry&, int r, double t,
              const QuadratureConfig& cfg = {});
    double fermionic(double eta, double omega_c_f, double temperature, double t, int which,
                     const QuadratureConfig& cfg = {});
    std::size_t size() const;

  private:
    struct Key {
        int tag = 0;  // 0 piezo, 1 deformation, 10+which for gate kernels
        int r = 0;
        double p1 = 0, p2 = 0;        // kernel order, cutoff
        double g1 = 0, g2 = 0, g3 = 0;  // geometry (q0, d, c_L)
        double t = 0, temperature = 0;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    double lookup_or(const Key& key, const std::function<double()>& compute);

    mutable std::mutex mutex_;
    std::unordered_map<Key, double, KeyHash> values_;
};

/// Kernel values Q1_r(t), Q2_r(t) for r = 0 .. N-1 at one time. Entries above
/// r_max_used are exactly zero when the profile was built with truncation.
/// The represented N x N matrices have entries Qm[i][j] = 2 q_m[|i-j|].
struct DecayProfile {
    double time = 0;
    std::vector<double> q1;
    std::vector<double> q2;
    int r_max_used = 0;

    int n() const { return static_cast<int>(q2.size()); }
};

/// Full profile: every separation r = 0 .. N-1 is evaluated.
DecayProfile decay_profile(const BathModel& bath, const RegisterGeometry& geometry, double t,
                           KernelCache* cache = nullptr, const QuadratureConfig& cfg = {});

/// Truncated profile: evaluation stops once |Q2_r|/Q2_0 < cfg.rel_tol for
/// three consecutive r; entries beyond r_max_used are zeroed.
DecayProfile decay_profile_truncated(const BathModel& bath, const RegisterGeometry& geometry,
                                     double t, KernelCache* cache = nullptr,
                                     const QuadratureConfig& cfg = {});

/// <x| Qm(t) |y> in O(N * r_max) using the symmetric Toeplitz structure;
/// m = 1 or 2 selects the phase or decay matrix.
double toeplitz_quadratic(const DecayProfile& profile, int m, std::span<const double> x,
                          std::span<const double> y);

/// Same bilinear form with the diagonal (r = 0) part excluded.
double toeplitz_quadratic_offdiagonal(const DecayProfile& profile, int m,
                                      std::span<const double> x, std::span<const double> y);

/// e(t,N) = 2 sum_{r>=1} (1 - r/N) Q2_r/Q2_0. Requires Q2_0 > 0.
double e_factor(const DecayProfile& profile);

/// e~(t,N) = 2 sum_{r>=1} |Q2_r|/Q2_0; always >= |e|.
double e_tilde_factor(const DecayProfile& profile);

}  // namespace qreg
