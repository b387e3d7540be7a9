// oracle.hpp — Discrete k-lattice mode sums, the ground truth for the
// continuum-limit kernels and influence functionals

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "qreg/paths.hpp"
#include "qreg/types.hpp"

namespace qreg {

class ResourceCapError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite phonon box: modes k = 2 pi (n1/L1, n2/L2, n3/L3), 0 < |k| < 1/a,
/// linear dispersion omega_k = c_L |k|. The per-mode coupling weight is
/// |g(omega/c_L)|^2 = (bath prefactor)/c1 with c1 = V_S/(2 pi^2 c_L^3), so
/// the box volume cancels against the mode density in the converged regime.
///
/// chain_dir and dot_dir orient the register inside the box (unit vectors,
/// orthogonal). The defaults are deliberately tilted against the lattice
/// axes: an axis-aligned register makes the odd angular sums cancel exactly
/// by lattice parity at any volume, which would hide the continuum-limit
/// decay these sums are meant to exhibit.
struct KLattice {
    std::array<double, 3> box = {0, 0, 0};  // L1, L2, L3 [m]
    double lattice_constant = 0;            // a [m]
    std::size_t mode_cap = 2'000'000;
    std::array<double, 3> chain_dir = {2.0 / 7.0, 3.0 / 7.0, 6.0 / 7.0};
    std::array<double, 3> dot_dir = {3.0 / 3.6055512754639891, -2.0 / 3.6055512754639891, 0.0};

    static KLattice cubic(double box_edge, double lattice_constant,
                          std::size_t mode_cap = 2'000'000);

    void validate() const;
    std::size_t count_modes() const;  // throws ResourceCapError above mode_cap
};

/// Direct mode sum for the decay (which = 2) or phase (which = 1) kernel at
/// separation r; the +/- bracket variants are averaged, which cancels the
/// odd-in-(k.d) terms exactly on a sign-symmetric mode set.
double oracle_q(const KLattice& lattice, const BathModel& bath,
                const RegisterGeometry& geometry, int r, double t, int which);

/// The boundary sums Psi_n(t) and Phi_n (0-based qubit index) that multiply
/// the blip vector in the exact phase; both vanish in the continuum limit.
std::pair<double, double> oracle_psi_phi(const KLattice& lattice, const BathModel& bath,
                                         const RegisterGeometry& geometry, int qubit, double t);

/// Closed-form per-mode double-time kernel
///   q_k(tau) = int_0^tau ds int_0^s ds' exp(-i omega (s - s'))
///            = -i tau/omega + (1 - exp(-i omega tau))/omega^2.
std::complex<double> oracle_mode_kernel(double omega, double tau);

/// M_k^{jm} = q_k(t_j - t_{m-1}) + q_k(t_{j-1} - t_m)
///          - q_k(t_j - t_m) - q_k(t_{j-1} - t_{m-1}),
/// the double integral of exp(-i omega (s - s')) over the rectangle
/// [t_m_prev, t_m] x [t_j_prev, t_j].
std::complex<double> oracle_mode_rectangle(double omega, double t_j, double t_j_prev,
                                           double t_m, double t_m_prev);

/// Per-mode double-time-integral influence functional over a general path,
/// built from the kernels above. Fully independent of the quadrature-based
/// path module.
Influence oracle_influence(const KLattice& lattice, const BathModel& bath,
                           const RegisterGeometry& geometry, const PiecewisePath& path);

}  // namespace qreg
