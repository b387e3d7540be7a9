// spectral.hpp — Distance-indexed spectral functions J_r(omega) of the phonon baths

#pragma once

#include "qreg/types.hpp"

namespace qreg {

namespace detail {

// sin(x)/x; series branch 1 - x^2/6 below |x| = 1e-4 (next term x^4/120 < 1e-17).
double sinc(double x);

// 1 - sin(x)/x without cancellation at small x.
double one_minus_sinc(double x);

// sinc(a) - sinc(b), stable when both arguments are small.
double sinc_diff(double a, double b);

// 1 - cos(x) as 2 sin^2(x/2); exact at x = 0, no cancellation anywhere.
double one_minus_cos(double x);

// sin(x) - x without cancellation at small x.
double sin_minus_x(double x);

}  // namespace detail

/// J_r(omega) = c1 omega^2 |g|^2 [sinc(omega r tau_s) - sinc(omega tau_s sqrt(r^2+a^2))]
/// with the bath-specific prefactor c1|g|^2 substituted (piezo or deformation);
/// the separation index r is taken as a real parameter so the r -> 0 limit can
/// be probed. Integer r = 0 dispatches to the closed J_0 form
/// c1 omega^2 |g|^2 [1 - sinc(omega/omega_q)].
double eval_J_real_r(const BathModel& bath, const RegisterGeometry& geometry, double r,
                     double omega);

/// Integer-separation wrapper; requires 0 <= r < n_qubits and a phonon bath.
double eval_J(const BathModel& bath, const RegisterGeometry& geometry, int r, double omega);

/// Ohmic gate spectral density J(omega) = eta * omega * exp(-omega/omega_c_f).
double eval_J_ohmic(double eta, double omega_c_f, double omega);

/// A bound spectral function: bath + geometry + separation index.
struct SpectralFunction {
    BathModel bath;
    RegisterGeometry geometry;
    int separation = 0;  // r, 0 <= r < n_qubits

    SpectralFunction(BathModel b, RegisterGeometry g, int r);
    double operator()(double omega) const { return eval_J(bath, geometry, separation, omega); }
};

}  // namespace qreg
