// bessel.hpp — Bessel function of the first kind, order zero

#pragma once

namespace qreg {

/// J0(x) to better than 1e-13 absolute error for |x| <= 1e3.
/// Chebyshev expansion of J0 below |x| = 8, amplitude/phase expansions above.
double bessel_j0(double x);

}  // namespace qreg
