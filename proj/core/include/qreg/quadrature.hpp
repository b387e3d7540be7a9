// quadrature.hpp — Semi-infinite oscillatory integrals with exponential cutoffs

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qreg {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_subdivisions = 10'000;
    double cutoff_decades = 40.0;  // integrate to omega_max = cutoff_decades * cutoff

    void validate() const;
};

/// Known structure of the integrand: every oscillatory factor cos(omega*tau)
/// or sin(omega*tau) contributes its time-like coefficient tau to `periods`,
/// and `cutoff` is the exponential decay scale in omega.
struct OscillationHints {
    std::vector<double> periods;  // [s]; non-negative, zero entries ignored
    double cutoff = 0;            // [rad/s]

    void validate() const;
};

struct IntegralResult {
    double value = 0;
    double error = 0;  // estimated absolute error
    int panels = 0;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, IntegralResult best)
        : std::runtime_error(what), best_(best) {}
    const IntegralResult& best_estimate() const { return best_; }

  private:
    IntegralResult best_;
};

/// Integrate f over [0, cutoff_decades*cutoff]. The interval is cut into
/// panels no longer than half the shortest oscillation period among the
/// hints (floored at omega_max/max_subdivisions, capped at cutoff/2), each
/// panel is handled by a 15-point Gauss-Kronrod rule, and panels whose
/// embedded error estimate is too large are bisected until the total
/// estimated error meets max(abs_tol, rel_tol*|value|). Panel sums use
/// compensated accumulation; results are deterministic for fixed inputs.
///
/// The integrand is never evaluated at omega = 0; callers must pass
/// integrands whose omega -> 0 limit has already been regularized.
/// When the integrand cancels so strongly that the double-precision
/// roundoff floor of the panel sums exceeds rel_tol*|value|, that floor
/// becomes the convergence target (the returned error field stays honest).
/// Throws ConvergenceError (carrying the best estimate) if the subdivision
/// budget runs out.
IntegralResult integrate_oscillatory(const std::function<double(double)>& f,
                                     const OscillationHints& hints,
                                     const QuadratureConfig& cfg = {});

/// Same panel scheme on a finite interval [a, b] with a caller-chosen
/// initial panel width.
IntegralResult integrate_interval(const std::function<double(double)>& f, double a,
                                  double b, double initial_width,
                                  const QuadratureConfig& cfg = {});

/// | numerical int_0^pi sin^2(y cos t) J0(z sin t) sin t dt
///   - [sinc(z) - sinc(sqrt(z^2 + 4 y^2))] |,  z > 0.
double angular_bessel_identity_check(double y, double z);

}  // namespace qreg
