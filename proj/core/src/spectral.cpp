#include "qreg/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace qreg {

namespace detail {

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double one_minus_sinc(double x) {
    const double x2 = x * x;
    if (std::abs(x) < 0.1) {
        // x^2/6 - x^4/120 + x^6/5040 - x^8/362880
        return x2 / 6.0 *
               (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return 1.0 - std::sin(x) / x;
}

double sinc_diff(double a, double b) {
    const double a2 = a * a, b2 = b * b;
    if (std::max(std::abs(a), std::abs(b)) < 0.1) {
        // (b^2-a^2)/3! - (b^4-a^4)/5! + (b^6-a^6)/7! - (b^8-a^8)/9!
        const double d2 = b2 - a2;
        return d2 * (1.0 / 6.0 - (a2 + b2) / 120.0 +
                     (a2 * a2 + a2 * b2 + b2 * b2) / 5040.0 -
                     (a2 + b2) * (a2 * a2 + b2 * b2) / 362880.0);
    }
    return sinc(a) - sinc(b);
}

double one_minus_cos(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

double sin_minus_x(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return -x * x2 / 6.0 *
               (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return std::sin(x) - x;
}

}  // namespace detail

namespace {

// c1 |g(omega/c_L)|^2 for the phonon couplings.
double phonon_prefactor(const BathModel& bath, double omega) {
    if (const auto* p = std::get_if<PiezoCoupling>(&bath.coupling))
        return p->strength / omega * std::exp(-omega / p->cutoff);
    if (const auto* d = std::get_if<DeformationCoupling>(&bath.coupling))
        return omega / d->strength_sq * std::exp(-omega / d->cutoff);
    throw std::invalid_argument(
        "eval_J: gate baths have no geometric structure, use eval_J_ohmic");
}

}  // namespace

double eval_J_real_r(const BathModel& bath, const RegisterGeometry& geometry, double r,
                     double omega) {
    if (omega < 0) throw std::domain_error("eval_J: omega must be >= 0");
    if (omega == 0) return 0.0;
    const double transit = geometry.transit_time();
    const double ratio = geometry.size_ratio();
    const double geometric = detail::sinc_diff(
        omega * r * transit, omega * transit * std::sqrt(r * r + ratio * ratio));
    return phonon_prefactor(bath, omega) * omega * omega * geometric;
}

double eval_J(const BathModel& bath, const RegisterGeometry& geometry, int r, double omega) {
    if (r < 0 || r >= geometry.n_qubits)
        throw std::invalid_argument("eval_J: separation index out of range");
    if (omega < 0) throw std::domain_error("eval_J: omega must be >= 0");
    if (omega == 0) return 0.0;
    if (r == 0) {
        // r -> 0 limit: the first sinc collapses to 1.
        return phonon_prefactor(bath, omega) * omega * omega *
               detail::one_minus_sinc(omega / geometry.qubit_frequency());
    }
    return eval_J_real_r(bath, geometry, static_cast<double>(r), omega);
}

double eval_J_ohmic(double eta, double omega_c_f, double omega) {
    if (eta < 0) throw std::invalid_argument("eval_J_ohmic: eta must be >= 0");
    if (!(omega_c_f > 0)) throw std::invalid_argument("eval_J_ohmic: cutoff must be positive");
    if (omega < 0) throw std::domain_error("eval_J_ohmic: omega must be >= 0");
    return eta * omega * std::exp(-omega / omega_c_f);
}

SpectralFunction::SpectralFunction(BathModel b, RegisterGeometry g, int r)
    : bath(std::move(b)), geometry(std::move(g)), separation(r) {
    if (r < 0 || r >= geometry.n_qubits)
        throw std::invalid_argument("SpectralFunction: separation index out of range");
    if (!bath.is_phonon())
        throw std::invalid_argument("SpectralFunction: gate baths have no r-structure");
}

}  // namespace qreg
