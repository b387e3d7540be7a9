#include "qreg/register.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qreg {

BasisPair::BasisPair(std::vector<int> l_label, std::vector<int> m_label)
    : l(std::move(l_label)), m(std::move(m_label)) {
    if (l.empty() || l.size() != m.size())
        throw std::invalid_argument("BasisPair: labels must be non-empty and equal length");
    for (std::size_t i = 0; i < l.size(); ++i)
        if ((l[i] != 1 && l[i] != -1) || (m[i] != 1 && m[i] != -1))
            throw std::invalid_argument("BasisPair: labels must have entries +1 or -1");
}

double BasisPair::distance_sq() const {
    double s = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double d = l[i] - m[i];
        s += d * d;
    }
    return s;
}

std::vector<double> BasisPair::xi() const {
    std::vector<double> out(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) out[i] = 0.5 * (l[i] - m[i]);
    return out;
}

std::vector<double> BasisPair::chi() const {
    std::vector<double> out(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) out[i] = 0.5 * (l[i] + m[i]);
    return out;
}

BiasSchedule::BiasSchedule(std::vector<double> times, std::vector<double> vals)
    : switch_times(std::move(times)), values(std::move(vals)) {
    if (values.size() != switch_times.size() + 1)
        throw std::invalid_argument("BiasSchedule: need one more value than switch time");
    if (!std::is_sorted(switch_times.begin(), switch_times.end()))
        throw std::invalid_argument("BiasSchedule: switch times must be sorted");
}

double BiasSchedule::integral(double t) const {
    if (t < 0) throw std::domain_error("BiasSchedule: t must be >= 0");
    double acc = 0;
    double prev = 0;
    for (std::size_t i = 0; i < switch_times.size(); ++i) {
        const double edge = std::min(switch_times[i], t);
        if (edge > prev) acc += values[i] * (edge - prev);
        prev = std::max(prev, edge);
        if (prev >= t) return acc;
    }
    acc += values.back() * (t - prev);
    return acc;
}

StaticElementResult static_element(const BasisPair& pair, const DecayProfile& profile,
                                   double gate_q2, const BiasSchedule& bias_l,
                                   const BiasSchedule& bias_m, double t) {
    if (pair.n() != profile.n())
        throw std::invalid_argument("static_element: pair and profile sizes differ");
    if (t < 0) throw std::domain_error("static_element: t must be >= 0");

    StaticElementResult result;
    result.bias_phase = bias_l.integral(t) - bias_m.integral(t);
    if (pair.diagonal()) return result;

    const std::vector<double> xi = pair.xi();
    const std::vector<double> chi = pair.chi();
    result.lambda_b = toeplitz_quadratic(profile, 2, xi, xi);
    result.x_b = toeplitz_quadratic(profile, 1, xi, chi);
    result.lambda_f = 2.0 * pair.distance_sq() * gate_q2;
    result.magnitude_ratio = std::exp(-result.lambda_b - result.lambda_f);
    return result;
}

std::complex<double> evolve_element(std::complex<double> rho0_element,
                                    const StaticElementResult& result) {
    return rho0_element * std::polar(result.magnitude_ratio,
                                     -(result.bias_phase + result.x_b));
}

std::pair<double, double> bounds(const BasisPair& pair, const DecayProfile& profile,
                                 double gate_q2) {
    if (pair.n() != profile.n())
        throw std::invalid_argument("bounds: pair and profile sizes differ");
    const double dist_sq = pair.distance_sq();
    if (dist_sq == 0) return {1.0, 1.0};

    const double tilde = e_tilde_factor(profile);
    const double gate = std::exp(-2.0 * dist_sq * gate_q2);
    const double base = 0.5 * profile.q2[0] * dist_sq;
    return {std::exp(-base * (1.0 + tilde)) * gate, std::exp(-base * (1.0 - tilde)) * gate};
}

}  // namespace qreg
