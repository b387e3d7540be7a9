// register.hpp — Static-register reduced-density-matrix elements, phases and bounds

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qreg/decay.hpp"

namespace qreg {

/// A pair of register basis labels l, m in {-1,+1}^N with the derived
/// blip/sojourn vectors xi = (l-m)/2 and chi = (l+m)/2. For every site,
/// |xi_n| + |chi_n| = 1.
struct BasisPair {
    std::vector<int> l;
    std::vector<int> m;

    BasisPair(std::vector<int> l_label, std::vector<int> m_label);

    int n() const { return static_cast<int>(l.size()); }
    bool diagonal() const { return l == m; }
    double distance_sq() const;  // ||l - m||^2 = 4 * Hamming distance
    std::vector<double> xi() const;
    std::vector<double> chi() const;
};

/// Time-constant or piecewise-constant diagonal bias epsilon(s) of one label.
struct BiasSchedule {
    std::vector<double> switch_times;  // ascending
    std::vector<double> values;        // one more entry than switch_times

    BiasSchedule() : values{0.0} {}
    explicit BiasSchedule(double constant) : values{constant} {}
    BiasSchedule(std::vector<double> times, std::vector<double> vals);

    double integral(double t) const;  // int_0^t epsilon(s) ds
};

struct StaticElementResult {
    double lambda_b = 0;         // phonon decay exponent, >= 0
    double lambda_f = 0;         // gate decay exponent, >= 0
    double x_b = 0;              // phonon phase [rad]
    double bias_phase = 0;       // int_0^t [eps(s,l) - eps(s,m)] ds [rad]
    double magnitude_ratio = 1;  // exp(-lambda_b - lambda_f)
};

/// Element evolution with frozen register dynamics:
///   lambda_b = <xi| Q2(t) |xi>,  x_b = <xi| Q1(t) |chi>,
///   lambda_f = 2 ||l-m||^2 q2_f(t),  x_f = 0.
/// Diagonal pairs short-circuit to zero without touching the kernels.
StaticElementResult static_element(const BasisPair& pair, const DecayProfile& profile,
                                   double gate_q2, const BiasSchedule& bias_l,
                                   const BiasSchedule& bias_m, double t);

/// <l|rho(t)|m> = <l|rho0|m> exp(-i bias_phase) exp(-i x_b) exp(-lambda_b - lambda_f)
std::complex<double> evolve_element(std::complex<double> rho0_element,
                                    const StaticElementResult& result);

/// Magnitude bounds relative to |<l|rho0|m>|:
///   b± = exp[-Q2_0 ||l-m||^2 (1 ∓ e~)/2] * exp[-2 ||l-m||^2 q2_f].
/// Returns {b_minus, b_plus}; the element magnitude ratio lies between them
/// whenever e~(t,N) < 1.
std::pair<double, double> bounds(const BasisPair& pair, const DecayProfile& profile,
                                 double gate_q2);

}  // namespace qreg
