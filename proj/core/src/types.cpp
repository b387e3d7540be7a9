#include "qreg/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qreg {

double inverse_temperature(double temperature_kelvin) {
    if (temperature_kelvin < 0)
        throw std::domain_error("inverse_temperature: negative temperature");
    if (temperature_kelvin == 0) return std::numeric_limits<double>::infinity();
    return beta_temperature_product / temperature_kelvin;
}

double coth_factor(double temperature_kelvin, double omega) {
    if (omega <= 0) throw std::domain_error("coth_factor: omega must be positive");
    if (temperature_kelvin < 0)
        throw std::domain_error("coth_factor: negative temperature");
    if (temperature_kelvin == 0) return 1.0;
    const double x = 0.5 * inverse_temperature(temperature_kelvin) * omega;
    if (x < 1e-4) return 1.0 / x + x / 3.0;
    if (x > 20.0) return 1.0;  // coth(20) - 1 < 5e-18
    return 1.0 / std::tanh(x);
}

double eta_from_gate(double fermi_energy, double contact_potential) {
    if (fermi_energy <= 0) throw std::domain_error("eta_from_gate: E_F must be positive");
    if (contact_potential < 0)
        throw std::domain_error("eta_from_gate: V0 must be non-negative");
    const double a = std::atan(std::numbers::pi * contact_potential / fermi_energy);
    return 2.0 / (std::numbers::pi * std::numbers::pi) * a * a;
}

double gate_cutoff_from_fermi_energy(double fermi_energy_ev) {
    if (fermi_energy_ev <= 0)
        throw std::domain_error("gate_cutoff_from_fermi_energy: E_F must be positive");
    return fermi_energy_ev * electron_volt / planck_h;
}

RegisterGeometry::RegisterGeometry(int n, double q0, double d, double c_l)
    : n_qubits(n), dot_half_separation(q0), spacing(d), sound_speed(c_l) {
    if (n < 1) throw std::invalid_argument("RegisterGeometry: need at least one qubit");
    if (!(q0 > 0) || !(d > 0) || !(c_l > 0))
        throw std::invalid_argument("RegisterGeometry: q0, d, c_L must be positive");
}

namespace {
void check_positive(double value, const char* what) {
    if (!(value > 0)) throw std::invalid_argument(std::string("BathModel: ") + what);
}
}  // namespace

BathModel BathModel::piezo(double strength, double cutoff, double temperature) {
    if (strength < 0) throw std::invalid_argument("BathModel: piezo strength must be >= 0");
    check_positive(cutoff, "cutoff must be positive");
    if (temperature < 0) throw std::invalid_argument("BathModel: negative temperature");
    return BathModel{PiezoCoupling{strength, cutoff}, temperature};
}

BathModel BathModel::deformation(double strength_sq, double cutoff, double temperature) {
    check_positive(strength_sq, "deformation strength must be positive");
    check_positive(cutoff, "cutoff must be positive");
    if (temperature < 0) throw std::invalid_argument("BathModel: negative temperature");
    return BathModel{DeformationCoupling{strength_sq, cutoff}, temperature};
}

BathModel BathModel::ohmic_gate(double friction, double cutoff, double temperature) {
    if (friction < 0) throw std::invalid_argument("BathModel: eta must be >= 0");
    check_positive(cutoff, "cutoff must be positive");
    if (temperature < 0) throw std::invalid_argument("BathModel: negative temperature");
    return BathModel{OhmicGateCoupling{friction, cutoff}, temperature};
}

double BathModel::cutoff() const {
    return std::visit([](const auto& c) { return c.cutoff; }, coupling);
}

}  // namespace qreg
