// types.hpp — Physical constants, register geometry and bath parameter models

#pragma once

#include <limits>
#include <variant>

namespace qreg {

// hbar/k_B expressed as the product beta*T, in seconds*kelvin.
inline constexpr double beta_temperature_product = 7.64e-12;

// Planck constant [J s] and electron volt [J], used to derive the gate
// cutoff from a Fermi energy.
inline constexpr double planck_h = 6.62607015e-34;
inline constexpr double electron_volt = 1.602176634e-19;

/// Inverse temperature beta = hbar/(k_B T) in seconds. T = 0 maps to the
/// "infinite beta" sentinel (+inf), meaning every thermal factor is taken
/// in its zero-temperature limit.
double inverse_temperature(double temperature_kelvin);

/// Thermal weight coth(beta*omega/2). Exactly 1 at T = 0; series
/// 2/(beta*omega) + beta*omega/6 below beta*omega/2 = 1e-4.
/// Throws std::domain_error for omega <= 0 or negative temperature.
double coth_factor(double temperature_kelvin, double omega);

/// Effective ohmic coupling of a metallic gate with Fermi energy E_F and
/// contact potential V0 (same energy units): (2/pi^2) * atan^2(pi V0/E_F).
/// Depends only on the ratio V0/E_F; result lies in [0, 1/2).
double eta_from_gate(double fermi_energy, double contact_potential);

/// Gate bath cutoff omega_c^f = E_F/h for a Fermi energy given in eV.
double gate_cutoff_from_fermi_energy(double fermi_energy_ev);

/// Equidistant register of double-dot charge qubits on a common axis.
struct RegisterGeometry {
    int n_qubits = 1;
    double dot_half_separation = 0;  // q0 [m]
    double spacing = 0;              // d, distance between qubit centers [m]
    double sound_speed = 0;          // c_L [m/s]

    RegisterGeometry(int n, double q0, double d, double c_l);

    // ratio of qubit size to qubit spacing, 2*q0/d
    double size_ratio() const { return 2.0 * dot_half_separation / spacing; }
    // phonon transit time between adjacent qubits, d/c_L
    double transit_time() const { return spacing / sound_speed; }
    // single-qubit frequency scale c_L/(2*q0) = 1/(size_ratio*transit_time)
    double qubit_frequency() const { return sound_speed / (2.0 * dot_half_separation); }
};

// Bath couplings. The spectral prefactor c1*|g(omega/c_L)|^2 is
//   piezo:        (strength/omega) * exp(-omega/cutoff)
//   deformation:  (omega/strength_sq) * exp(-omega/cutoff)
// and the gate bath is ohmic, J(omega) = friction*omega*exp(-omega/cutoff).
struct PiezoCoupling {
    double strength = 0;  // dimensionless g
    double cutoff = 0;    // omega_c^b [rad/s]
};

struct DeformationCoupling {
    double strength_sq = 0;  // omega_s^2 [s^-2]
    double cutoff = 0;       // omega_c^b [rad/s]
};

struct OhmicGateCoupling {
    double friction = 0;  // dimensionless eta
    double cutoff = 0;    // omega_c^f [rad/s]
};

struct BathModel {
    std::variant<PiezoCoupling, DeformationCoupling, OhmicGateCoupling> coupling;
    double temperature = 0;  // [K]

    static BathModel piezo(double strength, double cutoff, double temperature = 0);
    static BathModel deformation(double strength_sq, double cutoff, double temperature = 0);
    static BathModel ohmic_gate(double friction, double cutoff, double temperature = 0);

    bool is_phonon() const { return !std::holds_alternative<OhmicGateCoupling>(coupling); }
    double cutoff() const;
};

}  // namespace qreg
