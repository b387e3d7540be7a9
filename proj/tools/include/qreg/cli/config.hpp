// config.hpp — Run configuration: flat key=value files with CLI overrides

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qreg/quadrature.hpp"
#include "qreg/types.hpp"

namespace qreg::cli {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    enum class Variable { time, temperature, n_qubits };
    Variable variable = Variable::time;
    double start = 1e-13;
    double stop = 1e-10;
    int points = 60;
    bool log_scale = true;

    std::vector<double> values() const;
};

struct ElementSpec {
    bool most_offdiagonal = true;
    std::string l, m;        // '+'/'-' strings when explicit
    double bias_l = 0;       // per-label constant biases [rad/s]
    double bias_m = 0;

    std::vector<int> label_l(int n) const;
    std::vector<int> label_m(int n) const;
};

struct OracleSpec {
    double box_d_units = 12.0;        // box edge in units of the qubit spacing
    double kmax_cutoff_units = 10.0;  // mode cutoff in units of omega_c/c_L
    int levels = 3;
    double level_ratio = 1.5;         // box growth per refinement level
    std::size_t mode_cap = 2'000'000;
};

/// Everything a run needs; defaults reproduce the headline parameter set
/// (GaAs register, 1000 qubits, piezo/deformation phonons, metallic top
/// gates, zero temperature).
struct RunConfig {
    int n_qubits = 1000;
    double q0_nm = 50.0;
    double d_nm = 400.0;
    double cL_m_per_s = 5e3;

    double piezo_g = 0.03;
    double piezo_omega_c = 5e10;
    double deformation_omega_s_sq = 1e25;
    double deformation_omega_c = 5e10;

    std::optional<double> fermionic_eta;      // direct eta...
    std::optional<double> fermionic_E_F_eV;   // ...or derived from gate energies
    std::optional<double> fermionic_V0_eV;
    std::optional<double> fermionic_omega_c;  // defaults to E_F/h when derivable

    double temperature_K = 0.0;
    double time_s = 5e-12;  // fixed time for non-time sweeps

    SweepSpec sweep;
    ElementSpec element;
    QuadratureConfig quadrature;
    OracleSpec oracle;
    std::vector<int> r_list;  // extra separations for the q-functions command

    RegisterGeometry make_geometry() const;
    RegisterGeometry make_geometry(int n) const;
    BathModel piezo_bath() const;
    BathModel deformation_bath() const;
    double gate_eta() const;
    double gate_cutoff() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parse `key = value` lines; '#' starts a comment. Errors carry the source
/// name and line number.
KeyValues parse_key_value_stream(std::istream& in, const std::string& source_name);

/// Apply file values then overrides onto the defaults; unknown keys and
/// malformed values raise ConfigError naming the key.
RunConfig build_config(const KeyValues& file_values, const KeyValues& overrides);

/// All recognized keys in canonical order (for --help and the metadata echo).
std::vector<std::string> config_key_names();

/// Canonical `key = value` serialization of a resolved configuration.
std::vector<std::pair<std::string, std::string>> serialize_config(const RunConfig& config);

}  // namespace qreg::cli
