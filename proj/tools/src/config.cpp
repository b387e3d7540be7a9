#include "qreg/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>

namespace qreg::cli {

namespace {

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    const auto end = s.find_last_not_of(" \t");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    if (d != std::floor(d) || std::abs(d) > 2e9)
        throw ConfigError("config: key '" + key + "': '" + value + "' is not an integer");
    return static_cast<int>(d);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::string token;
    for (const char c : value + ",") {
        if (c == ',' || c == ' ') {
            if (!token.empty()) out.push_back(parse_int(key, token));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

void check_label_string(const std::string& key, const std::string& value) {
    if (value.empty()) throw ConfigError("config: key '" + key + "': empty label");
    for (const char c : value)
        if (c != '+' && c != '-')
            throw ConfigError("config: key '" + key + "': labels use only '+' and '-'");
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "geometry.N") c.n_qubits = parse_int(key, value);
    else if (key == "geometry.q0_nm") c.q0_nm = parse_double(key, value);
    else if (key == "geometry.d_nm") c.d_nm = parse_double(key, value);
    else if (key == "geometry.cL_m_per_s") c.cL_m_per_s = parse_double(key, value);
    else if (key == "bath.piezo.g") c.piezo_g = parse_double(key, value);
    else if (key == "bath.piezo.omega_c_per_s") c.piezo_omega_c = parse_double(key, value);
    else if (key == "bath.deformation.omega_s_sq_per_s2")
        c.deformation_omega_s_sq = parse_double(key, value);
    else if (key == "bath.deformation.omega_c_per_s")
        c.deformation_omega_c = parse_double(key, value);
    else if (key == "bath.fermionic.eta") c.fermionic_eta = parse_double(key, value);
    else if (key == "bath.fermionic.E_F_eV") c.fermionic_E_F_eV = parse_double(key, value);
    else if (key == "bath.fermionic.V0_eV") c.fermionic_V0_eV = parse_double(key, value);
    else if (key == "bath.fermionic.omega_c_f_per_s") c.fermionic_omega_c = parse_double(key, value);
    else if (key == "temperature_K") c.temperature_K = parse_double(key, value);
    else if (key == "time_s") c.time_s = parse_double(key, value);
    else if (key == "sweep.variable") {
        if (value == "time") c.sweep.variable = SweepSpec::Variable::time;
        else if (value == "temperature") c.sweep.variable = SweepSpec::Variable::temperature;
        else if (value == "N") c.sweep.variable = SweepSpec::Variable::n_qubits;
        else throw ConfigError("config: sweep.variable must be time, temperature or N");
    } else if (key == "sweep.start") c.sweep.start = parse_double(key, value);
    else if (key == "sweep.stop") c.sweep.stop = parse_double(key, value);
    else if (key == "sweep.points") c.sweep.points = parse_int(key, value);
    else if (key == "sweep.scale") {
        if (value == "linear") c.sweep.log_scale = false;
        else if (value == "log") c.sweep.log_scale = true;
        else throw ConfigError("config: sweep.scale must be linear or log");
    } else if (key == "element.preset") {
        if (value != "most-offdiagonal")
            throw ConfigError("config: element.preset only supports most-offdiagonal");
        c.element.most_offdiagonal = true;
        c.element.l.clear();
        c.element.m.clear();
    } else if (key == "element.l") {
        check_label_string(key, value);
        c.element.l = value;
        c.element.most_offdiagonal = false;
    } else if (key == "element.m") {
        check_label_string(key, value);
        c.element.m = value;
        c.element.most_offdiagonal = false;
    } else if (key == "element.bias_l_per_s") c.element.bias_l = parse_double(key, value);
    else if (key == "element.bias_m_per_s") c.element.bias_m = parse_double(key, value);
    else if (key == "quadrature.rel_tol") c.quadrature.rel_tol = parse_double(key, value);
    else if (key == "quadrature.abs_tol") c.quadrature.abs_tol = parse_double(key, value);
    else if (key == "quadrature.max_subdivisions")
        c.quadrature.max_subdivisions = parse_int(key, value);
    else if (key == "quadrature.cutoff_decades")
        c.quadrature.cutoff_decades = parse_double(key, value);
    else if (key == "oracle.box_d_units") c.oracle.box_d_units = parse_double(key, value);
    else if (key == "oracle.kmax_cutoff_units")
        c.oracle.kmax_cutoff_units = parse_double(key, value);
    else if (key == "oracle.levels") c.oracle.levels = parse_int(key, value);
    else if (key == "oracle.level_ratio") c.oracle.level_ratio = parse_double(key, value);
    else if (key == "oracle.mode_cap") {
        const int cap = parse_int(key, value);
        if (cap < 1) throw ConfigError("config: oracle.mode_cap must be positive");
        c.oracle.mode_cap = static_cast<std::size_t>(cap);
    } else if (key == "q_functions.r_list") c.r_list = parse_int_list(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

void validate(const RunConfig& c) {
    if (c.n_qubits < 1) throw ConfigError("config: geometry.N must be >= 1");
    if (!(c.q0_nm > 0) || !(c.d_nm > 0) || !(c.cL_m_per_s > 0))
        throw ConfigError("config: geometry lengths and sound speed must be positive");
    if (c.piezo_g < 0 || !(c.piezo_omega_c > 0))
        throw ConfigError("config: piezo bath needs g >= 0 and a positive cutoff");
    if (!(c.deformation_omega_s_sq > 0) || !(c.deformation_omega_c > 0))
        throw ConfigError("config: deformation bath needs positive omega_s^2 and cutoff");
    if (c.temperature_K < 0) throw ConfigError("config: temperature_K must be >= 0");
    if (c.time_s < 0) throw ConfigError("config: time_s must be >= 0");
    if (c.fermionic_E_F_eV.has_value() != c.fermionic_V0_eV.has_value())
        throw ConfigError("config: bath.fermionic.E_F_eV and V0_eV come as a pair");
    if (c.fermionic_eta && c.fermionic_E_F_eV)
        throw ConfigError("config: give bath.fermionic.eta or the gate energies, not both");
    if (c.sweep.points < 2) throw ConfigError("config: sweep.points must be >= 2");
    if (c.sweep.log_scale && (!(c.sweep.start > 0) || !(c.sweep.stop > 0)))
        throw ConfigError("config: log sweeps need positive endpoints");
    if (c.sweep.variable == SweepSpec::Variable::n_qubits &&
        (c.sweep.start < 1 || c.sweep.stop < 1))
        throw ConfigError("config: N sweeps need endpoints >= 1");
    if (!c.element.most_offdiagonal) {
        if (c.element.l.empty() || c.element.l.size() != c.element.m.size())
            throw ConfigError("config: element.l and element.m must both be set, same length");
        if (c.sweep.variable != SweepSpec::Variable::n_qubits &&
            static_cast<int>(c.element.l.size()) != c.n_qubits)
            throw ConfigError("config: explicit element labels must have geometry.N entries");
        if (c.sweep.variable == SweepSpec::Variable::n_qubits)
            throw ConfigError("config: N sweeps require element.preset = most-offdiagonal");
    }
    if (c.oracle.levels < 1 || !(c.oracle.level_ratio > 1.0) || !(c.oracle.box_d_units > 0) ||
        !(c.oracle.kmax_cutoff_units > 0))
        throw ConfigError("config: oracle block needs levels >= 1, level_ratio > 1, positive sizes");
    for (const int r : c.r_list)
        if (r < 1 || r >= c.n_qubits)
            throw ConfigError("config: q_functions.r_list entries must satisfy 1 <= r < N");
    c.quadrature.validate();
    // touch the derived gate parameters so bad energies surface as config errors
    (void)c.gate_eta();
    (void)c.gate_cutoff();
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / (points - 1);
        out[i] = log_scale ? start * std::pow(stop / start, frac)
                           : start + (stop - start) * frac;
    }
    return out;
}

std::vector<int> ElementSpec::label_l(int n) const {
    if (most_offdiagonal) return std::vector<int>(n, 1);
    std::vector<int> out;
    out.reserve(l.size());
    for (const char ch : l) out.push_back(ch == '+' ? 1 : -1);
    return out;
}

std::vector<int> ElementSpec::label_m(int n) const {
    if (most_offdiagonal) return std::vector<int>(n, -1);
    std::vector<int> out;
    out.reserve(m.size());
    for (const char ch : m) out.push_back(ch == '+' ? 1 : -1);
    return out;
}

RegisterGeometry RunConfig::make_geometry() const { return make_geometry(n_qubits); }

RegisterGeometry RunConfig::make_geometry(int n) const {
    return RegisterGeometry(n, q0_nm * 1e-9, d_nm * 1e-9, cL_m_per_s);
}

BathModel RunConfig::piezo_bath() const {
    return BathModel::piezo(piezo_g, piezo_omega_c, temperature_K);
}

BathModel RunConfig::deformation_bath() const {
    return BathModel::deformation(deformation_omega_s_sq, deformation_omega_c, temperature_K);
}

double RunConfig::gate_eta() const {
    if (fermionic_eta) {
        if (*fermionic_eta < 0) throw ConfigError("config: bath.fermionic.eta must be >= 0");
        return *fermionic_eta;
    }
    if (fermionic_E_F_eV) {
        try {
            return eta_from_gate(*fermionic_E_F_eV, *fermionic_V0_eV);
        } catch (const std::domain_error& err) {
            throw ConfigError(std::string("config: gate energies: ") + err.what());
        }
    }
    return 9.3e-8;  // metallic top gates
}

double RunConfig::gate_cutoff() const {
    if (fermionic_omega_c) {
        if (!(*fermionic_omega_c > 0))
            throw ConfigError("config: bath.fermionic.omega_c_f_per_s must be positive");
        return *fermionic_omega_c;
    }
    if (fermionic_E_F_eV) {
        try {
            return gate_cutoff_from_fermi_energy(*fermionic_E_F_eV);
        } catch (const std::domain_error& err) {
            throw ConfigError(std::string("config: gate energies: ") + err.what());
        }
    }
    return 1.3e15;
}

KeyValues parse_key_value_stream(std::istream& in, const std::string& source_name) {
    KeyValues out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string body = trimmed(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source_name + ":" + std::to_string(line_number) +
                              ": expected key = value");
        const std::string key = trimmed(body.substr(0, eq));
        const std::string value = trimmed(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(source_name + ":" + std::to_string(line_number) +
                              ": empty key or value");
        out.emplace_back(key, value);
    }
    return out;
}

RunConfig build_config(const KeyValues& file_values, const KeyValues& overrides) {
    RunConfig config;
    for (const auto& [key, value] : file_values) apply(config, key, value);
    for (const auto& [key, value] : overrides) apply(config, key, value);
    validate(config);
    return config;
}

std::vector<std::string> config_key_names() {
    return {
        "geometry.N", "geometry.q0_nm", "geometry.d_nm", "geometry.cL_m_per_s",
        "bath.piezo.g", "bath.piezo.omega_c_per_s",
        "bath.deformation.omega_s_sq_per_s2", "bath.deformation.omega_c_per_s",
        "bath.fermionic.eta", "bath.fermionic.E_F_eV", "bath.fermionic.V0_eV",
        "bath.fermionic.omega_c_f_per_s",
        "temperature_K", "time_s",
        "sweep.variable", "sweep.start", "sweep.stop", "sweep.points", "sweep.scale",
        "element.preset", "element.l", "element.m",
        "element.bias_l_per_s", "element.bias_m_per_s",
        "quadrature.rel_tol", "quadrature.abs_tol", "quadrature.max_subdivisions",
        "quadrature.cutoff_decades",
        "oracle.box_d_units", "oracle.kmax_cutoff_units", "oracle.levels",
        "oracle.level_ratio", "oracle.mode_cap",
        "q_functions.r_list",
    };
}

std::vector<std::pair<std::string, std::string>> serialize_config(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&out](const char* key, const std::string& value) {
        out.emplace_back(key, value);
    };
    put("geometry.N", std::to_string(c.n_qubits));
    put("geometry.q0_nm", format_double(c.q0_nm));
    put("geometry.d_nm", format_double(c.d_nm));
    put("geometry.cL_m_per_s", format_double(c.cL_m_per_s));
    put("bath.piezo.g", format_double(c.piezo_g));
    put("bath.piezo.omega_c_per_s", format_double(c.piezo_omega_c));
    put("bath.deformation.omega_s_sq_per_s2", format_double(c.deformation_omega_s_sq));
    put("bath.deformation.omega_c_per_s", format_double(c.deformation_omega_c));
    put("bath.fermionic.eta", format_double(c.gate_eta()));
    put("bath.fermionic.omega_c_f_per_s", format_double(c.gate_cutoff()));
    put("temperature_K", format_double(c.temperature_K));
    put("time_s", format_double(c.time_s));
    put("sweep.variable", c.sweep.variable == SweepSpec::Variable::time ? "time"
                          : c.sweep.variable == SweepSpec::Variable::temperature
                              ? "temperature"
                              : "N");
    put("sweep.start", format_double(c.sweep.start));
    put("sweep.stop", format_double(c.sweep.stop));
    put("sweep.points", std::to_string(c.sweep.points));
    put("sweep.scale", c.sweep.log_scale ? "log" : "linear");
    if (c.element.most_offdiagonal) {
        put("element.preset", "most-offdiagonal");
    } else {
        put("element.l", c.element.l);
        put("element.m", c.element.m);
    }
    put("element.bias_l_per_s", format_double(c.element.bias_l));
    put("element.bias_m_per_s", format_double(c.element.bias_m));
    put("quadrature.rel_tol", format_double(c.quadrature.rel_tol));
    put("quadrature.abs_tol", format_double(c.quadrature.abs_tol));
    put("quadrature.max_subdivisions", std::to_string(c.quadrature.max_subdivisions));
    put("quadrature.cutoff_decades", format_double(c.quadrature.cutoff_decades));
    put("oracle.box_d_units", format_double(c.oracle.box_d_units));
    put("oracle.kmax_cutoff_units", format_double(c.oracle.kmax_cutoff_units));
    put("oracle.levels", std::to_string(c.oracle.levels));
    put("oracle.level_ratio", format_double(c.oracle.level_ratio));
    put("oracle.mode_cap", std::to_string(c.oracle.mode_cap));
    if (!c.r_list.empty()) put("q_functions.r_list", join_ints(c.r_list));
    return out;
}

}  // namespace qreg::cli
