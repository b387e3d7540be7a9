#include "qreg/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qreg/decay.hpp"
#include "qreg/oracle.hpp"
#include "qreg/register.hpp"

namespace qreg::cli {

namespace {

std::string cell(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();

struct ScanPoint {
    double t = 0;
    double temperature = 0;
    int n = 0;
};

ScanPoint resolve_point(const RunConfig& config, double sweep_value) {
    ScanPoint point{config.time_s, config.temperature_K, config.n_qubits};
    switch (config.sweep.variable) {
        case SweepSpec::Variable::time: point.t = sweep_value; break;
        case SweepSpec::Variable::temperature: point.temperature = sweep_value; break;
        case SweepSpec::Variable::n_qubits:
            point.n = std::max(1, static_cast<int>(std::lround(sweep_value)));
            break;
    }
    return point;
}

void require_time_sweep(const RunConfig& config, const char* command) {
    if (config.sweep.variable != SweepSpec::Variable::time)
        throw ConfigError(std::string("config: ") + command + " requires sweep.variable = time");
}

}  // namespace

void write_metadata(const RunConfig& config, const std::string& command, std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& extras) {
    out << "tool.name = qreg\n";
    out << "tool.version = " << tool_version << "\n";
    out << "tool.command = " << command << "\n";
    for (const auto& [key, value] : serialize_config(config))
        out << key << " = " << value << "\n";
    for (const auto& [key, value] : extras) out << key << " = " << value << "\n";
}

int run_scan(const RunConfig& config, std::ostream& csv, std::ostream& meta) {
    KernelCache cache;
    const double eta = config.gate_eta();
    const double gate_cutoff = config.gate_cutoff();

    csv << "sweep_value,lambda_b_piezo,lambda_b_deformation,lambda_f,x_b,"
           "e_factor,e_tilde,two_N_Q2_0,r_max_used\n";

    bool any_failure = false;
    int r_max_seen = 0;
    for (const double sweep_value : config.sweep.values()) {
        const ScanPoint point = resolve_point(config, sweep_value);
        const RegisterGeometry geometry = config.make_geometry(point.n);
        const std::vector<int> l = config.element.label_l(point.n);
        const std::vector<int> m = config.element.label_m(point.n);
        const BasisPair pair(l, m);
        const std::vector<double> xi = pair.xi();
        const std::vector<double> chi = pair.chi();

        double lambda_piezo = nan_cell, lambda_def = nan_cell, lambda_f = nan_cell;
        double x_b = nan_cell, e_val = nan_cell, e_tilde_val = nan_cell;
        double comparator = nan_cell;
        int r_max_used = -1;

        try {
            const BathModel bath =
                BathModel::piezo(config.piezo_g, config.piezo_omega_c, point.temperature);
            const DecayProfile profile =
                decay_profile_truncated(bath, geometry, point.t, &cache, config.quadrature);
            lambda_piezo = toeplitz_quadratic(profile, 2, xi, xi);
            x_b = toeplitz_quadratic(profile, 1, xi, chi);
            comparator = 2.0 * point.n * profile.q2[0];
            r_max_used = profile.r_max_used;
            r_max_seen = std::max(r_max_seen, r_max_used);
            try {
                e_val = e_factor(profile);
                e_tilde_val = e_tilde_factor(profile);
            } catch (const std::domain_error&) {
                // t = 0 rows have no e-factors
            }
        } catch (const ConvergenceError&) {
            any_failure = true;
        }

        try {
            const BathModel bath = BathModel::deformation(
                config.deformation_omega_s_sq, config.deformation_omega_c, point.temperature);
            const DecayProfile profile =
                decay_profile_truncated(bath, geometry, point.t, &cache, config.quadrature);
            lambda_def = toeplitz_quadratic(profile, 2, xi, xi);
        } catch (const ConvergenceError&) {
            any_failure = true;
        }

        try {
            const double gate_q2 = cache.fermionic(eta, gate_cutoff, point.temperature,
                                                   point.t, 2, config.quadrature);
            lambda_f = 2.0 * pair.distance_sq() * gate_q2;
        } catch (const ConvergenceError&) {
            any_failure = true;
        }

        csv << cell(sweep_value) << ',' << cell(lambda_piezo) << ',' << cell(lambda_def) << ','
            << cell(lambda_f) << ',' << cell(x_b) << ',' << cell(e_val) << ','
            << cell(e_tilde_val) << ',' << cell(comparator) << ','
            << (r_max_used < 0 ? "nan" : std::to_string(r_max_used)) << '\n';
    }

    write_metadata(config, "scan", meta,
                   {{"result.rows", std::to_string(config.sweep.points)},
                    {"result.r_max_used_max", std::to_string(r_max_seen)},
                    {"result.converged", any_failure ? "no" : "yes"}});
    return any_failure ? exit_no_convergence : exit_ok;
}

int run_q_functions(const RunConfig& config, std::ostream& csv, std::ostream& meta) {
    require_time_sweep(config, "q-functions");
    KernelCache cache;
    const BathModel bath = config.piezo_bath();
    const RegisterGeometry geometry = config.make_geometry();
    const double n = config.n_qubits;

    csv << "t,two_N_Q1_0,two_N_Q2_0";
    for (const int r : config.r_list)
        csv << ",four_N_Q1_r" << r << ",four_N_Q2_r" << r;
    csv << "\n";

    for (const double t : config.sweep.values()) {
        csv << cell(t) << ',' << cell(2.0 * n * cache.q1(bath, geometry, 0, t, config.quadrature))
            << ',' << cell(2.0 * n * cache.q2(bath, geometry, 0, t, config.quadrature));
        for (const int r : config.r_list)
            csv << ',' << cell(4.0 * n * cache.q1(bath, geometry, r, t, config.quadrature))
                << ',' << cell(4.0 * n * cache.q2(bath, geometry, r, t, config.quadrature));
        csv << '\n';
    }

    write_metadata(config, "q-functions", meta,
                   {{"result.rows", std::to_string(config.sweep.points)}});
    return exit_ok;
}

int run_rho(const RunConfig& config, std::ostream& csv, std::ostream& meta) {
    require_time_sweep(config, "rho");
    if (!config.element.most_offdiagonal && config.n_qubits > 12)
        throw ConfigError("config: explicit element lists are limited to N <= 12");

    KernelCache cache;
    const BathModel bath = config.piezo_bath();
    const RegisterGeometry geometry = config.make_geometry();
    const double eta = config.gate_eta();
    const double gate_cutoff = config.gate_cutoff();
    const BasisPair pair(config.element.label_l(config.n_qubits),
                         config.element.label_m(config.n_qubits));
    const BiasSchedule bias_l(config.element.bias_l);
    const BiasSchedule bias_m(config.element.bias_m);

    csv << "t,magnitude,phase,b_minus,b_plus\n";
    for (const double t : config.sweep.values()) {
        const DecayProfile profile =
            decay_profile_truncated(bath, geometry, t, &cache, config.quadrature);
        const double gate_q2 =
            cache.fermionic(eta, gate_cutoff, config.temperature_K, t, 2, config.quadrature);
        const auto element = static_element(pair, profile, gate_q2, bias_l, bias_m, t);
        double b_minus = nan_cell, b_plus = nan_cell;
        try {
            std::tie(b_minus, b_plus) = bounds(pair, profile, gate_q2);
        } catch (const std::domain_error&) {
            // undefined at t = 0 for off-diagonal pairs
        }
        const std::complex<double> evolved = evolve_element({1.0, 0.0}, element);
        csv << cell(t) << ',' << cell(std::abs(evolved)) << ',' << cell(std::arg(evolved)) << ','
            << cell(b_minus) << ',' << cell(b_plus) << '\n';
    }

    write_metadata(config, "rho", meta, {{"result.rows", std::to_string(config.sweep.points)}});
    return exit_ok;
}

int run_oracle_compare(const RunConfig& config, std::ostream& out, std::ostream& meta) {
    KernelCache cache;
    const BathModel bath = config.piezo_bath();
    const RegisterGeometry geometry = config.make_geometry();
    const double t = config.time_s;
    const double spacing = geometry.spacing;
    const double k_max = config.oracle.kmax_cutoff_units * bath.cutoff() / geometry.sound_speed;
    const int n_compare = std::min(3, config.n_qubits);

    std::vector<KLattice> levels;
    std::vector<std::size_t> mode_counts;
    for (int level = 0; level < config.oracle.levels; ++level) {
        const double shrink =
            std::pow(config.oracle.level_ratio, config.oracle.levels - 1 - level);
        KLattice lattice = KLattice::cubic(config.oracle.box_d_units * spacing / shrink,
                                           1.0 / k_max, config.oracle.mode_cap);
        mode_counts.push_back(lattice.count_modes());
        levels.push_back(lattice);
    }

    char line[192];
    std::snprintf(line, sizeof line,
                  "# oracle comparison: t = %.6g s, %d levels, finest box %.6g m (%zu modes)\n",
                  t, config.oracle.levels, levels.back().box[0], mode_counts.back());
    out << line;
    for (int level = 0; level < config.oracle.levels; ++level) {
        std::snprintf(line, sizeof line, "# level %d: box %.6g m, %zu modes\n", level,
                      levels[level].box[0], mode_counts[level]);
        out << line;
    }

    const bool converged_regime = mode_counts.back() >= 1000;
    if (!converged_regime)
        out << "# regime: non-converged (finest level has fewer than 1000 modes); "
               "deviations are informational, no pass/fail asserted\n";

    int checks = 0, passed = 0;
    const double threshold = 0.01;

    for (int which : {2, 1}) {
        for (int r = 0; r < n_compare; ++r) {
            const double quad = which == 2 ? cache.q2(bath, geometry, r, t, config.quadrature)
                                           : cache.q1(bath, geometry, r, t, config.quadrature);
            const double lattice_value =
                oracle_q(levels.back(), bath, geometry, r, t, which);
            const double rel =
                quad != 0 ? (lattice_value - quad) / quad
                          : lattice_value;
            std::snprintf(line, sizeof line,
                          "Q%d[r=%d] quadrature=%.9g lattice=%.9g rel_dev=%.3g", which, r, quad,
                          lattice_value, rel);
            out << line;
            if (converged_regime) {
                const bool ok = std::abs(rel) < threshold;
                ++checks;
                passed += ok;
                out << (ok ? " PASS" : " FAIL");
            }
            out << "\n";
        }
    }

    if (config.n_qubits >= 2) {
        const double scale = std::abs(cache.q2(bath, geometry, 0, t, config.quadrature));
        std::vector<double> psi_mags, phi_mags;
        for (const KLattice& lattice : levels) {
            const auto [psi, phi] = oracle_psi_phi(lattice, bath, geometry, 0, t);
            psi_mags.push_back(std::abs(psi));
            phi_mags.push_back(std::abs(phi) * t);  // Phi enters the phase as Phi*t
        }
        for (const char* name : {"Psi", "Phi*t"}) {
            const auto& mags = (name[1] == 's') ? psi_mags : phi_mags;
            bool shrinking = true;
            for (std::size_t i = 1; i < mags.size(); ++i)
                shrinking = shrinking && mags[i] < mags[i - 1];
            const bool below_scale = mags.back() < threshold * scale;
            out << name << "[qubit=0] levels:";
            for (const double m : mags) {
                std::snprintf(line, sizeof line, " %.3e", m);
                out << line;
            }
            out << " shrinking=" << (shrinking ? "yes" : "no")
                << " below_scale=" << (below_scale ? "yes" : "no");
            if (converged_regime) {
                const bool ok = shrinking && below_scale;
                ++checks;
                passed += ok;
                out << (ok ? " PASS" : " FAIL");
            }
            out << "\n";
        }
    } else {
        out << "# Psi/Phi check skipped: needs at least two qubits\n";
    }

    if (converged_regime) {
        std::snprintf(line, sizeof line, "overall: %s (%d/%d checks)\n",
                      passed == checks ? "PASS" : "FAIL", passed, checks);
        out << line;
    } else {
        out << "overall: informational only\n";
    }

    write_metadata(config, "oracle-compare", meta,
                   {{"result.modes_finest", std::to_string(mode_counts.back())},
                    {"result.checks", std::to_string(checks)},
                    {"result.passed", std::to_string(passed)}});
    return exit_ok;
}

}  // namespace qreg::cli
