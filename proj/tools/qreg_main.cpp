// qreg_main.cpp — command-line front end

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qreg/cli/commands.hpp"
#include "qreg/oracle.hpp"

namespace {

using qreg::cli::ConfigError;
using qreg::cli::KeyValues;
using qreg::cli::RunConfig;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key = value configuration file");
    cmd->add_option("--out", opts.out_path,
                    "CSV/report output path (default stdout; metadata then goes to stderr "
                    "instead of <out>.meta)");
    for (const std::string& key : qreg::cli::config_key_names())
        cmd->add_option_function<std::string>(
               "--" + key,
               [&opts, key](const std::string& value) { opts.sets.emplace_back(key + "=" + value); },
               "override config key " + key)
            ->expected(1);
}

RunConfig load_config(const CommonOptions& opts) {
    KeyValues file_values;
    if (!opts.config_path.empty()) {
        std::ifstream file(opts.config_path);
        if (!file) throw ConfigError("config: cannot open '" + opts.config_path + "'");
        file_values = qreg::cli::parse_key_value_stream(file, opts.config_path);
    }
    KeyValues overrides;
    for (const std::string& entry : opts.sets) {
        const auto eq = entry.find('=');
        overrides.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
    }
    return qreg::cli::build_config(file_values, overrides);
}

int dispatch(const CommonOptions& opts,
             const std::function<int(const RunConfig&, std::ostream&, std::ostream&)>& command) {
    const RunConfig config = load_config(opts);
    if (opts.out_path.empty()) return command(config, std::cout, std::cerr);

    std::ofstream csv(opts.out_path);
    if (!csv) throw ConfigError("config: cannot open output '" + opts.out_path + "'");
    std::ofstream meta(opts.out_path + ".meta");
    if (!meta) throw ConfigError("config: cannot open output '" + opts.out_path + ".meta'");
    return command(config, csv, meta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoherence functions of an N-qubit charge register"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        CommonOptions opts;
        std::function<int(const RunConfig&, std::ostream&, std::ostream&)> run;
    };
    std::vector<Sub> subs(4);
    subs[0].cmd = app.add_subcommand("scan", "sweep time, temperature or register size");
    subs[0].run = qreg::cli::run_scan;
    subs[1].cmd = app.add_subcommand("q-functions", "scaled kernel traces against time");
    subs[1].run = qreg::cli::run_q_functions;
    subs[2].cmd = app.add_subcommand("rho", "per-element evolution with magnitude bounds");
    subs[2].run = qreg::cli::run_rho;
    subs[3].cmd = app.add_subcommand("oracle-compare", "lattice-sum cross-check report");
    subs[3].run = qreg::cli::run_oracle_compare;
    for (Sub& sub : subs) add_common(sub.cmd, sub.opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    }

    try {
        for (Sub& sub : subs)
            if (sub.cmd->parsed()) return dispatch(sub.opts, sub.run);
        return qreg::cli::exit_config_error;
    } catch (const ConfigError& err) {
        std::cerr << err.what() << "\n";
        return qreg::cli::exit_config_error;
    } catch (const qreg::ResourceCapError& err) {
        std::cerr << err.what() << "\n";
        return qreg::cli::exit_resource_cap;
    } catch (const qreg::ConvergenceError& err) {
        std::cerr << err.what() << "\n";
        return qreg::cli::exit_no_convergence;
    }
}
