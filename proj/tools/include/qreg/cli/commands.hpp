// commands.hpp — CLI subcommand implementations writing CSV/report streams

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qreg/cli/config.hpp"

namespace qreg::cli {

inline constexpr std::string_view tool_version = "0.1.0";

// exit codes shared by the commands and the binary
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_no_convergence = 3;
inline constexpr int exit_resource_cap = 4;

/// `key = value` run metadata: tool version, command, resolved config echo,
/// then any per-run extras.
void write_metadata(const RunConfig& config, const std::string& command, std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& extras = {});

/// Sweep over time, temperature or register size; one CSV row per point with
/// the decay exponents of both phonon baths, the gate bath, the phase, the
/// e-factors and the single-qubit comparator. Quadrature failures leave a
/// `nan` cell and turn the exit code into exit_no_convergence.
int run_scan(const RunConfig& config, std::ostream& csv, std::ostream& meta);

/// Time traces of the scaled kernels 2N Q1_0, 2N Q2_0 and, per requested
/// separation, 4N Q1_r, 4N Q2_r (piezo bath).
int run_q_functions(const RunConfig& config, std::ostream& csv, std::ostream& meta);

/// Per-element evolution: magnitude ratio, phase, and the magnitude bounds,
/// against time (piezo + gate baths).
int run_rho(const RunConfig& config, std::ostream& csv, std::ostream& meta);

/// Lattice-vs-quadrature comparison report at the configured refinement
/// levels, with pass/fail judgments at the 1% threshold (skipped, with a
/// note, when the finest lattice is too coarse to be meaningful).
int run_oracle_compare(const RunConfig& config, std::ostream& out, std::ostream& meta);

}  // namespace qreg::cli
