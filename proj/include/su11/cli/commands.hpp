// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The `signal`, `sensitivity` and `verify` subcommands and the exit-code
// contract shared by them.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "su11/cli/config.hpp"
#include "su11/cli/format.hpp"
#include "su11/closed_form.hpp"
#include "su11/errors.hpp"
#include "su11/fock/operators.hpp"
#include "su11/sweep.hpp"

namespace su11::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_numeric = 3,
    exit_empty = 4,
    exit_verify_failed = 5,
};

/// Tolerance of the operator-equivalence checks of `verify`.
inline constexpr double operator_check_tol = 1e-8;
/// Cutoff of the operator checks when the run uses the automatic cutoff.
inline constexpr std::size_t operator_check_default_n_max = 30;
/// Phases sampled from the grid by the operator checks.
inline constexpr std::size_t operator_check_points = 8;

struct CommandResult {
    Table table;
    int exit_code = exit_ok;
};

inline SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions o;
    o.fd_step = cfg.tolerances.fd_step;
    o.n_max = cfg.n_max;
    o.dimension_cap = cfg.dimension_cap;
    o.oracle.convergence_tol = cfg.tolerances.convergence_tol;
    return o;
}

inline CommandResult cmd_signal(const RunConfig& cfg) {
    const ParityCurve curve = parity_curve(cfg.state, cfg.gain, cfg.grid);
    CommandResult r;
    r.table.columns = {"phi_rad", "parity"};
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        r.table.rows.push_back({cfg.grid.at(i), curve.values[i]});
    }
    return r;
}

inline CommandResult cmd_sensitivity(const RunConfig& cfg) {
    const SensitivityResult s = sensitivity_curve(cfg.state, cfg.gain, cfg.grid, sweep_options(cfg));
    CommandResult r;
    r.table.columns = {"phi_rad", "parity", "delta_phi"};
    for (const SensitivityPoint& p : s.curve) {
        r.table.rows.push_back({p.phi, p.parity, p.delta_phi});
    }
    std::string skipped;
    for (const SkippedPoint& p : s.skipped) {
        skipped += (skipped.empty() ? "" : ";") + format_number(p.phi);
    }
    r.table.summary = {
        {"phi_opt", s.phi_opt},
        {"delta_phi_min", s.delta_phi_min},
        {"n_bar", s.n_bar},
        {"snl", s.snl},
        {"hl", s.hl},
        {"below_hl", std::string(s.below_hl ? "true" : "false")},
        {"n_max", static_cast<double>(s.photon_n_max)},
        {"skipped_points", static_cast<double>(s.skipped.size())},
        {"skipped_phi", skipped},
    };
    return r;
}

inline CommandResult cmd_verify(const RunConfig& cfg) {
    const SweepOptions opts = sweep_options(cfg);
    const VerifyReport report =
        verify_closed_form(cfg.state, cfg.gain, cfg.grid, opts, cfg.tolerances.oracle_tol);

    CommandResult r;
    r.table.columns = {"check", "phi_rad", "closed_form", "oracle", "abs_diff", "tolerance", "status"};
    auto status = [](bool pass) { return std::string(pass ? "PASS" : "FAIL"); };
    bool all_pass = report.passed();
    for (const VerifyRow& row : report.rows) {
        r.table.rows.push_back({std::string("parity"), row.phi, row.closed_form, row.oracle, row.abs_diff,
                                report.tolerance, status(row.pass)});
    }
    for (const VerifyRow& row : report.printed_form_rows) {
        r.table.rows.push_back({std::string("parity_printed_form"), row.phi, row.closed_form, row.oracle,
                                row.abs_diff, report.tolerance, status(row.pass)});
    }

    // operator equivalences on the safe sub-block at a few grid phases
    const FockCutoff op_cutoff(cfg.n_max.value_or(operator_check_default_n_max), cfg.dimension_cap);
    const std::size_t count = std::min(operator_check_points, cfg.grid.points());
    std::vector<std::size_t> picks;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t i = count == 1 ? 0 : (k * (cfg.grid.points() - 1) + (count - 1) / 2) / (count - 1);
        if (picks.empty() || picks.back() != i) {
            picks.push_back(i);
        }
    }
    double worst_u = 0.0;
    double worst_mu = 0.0;
    for (const std::size_t i : picks) {
        const double phi = cfg.grid.at(i);
        const double du = safe_block_max_diff(interferometer_unitary_normal_ordered(cfg.gain, phi, op_cutoff),
                                              interferometer_unitary_direct(cfg.gain, phi, op_cutoff));
        worst_u = std::max(worst_u, du);
        r.table.rows.push_back({std::string("unitary_normal_vs_direct"), phi, std::monostate{},
                                std::monostate{}, du, operator_check_tol, status(du <= operator_check_tol)});
    }
    for (const std::size_t i : picks) {
        const double phi = cfg.grid.at(i);
        const double dm = safe_block_max_diff(mu_operator_normal_ordered(cfg.gain, phi, op_cutoff),
                                              mu_operator_conjugated(cfg.gain, phi, op_cutoff));
        worst_mu = std::max(worst_mu, dm);
        r.table.rows.push_back({std::string("mu_normal_vs_conjugated"), phi, std::monostate{},
                                std::monostate{}, dm, operator_check_tol, status(dm <= operator_check_tol)});
    }
    all_pass = all_pass && worst_u <= operator_check_tol && worst_mu <= operator_check_tol;

    r.table.summary = {
        {"family", std::string(family_name(cfg.state))},
        {"n_max", static_cast<double>(report.n_max)},
        {"companion_n_max", static_cast<double>(report.companion_n_max)},
        {"max_diff", report.max_diff},
    };
    if (!report.printed_form_rows.empty()) {
        r.table.summary.emplace_back("printed_form_max_diff", report.printed_form_max_diff);
        r.table.summary.emplace_back(
            "printed_form_status", status(report.printed_form_max_diff <= report.tolerance));
    }
    r.table.summary.emplace_back("operator_n_max", static_cast<double>(op_cutoff.n_max()));
    r.table.summary.emplace_back("unitary_max_residual", worst_u);
    r.table.summary.emplace_back("mu_max_residual", worst_mu);
    r.table.summary.emplace_back("result", status(all_pass));
    r.exit_code = all_pass ? exit_ok : exit_verify_failed;
    return r;
}

inline std::string render(const std::string& command, const Table& table, OutputFormat format) {
    return format == OutputFormat::json ? to_json(command, table) : to_csv(table);
}

/// Parses `args` (args[0] is the program name), runs the subcommand, writes
/// the output once at the end, and returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parity-detection signals and phase sensitivity of an SU(1,1) interferometer"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> output_path;
    std::optional<std::string> format;

    std::string chosen;
    for (const char* name : {"signal", "sensitivity", "verify"}) {
        const char* help = std::string_view(name) == "signal"
                               ? "closed-form parity over the phase grid"
                           : std::string_view(name) == "sensitivity"
                               ? "phase sensitivity, optimum and SNL/HL references"
                               : "closed form and operator identities against the Fock-space oracle";
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--set", overrides, "override a configuration field, key=value (repeatable)")
            ->take_all();
        sub->add_option("--output", output_path, "output file (default: standard output)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->callback([&chosen, name] { chosen = name; });
    }

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path, overrides);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    }
    if (output_path) {
        cfg.output_path = *output_path;
    }
    if (format) {
        cfg.format = *format == "json" ? OutputFormat::json : OutputFormat::csv;
    }

    CommandResult result;
    try {
        if (chosen == "signal") {
            result = cmd_signal(cfg);
        } else if (chosen == "sensitivity") {
            result = cmd_sensitivity(cfg);
        } else {
            result = cmd_verify(cfg);
        }
    } catch (const EmptyResult& e) {
        err << "empty result: " << e.what() << "\n";
        return exit_empty;
    } catch (const NotConverged& e) {
        err << "not converged: " << e.what() << " (n_max " << e.previous_n_max() << " and "
            << e.last_n_max() << ")\n";
        return exit_numeric;
    } catch (const CutoffCapExceeded& e) {
        err << "cutoff cap exceeded: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << "\n";
        return exit_numeric;
    }

    const std::string text = render(chosen, result.table, cfg.format);
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        out << text;
    } else {
        std::ofstream file(cfg.output_path, std::ios::binary);
        file << text;
        if (!file) {
            err << "config error: output.path: cannot write '" << cfg.output_path << "'\n";
            return exit_config;
        }
    }
    if (result.exit_code == exit_verify_failed) {
        err << "verification failed\n";
    }
    return result.exit_code;
}

}  // namespace su11::cli
