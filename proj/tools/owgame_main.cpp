// tools/owgame_main.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end: equilibrium solves, limit/oscillation scans,
// cost splits, half-grid experiments, and equilibrium audits. Emits
// plot-ready CSV (or JSON) with a resolved-config metadata block.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "owg/asymptotics.hpp"
#include "owg/audit.hpp"
#include "owg/continuous.hpp"
#include "owg/costs.hpp"
#include "owg/io.hpp"
#include "owg/kernel.hpp"
#include "owg/model.hpp"
#include "owg/solver.hpp"

namespace {

using nlohmann::json;
using namespace owg;

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAuditFailed = 4;

struct Options {
    int n = 2;
    double rho = 1.0;
    double T = 1.0;
    double theta = 0.0;
    std::vector<double> x;
    int N = 0;
    std::vector<int> N_list;
    std::vector<double> t_list;
    int t_grid = 0;
    double c = 0.5;
    std::string mode = "second";
    std::string method = "closed";
    std::string method_check;
    int trials = 100;
    uint64_t seed = 42;
    std::string out;
    std::string format = "csv";
    bool corrupt = false;
};

ModelParams make_params(const Options& o) {
    ModelParams p;
    p.n = o.n;
    p.rho = o.rho;
    p.T = o.T;
    p.theta = o.theta;
    p.inventories = o.x.empty() ? std::vector<double>(static_cast<size_t>(std::max(o.n, 0)), 1.0)
                                : o.x;
    return validate_params(p);
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt17(v[i]);
    }
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

using KvList = std::vector<std::pair<std::string, std::string>>;

KvList base_config(const std::string& command, const Options& o, const ModelParams& p) {
    KvList kv;
    kv.emplace_back("command", command);
    kv.emplace_back("schema_version", std::to_string(kSchemaVersion));
    kv.emplace_back("n", std::to_string(p.n));
    kv.emplace_back("rho", fmt17(p.rho));
    kv.emplace_back("T", fmt17(p.T));
    kv.emplace_back("theta", fmt17(p.theta));
    kv.emplace_back("x", join_doubles(p.inventories));
    (void)o;
    return kv;
}

// Table accumulated in memory, written as CSV or JSON.
struct Table {
    KvList config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

    void write_csv(std::ostream& os) const {
        write_metadata(os, config);
        write_csv_row(os, columns);
        for (const auto& r : rows) write_csv_row(os, r);
    }

    void write_json(std::ostream& os) const {
        json j;
        j["schema_version"] = kSchemaVersion;
        json cfg = json::object();
        for (const auto& [k, v] : config) cfg[k] = v;
        j["config"] = cfg;
        j["columns"] = columns;
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    }
};

int write_output(const Options& o, const Table& table) {
    std::ostringstream buf;
    if (o.format == "json") table.write_json(buf);
    else table.write_csv(buf);
    if (o.out.empty()) {
        std::cout << buf.str();
        return kExitOk;
    }
    std::filesystem::path path(o.out);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("OWGAME_OUTDIR")) path = std::filesystem::path(dir) / path;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << path << "\n";
        return kExitValidation;
    }
    f << buf.str();
    return kExitOk;
}

int write_json_output(const Options& o, const json& j) {
    std::ostringstream buf;
    buf << j.dump(2) << "\n";
    if (o.out.empty()) {
        std::cout << buf.str();
        return kExitOk;
    }
    std::filesystem::path path(o.out);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("OWGAME_OUTDIR")) path = std::filesystem::path(dir) / path;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << path << "\n";
        return kExitValidation;
    }
    f << buf.str();
    return kExitOk;
}

std::vector<double> resolve_t_list(const Options& o) {
    if (!o.t_list.empty()) return o.t_list;
    const int m = o.t_grid > 0 ? o.t_grid : 100;
    std::vector<double> t(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) t[static_cast<size_t>(k)] = o.T * k / m;
    return t;
}

SolveMethod parse_method(const std::string& s) {
    if (s == "dense") return SolveMethod::Dense;
    if (s == "closed") return SolveMethod::ClosedForm;
    throw validation_error("--method must be 'closed' or 'dense'");
}

// --- solve ------------------------------------------------------------

int cmd_solve(const Options& o) {
    const ModelParams p = make_params(o);
    if (o.N < 1) throw validation_error("--N must be >= 1");
    const GridSpec grid{o.N, p.T};
    const EquilibriumVectors vec = equilibrium_solve(p, grid, parse_method(o.method));
    const StrategyProfile prof = assemble_profile(p, vec);

    Table table;
    table.config = base_config("solve", o, p);
    table.config.emplace_back("N", std::to_string(o.N));
    table.config.emplace_back("method", o.method);
    table.config.emplace_back("sum_nu", fmt17(vec.sum_nu));
    table.config.emplace_back("sum_omega", fmt17(vec.sum_omega));
    table.config.emplace_back("residual_nu", fmt17(vec.residual_nu));
    table.config.emplace_back("residual_omega", fmt17(vec.residual_omega));
    if (!o.method_check.empty()) {
        const EquilibriumVectors check = equilibrium_solve(p, grid, parse_method(o.method_check));
        table.config.emplace_back("method_check", o.method_check);
        table.config.emplace_back("max_gap", fmt17(solver_gap(vec, check)));
    }

    table.columns = {"k", "t_k", "v_k", "w_k"};
    for (int i = 1; i <= p.n; ++i) table.columns.push_back("xi_" + std::to_string(i) + "_k");
    for (int k = 0; k <= o.N; ++k) {
        std::vector<std::string> row{std::to_string(k), fmt17(grid.time(k)),
                                     fmt17(vec.v[static_cast<size_t>(k)]),
                                     fmt17(vec.w[static_cast<size_t>(k)])};
        for (int i = 0; i < p.n; ++i) row.push_back(fmt17(prof.xi(i, k)));
        table.add_row(std::move(row));
    }
    return write_output(o, table);
}

// --- limits -----------------------------------------------------------

int cmd_limits(const Options& o) {
    const ModelParams p = make_params(o);
    if (!(p.theta > 0.0))
        throw validation_error("limits requires theta > 0; use 'oscillate' for theta = 0");
    if (o.N_list.empty()) throw validation_error("--N-list is required");
    const std::vector<double> ts = resolve_t_list(o);

    Table table;
    table.config = base_config("limits", o, p);
    table.config.emplace_back("N_list", join_ints(o.N_list));
    table.config.emplace_back("t_list", join_doubles(ts));
    table.columns = {"N", "t", "n_t", "V", "W", "g", "f", "N_err_V_g", "N_err_W_f"};

    for (int N : o.N_list) {
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_closed(p, grid);
        const InventoryPath path = inventory_path(p, grid, vec, ts);
        for (const InventorySample& s : path.samples) {
            const double g = eval_g(s.t, p);
            const double f = eval_f(s.t, p);
            table.add_row({std::to_string(N), fmt17(s.t), std::to_string(s.n_t), fmt17(s.V),
                           fmt17(s.W), fmt17(g), fmt17(f), fmt17(N * std::abs(s.V - g)),
                           fmt17(N * std::abs(s.W - f))});
        }
    }
    return write_output(o, table);
}

// --- oscillate ----------------------------------------------------------

int cmd_oscillate(const Options& o) {
    const ModelParams p = make_params(o);
    if (p.theta != 0.0) throw validation_error("oscillate requires theta = 0");
    if (o.N_list.empty()) throw validation_error("--N-list is required");
    const std::vector<double> ts = resolve_t_list(o);

    Table table;
    table.config = base_config("oscillate", o, p);
    table.config.emplace_back("N_list", join_ints(o.N_list));
    table.config.emplace_back("t_list", join_doubles(ts));
    table.columns = {"N", "t", "n_t", "class", "V", "W",
                     "beta_plus", "beta_minus", "gamma_plus", "gamma_minus",
                     "phi_plus", "phi_minus", "psi_plus", "psi_minus"};

    for (int N : o.N_list) {
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_closed(p, grid);
        const InventoryPath path = inventory_path(p, grid, vec, ts);
        for (const InventorySample& s : path.samples) {
            const ClusterPointSet cp = cluster_points(p, s.t);
            const std::string cls = std::string(N % 2 == 0 ? "even" : "odd") + "-" +
                                    (s.n_t % 2 == 0 ? "even" : "odd");
            table.add_row({std::to_string(N), fmt17(s.t), std::to_string(s.n_t), cls,
                           fmt17(s.V), fmt17(s.W), fmt17(cp.beta_plus), fmt17(cp.beta_minus),
                           fmt17(cp.gamma_plus), fmt17(cp.gamma_minus), fmt17(cp.phi_plus),
                           fmt17(cp.phi_minus), fmt17(cp.psi_plus), fmt17(cp.psi_minus)});
        }
    }
    return write_output(o, table);
}

// --- costs --------------------------------------------------------------

int cmd_costs(const Options& o) {
    const ModelParams p = make_params(o);
    if (o.N_list.empty()) throw validation_error("--N-list is required");
    if (!(o.c > 0.0 && o.c < 1.0)) throw validation_error("--c must lie in (0, 1)");

    Table table;
    table.config = base_config("costs", o, p);
    table.config.emplace_back("N_list", join_ints(o.N_list));
    table.config.emplace_back("c", fmt17(o.c));
    table.config.emplace_back("method", o.method);
    table.columns = {"N", "agent", "total", "impact", "inst_front", "inst_back", "split_index"};
    if (p.theta > 0.0) {
        table.columns.insert(table.columns.end(),
                             {"cont_impact", "cont_block0", "cont_blockT", "cont_total"});
    } else {
        table.columns.insert(table.columns.end(), {"cost_limit_even", "cost_limit_odd"});
    }

    for (int N : o.N_list) {
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_solve(p, grid, parse_method(o.method));
        const StrategyProfile prof = assemble_profile(p, vec);
        const KernelMatrices K = build_kernel(p, grid);
        for (int i = 0; i < p.n; ++i) {
            const CostBreakdown b = cost_split(p, i, prof, K, o.c);
            std::vector<std::string> row{std::to_string(N), std::to_string(i + 1),
                                         fmt17(b.total), fmt17(b.impact), fmt17(b.inst_front),
                                         fmt17(b.inst_back), std::to_string(b.split_index)};
            if (p.theta > 0.0) {
                const ContinuousCost cc = continuous_cost(i, p);
                row.push_back(fmt17(cc.impact));
                row.push_back(fmt17(cc.block0));
                row.push_back(fmt17(cc.blockT));
                row.push_back(fmt17(cc.total));
            } else {
                const ThetaZeroCostLimits lim = theta_zero_cost_limits(p, i);
                row.push_back(fmt17(lim.even_limit));
                row.push_back(fmt17(lim.odd_limit));
            }
            table.add_row(std::move(row));
        }
    }
    return write_output(o, table);
}

// --- halfgrid -----------------------------------------------------------

int cmd_halfgrid(const Options& o) {
    const ModelParams p = make_params(o);
    if (o.N_list.empty()) throw validation_error("--N-list is required");
    HalfGridMode mode;
    if (o.mode == "first") mode = HalfGridMode::FirstHalf;
    else if (o.mode == "second") mode = HalfGridMode::SecondHalf;
    else throw validation_error("--mode must be 'first' or 'second'");

    const HalfGridReport rep = halfgrid_convergence(p, o.N_list, mode);

    Table table;
    table.config = base_config("halfgrid", o, p);
    table.config.emplace_back("N_list", join_ints(o.N_list));
    table.config.emplace_back("mode", o.mode);
    table.config.emplace_back("mesh_points", std::to_string(rep.mesh_points));
    table.columns = {"N", "sup_W_vs_f", "sup_V_vs_g", "sup_V_vs_g_first",
                     "sup_V_vs_g_second", "sup_W_vs_f_first", "sup_W_vs_f_second"};
    for (const HalfGridRow& r : rep.rows)
        table.add_row({std::to_string(r.N), fmt17(r.sup_W_vs_f), fmt17(r.sup_V_vs_g),
                       fmt17(r.sup_V_vs_g_first), fmt17(r.sup_V_vs_g_second),
                       fmt17(r.sup_W_vs_f_first), fmt17(r.sup_W_vs_f_second)});
    return write_output(o, table);
}

// --- audit ----------------------------------------------------------------

int cmd_audit(const Options& o) {
    const ModelParams p = make_params(o);
    if (o.N < 1) throw validation_error("--N must be >= 1");
    const GridSpec grid{o.N, p.T};
    const AuditReport rep = o.corrupt ? full_audit_corrupted(p, grid, o.trials, o.seed)
                                      : full_audit(p, grid, o.trials, o.seed);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "audit";
    json cfg = json::object();
    for (const auto& [k, v] : base_config("audit", o, p)) cfg[k] = v;
    cfg["N"] = std::to_string(o.N);
    cfg["trials"] = std::to_string(o.trials);
    cfg["seed"] = std::to_string(o.seed);
    cfg["corrupt"] = o.corrupt ? "true" : "false";
    j["config"] = cfg;
    j["report"] = {
        {"kkt_spread", rep.kkt.max_spread},
        {"multipliers", rep.kkt.multipliers},
        {"aggregation_residual", rep.kkt.aggregation_residual},
        {"residual_nu", rep.residual_nu},
        {"residual_omega", rep.residual_omega},
        {"perturbation_margin", rep.probe.margin},
        {"identity_residual_max", rep.probe.identity_residual_max},
        {"solver_gap", rep.solver_gap},
        {"pass", rep.pass},
    };
    const int rc = write_json_output(o, j);
    if (rc != kExitOk) return rc;
    return rep.pass ? kExitOk : kExitAuditFailed;
}

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "number of traders (>= 2)");
    cmd->add_option("--rho", o.rho, "impact decay rate (> 0)");
    cmd->add_option("--T", o.T, "trading horizon (> 0)");
    cmd->add_option("--theta", o.theta, "instantaneous cost coefficient (>= 0)");
    cmd->add_option("--x", o.x, "initial inventories, comma separated (default: all 1)")
        ->delimiter(',');
    cmd->add_option("--out", o.out, "output path (default: stdout); relative paths resolve "
                                    "against $OWGAME_OUTDIR when set");
    cmd->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nash equilibria of the n-trader Obizhaeva-Wang execution game "
                 "and their high-frequency limits"};
    app.require_subcommand(1);

    Options o;

    CLI::App* solve = app.add_subcommand("solve", "equilibrium strategy profile at one grid size");
    add_model_flags(solve, o);
    solve->add_option("--N", o.N, "grid steps (N+1 trading dates)")->required();
    solve->add_option("--method", o.method, "solver: closed or dense");
    solve->add_option("--method-check", o.method_check,
                      "cross-check solver; adds max_gap metadata");

    CLI::App* limits = app.add_subcommand(
        "limits", "inventory paths vs the continuous limits f, g (theta > 0)");
    add_model_flags(limits, o);
    limits->add_option("--N-list", o.N_list, "grid sizes, comma separated")->delimiter(',');
    limits->add_option("--t-list", o.t_list, "sample times, comma separated")->delimiter(',');
    limits->add_option("--t-grid", o.t_grid, "use an equispaced mesh with this many steps");

    CLI::App* oscillate = app.add_subcommand(
        "oscillate", "theta = 0 oscillation scan with cluster points");
    add_model_flags(oscillate, o);
    oscillate->add_option("--N-list", o.N_list, "grid sizes, comma separated")->delimiter(',');
    oscillate->add_option("--t-list", o.t_list, "sample times, comma separated")->delimiter(',');
    oscillate->add_option("--t-grid", o.t_grid, "use an equispaced mesh with this many steps");

    CLI::App* costs = app.add_subcommand("costs", "cost breakdowns and their limit targets");
    add_model_flags(costs, o);
    costs->add_option("--N-list", o.N_list, "grid sizes, comma separated")->delimiter(',');
    costs->add_option("--c", o.c, "split fraction in (0,1), m_N = ceil(c N)");
    costs->add_option("--method", o.method, "solver: closed or dense");

    CLI::App* halfgrid = app.add_subcommand(
        "halfgrid", "half-grid instantaneous-cost convergence diagnostics");
    add_model_flags(halfgrid, o);
    halfgrid->add_option("--N-list", o.N_list, "grid sizes, comma separated")->delimiter(',');
    halfgrid->add_option("--mode", o.mode, "first or second half carries the cost");

    CLI::App* audit = app.add_subcommand("audit", "equilibrium certification report (JSON)");
    add_model_flags(audit, o);
    audit->add_option("--N", o.N, "grid steps")->required();
    audit->add_option("--trials", o.trials, "perturbation trials per agent");
    audit->add_option("--seed", o.seed, "RNG seed");
    audit->add_flag("--corrupt", o.corrupt, "negative control: corrupt the profile first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (solve->parsed()) return cmd_solve(o);
        if (limits->parsed()) return cmd_limits(o);
        if (oscillate->parsed()) return cmd_oscillate(o);
        if (costs->parsed()) return cmd_costs(o);
        if (halfgrid->parsed()) return cmd_halfgrid(o);
        if (audit->parsed()) return cmd_audit(o);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const singular_matrix_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::length_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
