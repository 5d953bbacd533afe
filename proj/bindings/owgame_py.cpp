// bindings/owgame_py.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "owg/asymptotics.hpp"
#include "owg/audit.hpp"
#include "owg/continuous.hpp"
#include "owg/costs.hpp"
#include "owg/kernel.hpp"
#include "owg/model.hpp"
#include "owg/solver.hpp"

namespace py = pybind11;
using namespace owg;

namespace {

ModelParams make_params(int n, double rho, double T, double theta,
                        const std::vector<double>& x) {
    ModelParams p;
    p.n = n;
    p.rho = rho;
    p.T = T;
    p.theta = theta;
    p.inventories = x.empty() ? std::vector<double>(static_cast<size_t>(std::max(n, 0)), 1.0) : x;
    return validate_params(p);
}

SolveMethod parse_method(const std::string& m) {
    if (m == "dense") return SolveMethod::Dense;
    if (m == "closed") return SolveMethod::ClosedForm;
    throw validation_error("method must be 'closed' or 'dense'");
}

py::dict solve(int n, double rho, double T, double theta, const std::vector<double>& x, int N,
               const std::string& method) {
    const ModelParams p = make_params(n, rho, T, theta, x);
    const GridSpec grid{N, T};
    const EquilibriumVectors vec = equilibrium_solve(p, grid, parse_method(method));
    const StrategyProfile prof = assemble_profile(p, vec);
    py::dict d;
    d["nu"] = vec.nu;
    d["omega"] = vec.omega;
    d["v"] = vec.v;
    d["w"] = vec.w;
    d["sum_nu"] = vec.sum_nu;
    d["sum_omega"] = vec.sum_omega;
    d["residual_nu"] = vec.residual_nu;
    d["residual_omega"] = vec.residual_omega;
    py::list xi;
    for (int i = 0; i < p.n; ++i) {
        py::list row;
        for (int k = 0; k <= N; ++k) row.append(prof.xi(i, k));
        xi.append(row);
    }
    d["xi"] = xi;
    return d;
}

py::dict cost_breakdown(int n, double rho, double T, double theta, const std::vector<double>& x,
                        int N, double c, int agent, const std::string& method) {
    const ModelParams p = make_params(n, rho, T, theta, x);
    const GridSpec grid{N, T};
    const EquilibriumVectors vec = equilibrium_solve(p, grid, parse_method(method));
    const StrategyProfile prof = assemble_profile(p, vec);
    const KernelMatrices K = build_kernel(p, grid);
    const CostBreakdown b = cost_split(p, agent, prof, K, c);
    py::dict d;
    d["total"] = b.total;
    d["impact"] = b.impact;
    d["inst_front"] = b.inst_front;
    d["inst_back"] = b.inst_back;
    d["split_index"] = b.split_index;
    return d;
}

double f_wrap(double t, int n, double rho, double T, bool left_limit) {
    return eval_f(t, make_params(n, rho, T, 0.0, {}), left_limit);
}

double g_wrap(double t, int n, double rho, double T, bool left_limit) {
    return eval_g(t, make_params(n, rho, T, 0.0, {}), left_limit);
}

py::dict continuous_cost_wrap(int agent, int n, double rho, double T,
                              const std::vector<double>& x) {
    const ContinuousCost c = continuous_cost(agent, make_params(n, rho, T, 0.0, x));
    py::dict d;
    d["impact"] = c.impact;
    d["block0"] = c.block0;
    d["blockT"] = c.blockT;
    d["total"] = c.total;
    return d;
}

py::dict cluster_points_wrap(double t, int n, double rho, double T) {
    const ClusterPointSet cp = cluster_points(make_params(n, rho, T, 0.0, {}), t);
    py::dict d;
    d["beta_plus"] = cp.beta_plus;
    d["beta_minus"] = cp.beta_minus;
    d["gamma_plus"] = cp.gamma_plus;
    d["gamma_minus"] = cp.gamma_minus;
    d["phi_plus"] = cp.phi_plus;
    d["phi_minus"] = cp.phi_minus;
    d["psi_plus"] = cp.psi_plus;
    d["psi_minus"] = cp.psi_minus;
    d["d1"] = cp.d1;
    d["d2"] = cp.d2;
    return d;
}

py::dict theta_zero_cost_limits_wrap(int agent, int n, double rho, double T,
                                     const std::vector<double>& x) {
    const ThetaZeroCostLimits lim =
        theta_zero_cost_limits(make_params(n, rho, T, 0.0, x), agent);
    py::dict d;
    d["even_limit"] = lim.even_limit;
    d["odd_limit"] = lim.odd_limit;
    return d;
}

py::dict audit_wrap(int n, double rho, double T, double theta, const std::vector<double>& x,
                    int N, int trials, uint64_t seed) {
    const ModelParams p = make_params(n, rho, T, theta, x);
    const AuditReport rep = full_audit(p, GridSpec{N, T}, trials, seed);
    py::dict d;
    d["kkt_spread"] = rep.kkt.max_spread;
    d["multipliers"] = rep.kkt.multipliers;
    d["residual_nu"] = rep.residual_nu;
    d["residual_omega"] = rep.residual_omega;
    d["margin"] = rep.probe.margin;
    d["identity_residual_max"] = rep.probe.identity_residual_max;
    d["solver_gap"] = rep.solver_gap;
    d["pass"] = rep.pass;
    return d;
}

double terminal_w_limit_wrap(double theta, double rho, double T) {
    return terminal_W_limit(make_params(2, rho, T, theta, {}));
}

} // namespace

PYBIND11_MODULE(owgame, m) {
    m.doc() = "Nash equilibria of the n-trader Obizhaeva-Wang execution game "
              "and their high-frequency limits";

    m.def("solve", &solve, py::arg("n"), py::arg("rho"), py::arg("T"), py::arg("theta"),
          py::arg("x"), py::arg("N"), py::arg("method") = "closed",
          "Equilibrium vectors nu/omega/v/w and the trade profile xi.");

    m.def("cost_breakdown", &cost_breakdown, py::arg("n"), py::arg("rho"), py::arg("T"),
          py::arg("theta"), py::arg("x"), py::arg("N"), py::arg("c") = 0.5,
          py::arg("agent") = 0, py::arg("method") = "closed",
          "Expected cost with impact/instantaneous split at m_N = ceil(c N).");

    m.def("f", &f_wrap, py::arg("t"), py::arg("n") = 2, py::arg("rho") = 1.0,
          py::arg("T") = 1.0, py::arg("left_limit") = false,
          "Continuous-time zero-net-supply inventory fraction.");
    m.def("g", &g_wrap, py::arg("t"), py::arg("n"), py::arg("rho") = 1.0, py::arg("T") = 1.0,
          py::arg("left_limit") = false,
          "Continuous-time symmetric-case inventory fraction.");

    m.def("continuous_cost", &continuous_cost_wrap, py::arg("agent"), py::arg("n"),
          py::arg("rho"), py::arg("T"), py::arg("x"),
          "Continuous equilibrium cost split into impact and block parts.");

    m.def("cluster_points", &cluster_points_wrap, py::arg("t"), py::arg("n"), py::arg("rho"),
          py::arg("T"), "theta=0 oscillation cluster points at time t.");

    m.def("theta_zero_cost_limits", &theta_zero_cost_limits_wrap, py::arg("agent"),
          py::arg("n"), py::arg("rho"), py::arg("T"), py::arg("x"),
          "Even/odd-N cost limits for theta = 0.");

    m.def("terminal_w_limit", &terminal_w_limit_wrap, py::arg("theta"), py::arg("rho") = 1.0,
          py::arg("T") = 1.0, "Limit of W_T: 1/((2 theta + 1/2)(rho T + 1)).");

    m.def("audit", &audit_wrap, py::arg("n"), py::arg("rho"), py::arg("T"), py::arg("theta"),
          py::arg("x"), py::arg("N"), py::arg("trials") = 100, py::arg("seed") = 42,
          "KKT + best-response certification of the computed equilibrium.");

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
}
