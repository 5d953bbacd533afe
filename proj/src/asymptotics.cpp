// src/asymptotics.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace owg {

std::vector<double> prefix_sums(const std::vector<double>& x) {
    std::vector<double> s(x.size() + 1, 0.0);
    for (size_t i = 0; i < x.size(); ++i) s[i + 1] = s[i] + x[i];
    return s;
}

InventoryPath inventory_path(const ModelParams& p, const GridSpec& grid,
                             const EquilibriumVectors& vec,
                             const std::vector<double>& t_list) {
    validate_params(p);
    const std::vector<double> cv = prefix_sums(vec.v);
    const std::vector<double> cw = prefix_sums(vec.w);
    const double xbar = mean_inventory(p.inventories);
    InventoryPath path;
    path.N = grid.N;
    path.theta = p.theta;
    path.samples.reserve(t_list.size());
    for (double t : t_list) {
        const GridIndex gi = grid_index(t, grid);
        InventorySample s;
        s.t = t;
        s.n_t = gi.k;
        s.eta = gi.eta;
        s.V = 1.0 - cv[static_cast<size_t>(gi.k)];
        s.W = 1.0 - cw[static_cast<size_t>(gi.k)];
        s.X.resize(static_cast<size_t>(p.n));
        for (int i = 0; i < p.n; ++i)
            s.X[static_cast<size_t>(i)] =
                xbar * s.V + (p.inventories[static_cast<size_t>(i)] - xbar) * s.W;
        path.samples.push_back(std::move(s));
    }
    return path;
}

double terminal_W_limit(const ModelParams& p) {
    validate_params(p);
    return 1.0 / ((2.0 * p.theta + 0.5) * (p.rho * p.T + 1.0));
}

RateDiagnostic rate_diagnostic(const ModelParams& p, double t, const std::vector<int>& N_list,
                               RateTarget target) {
    validate_params(p);
    if (!(p.theta > 0.0))
        throw validation_error("rate_diagnostic requires theta > 0; use oscillation_scan at theta = 0");
    if (N_list.empty()) throw validation_error("rate_diagnostic: empty N list");
    RateDiagnostic d;
    d.t = t;
    d.target = target;
    d.N_list = N_list;
    const double limit = target == RateTarget::VvsG ? eval_g(t, p) : eval_f(t, p);
    for (int N : N_list) {
        if (N > kDefaultMatrixCap)
            throw validation_error("rate_diagnostic: N exceeds the closed-form sweep cap");
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_closed(p, grid);
        const GridIndex gi = grid_index(t, grid);
        const std::vector<double>& comp = target == RateTarget::VvsG ? vec.v : vec.w;
        double sum = 0.0;
        for (int k = 0; k < gi.k; ++k) sum += comp[static_cast<size_t>(k)];
        const double err = std::abs(1.0 - sum - limit);
        d.errors.push_back(err);
        d.scaled.push_back(N * err);
    }
    d.sup_scaled = *std::max_element(d.scaled.begin(), d.scaled.end());
    const size_t half = (d.scaled.size() + 1) / 2;
    double first_half_max = 0.0;
    for (size_t i = 0; i < half; ++i) first_half_max = std::max(first_half_max, d.scaled[i]);
    d.bounded = d.scaled.back() <= 1.1 * first_half_max;
    return d;
}

ClusterPointSet cluster_points(const ModelParams& p, double t) {
    validate_params(p);
    if (!(t >= 0.0) || !(t <= p.T)) throw validation_error("t must lie in [0, T]");
    if (p.rho * p.T * (p.n + 1.0) / (p.n - 1.0) > 350.0)
        throw validation_error("rho*T*(n+1)/(n-1) too large (exp overflow)");
    const double n = static_cast<double>(p.n);
    const double rho = p.rho, T = p.T;
    const double u = rho * (n + 1.0) / (n - 1.0);
    const double eT = std::exp(u * T);
    const double e2T = eT * eT;

    ClusterPointSet cp;
    cp.t = t;
    cp.d1 = n * e2T * ((n + 1.0) * rho * T + n + 3.0) + (n - 1.0) * (n - 1.0) * eT +
            (n + 1.0) * rho * T + 3.0 * n + 1.0;
    cp.d2 = n * e2T * ((n + 1.0) * rho * T + n + 3.0) + (1.0 - n * n) * eT -
            (n + 1.0) * rho * T - 3.0 * n - 1.0;
    const double aval = (n + 1.0) * std::exp(u * (T - t)) + n * (n + 1.0) * std::exp(u * (2.0 * T - t));
    cp.a_plus = aval;
    cp.a_minus = -aval;
    cp.b = e2T * (n * (n + 1.0) * rho * (T - t) + 2.0 * n) - 2.0 * n * std::exp(u * (T + t));
    cp.c = (n + 1.0) * rho * (T - t) + n * (n - 1.0) * eT + 2.0 * n * std::exp(u * t) + n + 1.0;

    cp.beta_plus = (cp.a_plus + cp.b + cp.c) / cp.d1;
    cp.beta_minus = (cp.a_minus + cp.b + cp.c) / cp.d1;
    cp.gamma_plus = (cp.a_plus + cp.b - cp.c) / cp.d2;
    cp.gamma_minus = (cp.a_minus + cp.b - cp.c) / cp.d2;

    const double eback = std::exp(-rho * (T - t));
    cp.phi_plus = (1.0 + rho * (T - t) + eback) / (1.0 + rho * T + std::exp(-rho * T));
    cp.phi_minus = (1.0 + rho * (T - t) - eback) / (1.0 + rho * T + std::exp(-rho * T));
    cp.psi_plus = (1.0 + rho * (T - t) + eback) / (1.0 + rho * T - std::exp(-rho * T));
    cp.psi_minus = (1.0 + rho * (T - t) - eback) / (1.0 + rho * T - std::exp(-rho * T));
    return cp;
}

double predicted_V_cluster(const ClusterPointSet& cp, int N, int n_t) {
    const bool plus = n_t % 2 == 0;
    if (N % 2 == 0) return plus ? cp.beta_plus : cp.beta_minus;
    return plus ? cp.gamma_plus : cp.gamma_minus;
}

double predicted_W_cluster(const ClusterPointSet& cp, int N, int n_t) {
    const bool plus = (N - n_t) % 2 == 0;
    if (N % 2 == 0) return plus ? cp.phi_plus : cp.phi_minus;
    return plus ? cp.psi_plus : cp.psi_minus;
}

OscillationScan oscillation_scan(const ModelParams& p, double t,
                                 const std::vector<int>& N_list) {
    validate_params(p);
    if (p.theta != 0.0) throw validation_error("oscillation_scan requires theta = 0");
    if (N_list.empty()) throw validation_error("oscillation_scan: empty N list");
    OscillationScan scan;
    scan.t = t;
    const ClusterPointSet cp = cluster_points(p, t);
    for (int c = 0; c < 4; ++c) {
        scan.classes[static_cast<size_t>(c)].N_even = (c / 2) != 0;
        scan.classes[static_cast<size_t>(c)].nt_even = (c % 2) != 0;
    }
    for (int N : N_list) {
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_closed(p, grid);
        const GridIndex gi = grid_index(t, grid);
        double sv = 0.0, sw = 0.0;
        for (int k = 0; k < gi.k; ++k) {
            sv += vec.v[static_cast<size_t>(k)];
            sw += vec.w[static_cast<size_t>(k)];
        }
        OscillationSample s;
        s.N = N;
        s.n_t = gi.k;
        s.V = 1.0 - sv;
        s.W = 1.0 - sw;
        s.V_cluster = predicted_V_cluster(cp, N, gi.k);
        s.W_cluster = predicted_W_cluster(cp, N, gi.k);
        const double v1 = N % 2 == 0 ? cp.beta_plus : cp.gamma_plus;
        const double v2 = N % 2 == 0 ? cp.beta_minus : cp.gamma_minus;
        const double w1 = N % 2 == 0 ? cp.phi_plus : cp.psi_plus;
        const double w2 = N % 2 == 0 ? cp.phi_minus : cp.psi_minus;
        s.V_nearest = std::min(std::abs(s.V - v1), std::abs(s.V - v2));
        s.W_nearest = std::min(std::abs(s.W - w1), std::abs(s.W - w2));

        OscillationClassStat& cls =
            scan.classes[static_cast<size_t>(2 * (N % 2 == 0) + (gi.k % 2 == 0))];
        ++cls.count;
        cls.last_N = N;
        cls.last_V = s.V;
        cls.last_W = s.W;
        cls.last_V_resid = std::abs(s.V - s.V_cluster);
        cls.last_W_resid = std::abs(s.W - s.W_cluster);
        scan.samples.push_back(std::move(s));
    }
    return scan;
}

ThetaZeroCostLimits theta_zero_cost_limits(const ModelParams& p, int i) {
    validate_params(p);
    if (i < 0 || i >= p.n) throw validation_error("agent index out of range");
    const ClusterPointSet cp = cluster_points(p, 0.0); // for d1, d2
    const double n = static_cast<double>(p.n);
    const double rT = p.rho * p.T;
    const double e2T = std::exp(2.0 * rT * (n + 1.0) / (n - 1.0));
    const double xbar = mean_inventory(p.inventories);
    const double dev = p.inventories[static_cast<size_t>(i)] - xbar;
    ThetaZeroCostLimits lim;
    lim.even_limit = n * xbar * xbar * ((n + 1.0) * n * e2T + n + 1.0) / cp.d1 +
                     n * xbar * dev / (std::exp(-rT) + rT + 1.0);
    lim.odd_limit = n * xbar * xbar * ((n + 1.0) * n * e2T - n - 1.0) / cp.d2 +
                    n * xbar * dev / (rT + 1.0 - std::exp(-rT));
    return lim;
}

QuadformLimits quadform_limits_positive_theta(const ModelParams& p) {
    validate_params(p);
    const double n = static_cast<double>(p.n);
    const double rT = p.rho * p.T;
    const double emT = std::exp(-rT * (n + 1.0) / (n - 1.0));
    QuadformLimits q;
    q.nu_gt_nu = (n - 1.0) / (2.0 * n * n * (n + 1.0) * (n + 1.0) * (n + 1.0)) *
                 (-emT * emT - 4.0 * n * emT + 2.0 * n * n * (n + 1.0) / (n - 1.0) * rT +
                  n * n * (n + 7.0) / (n - 1.0));
    q.om_mix_nu = (-(n - 1.0) * (2.0 * n - 1.0) * emT + n * (n + 4.0) * (n - 1.0) +
                   n * (n + 1.0) * (n - 2.0) * rT) /
                  (n * (n + 1.0) * (n + 1.0));
    q.om_gt_om = (2.0 * rT + 1.0) / 2.0;
    return q;
}

QuadformLimits quadform_limits_theta_zero(const ModelParams& p, bool even_N) {
    validate_params(p);
    const double n = static_cast<double>(p.n);
    const double rT = p.rho * p.T;
    const double u = rT * (n + 1.0) / (n - 1.0);
    const double eT = std::exp(u);
    const double e2T = eT * eT;
    const double e3T = std::exp(rT * (n + 3.0) / (n - 1.0));
    const double emrT = std::exp(-rT);
    const double Dp = (n * e2T + 1.0) * (n + 1.0) * (n + 1.0);
    const double Dm = (n * e2T - 1.0) * (n + 1.0) * (n + 1.0);
    QuadformLimits q;
    if (even_N) {
        q.nu_gt_nu = (n * e2T * ((n + 1.0) * rT + n + 3.0) + (n - 1.0) * (n - 1.0) * eT +
                      (n + 1.0) * rT + 3.0 * n + 1.0) /
                     ((n + 1.0) * Dp);
        const double scrD = Dp / (n + 1.0);
        q.om_mix_nu = (n * n * e2T - n * (n + 1.0) * e3T + (2.0 * n * n - 3.0 * n - 1.0) * eT -
                       (n + 1.0) * emrT + 3.0 * n - 2.0) /
                          scrD +
                      rT * (n - 2.0) * (n * e2T + 1.0) / scrD +
                      2.0 * n * (n - 2.0) * (eT - 1.0) * (eT - 1.0) / Dp;
        q.om_gt_om = emrT + rT + 1.0;
    } else {
        q.nu_gt_nu = (n * e2T * ((n + 1.0) * rT + n + 3.0) - (n * n - 1.0) * eT -
                      (n + 1.0) * rT - (3.0 * n + 1.0)) /
                     ((n + 1.0) * Dm);
        const double scrD = Dm / (n + 1.0);
        q.om_mix_nu = (n * n * e2T + n * (n + 1.0) * e3T - (2.0 * n * n - 3.0 * n + 1.0) * eT -
                       (n + 1.0) * emrT - 3.0 * n + 2.0) /
                          scrD +
                      rT * (n - 2.0) * (n * e2T - 1.0) / scrD +
                      2.0 * n * (n - 2.0) * (e2T - 1.0) / Dm;
        q.om_gt_om = -emrT + rT + 1.0;
    }
    return q;
}

double sum_nu_limit_positive_theta(const ModelParams& p) {
    const double n = static_cast<double>(p.n);
    const double rT = p.rho * p.T;
    const double eT = std::exp(rT * (n + 1.0) / (n - 1.0));
    return (n * ((rT + 1.0) * (n + 1.0) + 2.0) * eT - (n - 1.0)) /
           (eT * (n + 1.0) * (n + 1.0) * n);
}

double sum_omega_limit_positive_theta(const ModelParams& p) { return p.rho * p.T + 1.0; }

double sum_nu_limit_theta_zero(const ModelParams& p, bool even_N) {
    const ClusterPointSet cp = cluster_points(p, 0.0);
    const double n = static_cast<double>(p.n);
    const double e2T = std::exp(2.0 * p.rho * p.T * (n + 1.0) / (n - 1.0));
    const double Dp = (n * e2T + 1.0) * (n + 1.0) * (n + 1.0);
    const double Dm = (n * e2T - 1.0) * (n + 1.0) * (n + 1.0);
    return even_N ? cp.d1 / Dp : cp.d2 / Dm;
}

double sum_omega_limit_theta_zero(const ModelParams& p, bool even_N) {
    const double rT = p.rho * p.T;
    return even_N ? std::exp(-rT) + rT + 1.0 : rT + 1.0 - std::exp(-rT);
}

std::vector<QuadformCheckRow> quadform_limit_check(const ModelParams& p,
                                                   const std::vector<int>& N_list) {
    validate_params(p);
    std::vector<QuadformCheckRow> rows;
    rows.reserve(N_list.size());
    for (int N : N_list) {
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = equilibrium_closed(p, grid);
        QuadformCheckRow row;
        row.N = N;
        row.value = quadform_terms_fast(p, grid, vec);
        row.target = p.theta > 0.0 ? quadform_limits_positive_theta(p)
                                   : quadform_limits_theta_zero(p, N % 2 == 0);
        auto rel = [](double v, double tgt) {
            return std::abs(v - tgt) / std::max(1e-300, std::abs(tgt));
        };
        row.rel_err_nu_gt_nu = rel(row.value.nu_gt_nu, row.target.nu_gt_nu);
        row.rel_err_om_mix_nu = rel(row.value.om_mix_nu, row.target.om_mix_nu);
        row.rel_err_om_gt_om = rel(row.value.om_gt_om, row.target.om_gt_om);
        rows.push_back(row);
    }
    return rows;
}

HalfGridReport halfgrid_convergence(const ModelParams& p, const std::vector<int>& N_list,
                                    HalfGridMode mode, int mesh_points) {
    validate_params(p);
    if (mesh_points < 3) throw validation_error("mesh_points must be >= 3");
    HalfGridReport rep;
    rep.mode = mode;
    rep.mesh_points = mesh_points;
    for (int N : N_list) {
        if (N > 2000)
            throw validation_error("halfgrid_convergence: N exceeds the dense sweep cap (2000)");
        const GridSpec grid{N, p.T};
        const EquilibriumVectors vec = solve_halfgrid(p, grid, mode);
        const std::vector<double> cv = prefix_sums(vec.v);
        const std::vector<double> cw = prefix_sums(vec.w);
        HalfGridRow row{N, 0, 0, 0, 0, 0, 0};
        for (int m = 0; m < mesh_points; ++m) {
            const double t = p.T * m / (mesh_points - 1);
            const GridIndex gi = grid_index(t, grid);
            const double V = 1.0 - cv[static_cast<size_t>(gi.k)];
            const double W = 1.0 - cw[static_cast<size_t>(gi.k)];
            const double ef = std::abs(W - eval_f(t, p));
            const double eg = std::abs(V - eval_g(t, p));
            const bool first_half = t <= 0.5 * p.T;
            row.sup_W_vs_f = std::max(row.sup_W_vs_f, ef);
            if (first_half) row.sup_W_vs_f_first = std::max(row.sup_W_vs_f_first, ef);
            else row.sup_W_vs_f_second = std::max(row.sup_W_vs_f_second, ef);
            if (m > 0) {
                row.sup_V_vs_g = std::max(row.sup_V_vs_g, eg);
                if (first_half) row.sup_V_vs_g_first = std::max(row.sup_V_vs_g_first, eg);
                else row.sup_V_vs_g_second = std::max(row.sup_V_vs_g_second, eg);
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace owg
