// src/audit.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/audit.hpp"

#include <cmath>

#include "owg/kernel.hpp"

namespace owg {

uint64_t Rng::next_u64() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

namespace {

std::vector<double> row_of(const StrategyProfile& profile, int i) {
    std::vector<double> r(static_cast<size_t>(profile.xi.cols()));
    for (int k = 0; k < profile.xi.cols(); ++k) r[static_cast<size_t>(k)] = profile.xi(i, k);
    return r;
}

std::vector<double> total_of(const StrategyProfile& profile) {
    std::vector<double> s(static_cast<size_t>(profile.xi.cols()), 0.0);
    for (int i = 0; i < profile.xi.rows(); ++i)
        for (int k = 0; k < profile.xi.cols(); ++k)
            s[static_cast<size_t>(k)] += profile.xi(i, k);
    return s;
}

// Stationarity vector gamma_theta xi_i + gamma_tilde (S - xi_i).
std::vector<double> stationarity(const ModelParams& p, const std::vector<double>& decay,
                                 const std::vector<double>& xi, const std::vector<double>& total) {
    std::vector<double> opp(total.size());
    for (size_t k = 0; k < total.size(); ++k) opp[k] = total[k] - xi[k];
    std::vector<double> a = kernel_matvec_gamma_theta(decay, p.theta, xi);
    std::vector<double> b = kernel_matvec_gamma_tilde(decay, opp);
    for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

} // namespace

KktAudit kkt_audit(const ModelParams& p, const GridSpec& grid, const StrategyProfile& profile) {
    validate_params(p);
    const std::vector<double> decay = step_decay(p, grid);
    const std::vector<double> total = total_of(profile);
    KktAudit audit;
    audit.max_spread = 0.0;
    double alpha_sum = 0.0;
    for (int i = 0; i < p.n; ++i) {
        const std::vector<double> s = stationarity(p, decay, row_of(profile, i), total);
        double mn = s[0], mx = s[0], mean = 0.0;
        for (double v : s) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            mean += v;
        }
        mean /= static_cast<double>(s.size());
        const double spread = (mx - mn) / std::max(1.0, std::abs(mean));
        audit.multipliers.push_back(mean);
        audit.spreads.push_back(spread);
        audit.max_spread = std::max(audit.max_spread, spread);
        alpha_sum += mean;
    }
    // Summing the stationarity conditions over agents ties the aggregate
    // strategy to the sum of the multipliers.
    std::vector<double> agg = kernel_matvec_gamma_theta(decay, p.theta, total);
    std::vector<double> aggt = kernel_matvec_gamma_tilde(decay, total);
    double res = 0.0;
    for (size_t k = 0; k < agg.size(); ++k)
        res = std::max(res, std::abs(agg[k] + (p.n - 1) * aggt[k] - alpha_sum));
    audit.aggregation_residual = res / std::max(1.0, std::abs(alpha_sum));
    return audit;
}

ProbeResult best_response_probe(const ModelParams& p, const GridSpec& grid,
                                const StrategyProfile& profile, int trials, uint64_t seed) {
    validate_params(p);
    if (trials < 1) throw validation_error("trials >= 1 required");
    const std::vector<double> decay = step_decay(p, grid);
    const std::vector<double> total = total_of(profile);
    const size_t m = total.size();
    Rng rng(seed);
    ProbeResult res{0.0, 0.0, trials, seed};
    bool first = true;
    for (int i = 0; i < p.n; ++i) {
        const std::vector<double> xi = row_of(profile, i);
        const std::vector<double> s = stationarity(p, decay, xi, total);
        double scale = 0.0;
        for (double v : xi) scale = std::max(scale, std::abs(v));
        scale = 0.1 * (scale > 0.0 ? scale : 1.0);
        // cost(xi) pieces reused across trials: dcost = cost(eta) - cost(xi)
        // expands exactly to 0.5 d' gamma_theta d + s' d for d = eta - xi.
        std::vector<double> d(m);
        for (int trial = 0; trial < trials; ++trial) {
            double zsum = 0.0;
            for (size_t k = 0; k < m; ++k) {
                d[k] = scale * rng.normal();
                zsum += d[k];
            }
            const double shift = zsum / static_cast<double>(m);
            double sd = 0.0;
            for (size_t k = 0; k < m; ++k) {
                d[k] -= shift; // keeps 1' eta = x_i
                sd += s[k] * d[k];
            }
            const double quad = 0.5 * kernel_quadform_gamma_theta(decay, p.theta, d);
            const double dcost = quad + sd;
            if (first || dcost < res.margin) res.margin = dcost;
            first = false;
            res.identity_residual_max =
                std::max(res.identity_residual_max, std::abs(dcost - quad));
        }
    }
    return res;
}

namespace {

AuditReport run_audit(const ModelParams& p, const GridSpec& grid, int trials, uint64_t seed,
                      const AuditThresholds& thr, bool corrupt) {
    validate_params(p);
    AuditReport rep;
    rep.thresholds = thr;
    EquilibriumVectors dense = equilibrium_dense(p, grid);
    rep.residual_nu = dense.residual_nu;
    rep.residual_omega = dense.residual_omega;
    rep.solver_gap_applicable = true;
    const EquilibriumVectors closed = equilibrium_closed(p, grid);
    rep.solver_gap = solver_gap(closed, dense);

    StrategyProfile profile = assemble_profile(p, dense);
    if (corrupt) profile = corrupt_profile(std::move(profile));
    rep.kkt = kkt_audit(p, grid, profile);
    rep.probe = best_response_probe(p, grid, profile, trials, seed);

    rep.pass = rep.kkt.max_spread <= thr.kkt_spread &&
               rep.residual_nu <= thr.residual && rep.residual_omega <= thr.residual &&
               rep.probe.margin >= thr.margin &&
               (!rep.solver_gap_applicable || rep.solver_gap <= thr.solver_gap);
    return rep;
}

} // namespace

AuditReport full_audit(const ModelParams& p, const GridSpec& grid, int trials, uint64_t seed,
                       const AuditThresholds& thr) {
    return run_audit(p, grid, trials, seed, thr, false);
}

AuditReport full_audit_corrupted(const ModelParams& p, const GridSpec& grid, int trials,
                                 uint64_t seed, const AuditThresholds& thr) {
    return run_audit(p, grid, trials, seed, thr, true);
}

StrategyProfile corrupt_profile(StrategyProfile profile) {
    // First and last trades differ materially in every equilibrium
    // profile (block vs interior trade), so swapping them breaks the
    // stationarity certificate.
    const int m = profile.xi.cols();
    if (m >= 2) {
        const double tmp = profile.xi(0, 0);
        profile.xi(0, 0) = profile.xi(0, m - 1);
        profile.xi(0, m - 1) = tmp;
    }
    return profile;
}

} // namespace owg
