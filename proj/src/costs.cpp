// src/costs.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/costs.hpp"

#include <cmath>

namespace owg {

namespace {

std::vector<double> profile_row(const StrategyProfile& profile, int i) {
    const int m = profile.xi.cols();
    std::vector<double> r(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) r[static_cast<size_t>(k)] = profile.xi(i, k);
    return r;
}

std::vector<double> opponents_sum(const StrategyProfile& profile, int i) {
    const int m = profile.xi.cols();
    std::vector<double> s(static_cast<size_t>(m), 0.0);
    for (int j = 0; j < profile.xi.rows(); ++j) {
        if (j == i) continue;
        for (int k = 0; k < m; ++k) s[static_cast<size_t>(k)] += profile.xi(j, k);
    }
    return s;
}

double quadform_cost(const ModelParams& p, int i, const EquilibriumVectors& vec,
                     const QuadformTerms& q) {
    const double khat = static_cast<double>(p.n - 1);
    const double xbar = mean_inventory(p.inventories);
    const double dev = p.inventories[static_cast<size_t>(i)] - xbar;
    const double sn = vec.sum_nu, so = vec.sum_omega;
    return 0.5 * (xbar * xbar / sn + xbar * dev * (sn + so) / (sn * so) + dev * dev / so +
                  khat * (xbar / sn) * (xbar / sn) * q.nu_gt_nu +
                  xbar * dev / (sn * so) * q.om_mix_nu -
                  (dev / so) * (dev / so) * q.om_gt_om);
}

} // namespace

double cost_of_profile(int i, const StrategyProfile& profile, const KernelMatrices& K) {
    if (i < 0 || i >= profile.xi.rows())
        throw std::invalid_argument("cost_of_profile: agent index out of range");
    if (profile.xi.cols() != K.gamma_theta.rows())
        throw std::invalid_argument("cost_of_profile: profile/kernel dimension mismatch");
    const std::vector<double> xi = profile_row(profile, i);
    const std::vector<double> opp = opponents_sum(profile, i);
    return 0.5 * bilinear(K.gamma_theta, xi, xi) + bilinear(K.gamma_tilde, xi, opp);
}

QuadformTerms quadform_terms(const EquilibriumVectors& vec, const KernelMatrices& K,
                             double kappa_hat) {
    QuadformTerms q;
    q.nu_gt_nu = bilinear(K.gamma_tilde, vec.nu, vec.nu);
    const double om_gt_nu = bilinear(K.gamma_tilde, vec.omega, vec.nu);
    const double nu_gt_om = bilinear(K.gamma_tilde, vec.nu, vec.omega);
    q.om_mix_nu = kappa_hat * om_gt_nu - nu_gt_om;
    q.om_gt_om = bilinear(K.gamma_tilde, vec.omega, vec.omega);
    return q;
}

QuadformTerms quadform_terms_fast(const ModelParams& p, const GridSpec& grid,
                                  const EquilibriumVectors& vec) {
    const std::vector<double> decay = step_decay(p, grid);
    QuadformTerms q;
    q.nu_gt_nu = kernel_quadform_gamma_tilde(decay, vec.nu, vec.nu);
    const double om_gt_nu = kernel_quadform_gamma_tilde(decay, vec.omega, vec.nu);
    const double nu_gt_om = kernel_quadform_gamma_tilde(decay, vec.nu, vec.omega);
    q.om_mix_nu = static_cast<double>(p.n - 1) * om_gt_nu - nu_gt_om;
    q.om_gt_om = kernel_quadform_gamma_tilde(decay, vec.omega, vec.omega);
    return q;
}

double cost_equilibrium_quadform(const ModelParams& p, int i,
                                 const EquilibriumVectors& vec, const KernelMatrices& K) {
    return quadform_cost(p, i, vec, quadform_terms(vec, K, p.n - 1.0));
}

double cost_equilibrium_quadform_fast(const ModelParams& p, const GridSpec& grid, int i,
                                      const EquilibriumVectors& vec) {
    return quadform_cost(p, i, vec, quadform_terms_fast(p, grid, vec));
}

CostBreakdown cost_split(const ModelParams& p, int i, const StrategyProfile& profile,
                         const KernelMatrices& K, double c) {
    if (!(c > 0.0 && c < 1.0)) throw validation_error("split c must lie in (0, 1)");
    const int N = profile.xi.cols() - 1;
    const int mN = static_cast<int>(std::ceil(c * N));
    CostBreakdown b{};
    b.split_c = c;
    b.split_index = mN;
    b.total = cost_of_profile(i, profile, K);
    double front = 0.0, back = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double x2 = profile.xi(i, k) * profile.xi(i, k);
        if (k < mN) front += x2;
        else back += x2;
    }
    b.inst_front = p.theta * front;
    b.inst_back = p.theta * back;
    b.impact = b.total - b.inst_front - b.inst_back;
    return b;
}

} // namespace owg
