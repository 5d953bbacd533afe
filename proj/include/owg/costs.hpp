// owg/costs.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_COSTS_HPP
#define OWG_COSTS_HPP

#include "owg/kernel.hpp"
#include "owg/model.hpp"
#include "owg/solver.hpp"

namespace owg {

// Expected execution cost of one agent split into the transient-impact
// part and the instantaneous parts before/after the split date
// m_N = ceil(c*N). Trade indices are 0-based: the front sum runs over
// k = 0..m_N-1, the back sum over k = m_N..N.
struct CostBreakdown {
    double total;      // expected cost
    double impact;     // total - theta * sum_k xi_k^2
    double inst_front; // theta * sum_{k < m_N} xi_k^2
    double inst_back;  // theta * sum_{k >= m_N} xi_k^2
    double split_c;
    int split_index;   // m_N
};

// The three bilinear forms entering the equilibrium-cost representation.
struct QuadformTerms {
    double nu_gt_nu;  // nu^T gamma_tilde nu
    double om_mix_nu; // omega^T (khat gamma_tilde - gamma_tilde^T) nu
    double om_gt_om;  // omega^T gamma_tilde omega
};

// Expected cost of agent i against the other rows of the profile:
// (1/2) xi_i^T gamma_theta xi_i + xi_i^T gamma_tilde sum_{j != i} xi_j.
// The unaffected price drops out in expectation.
double cost_of_profile(int i, const StrategyProfile& profile, const KernelMatrices& K);

// Same cost evaluated through the quadratic-form representation in
// (1^T nu, 1^T omega) and the QuadformTerms; must agree with
// cost_of_profile on equilibrium profiles.
double cost_equilibrium_quadform(const ModelParams& p, int i,
                                 const EquilibriumVectors& vec, const KernelMatrices& K);

// O(N) evaluation of the same representation via the kernel recursions.
double cost_equilibrium_quadform_fast(const ModelParams& p, const GridSpec& grid, int i,
                                      const EquilibriumVectors& vec);

CostBreakdown cost_split(const ModelParams& p, int i, const StrategyProfile& profile,
                         const KernelMatrices& K, double c);

QuadformTerms quadform_terms(const EquilibriumVectors& vec, const KernelMatrices& K,
                             double kappa_hat);
QuadformTerms quadform_terms_fast(const ModelParams& p, const GridSpec& grid,
                                  const EquilibriumVectors& vec);

} // namespace owg

#endif // OWG_COSTS_HPP
