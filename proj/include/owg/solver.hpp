// owg/solver.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_SOLVER_HPP
#define OWG_SOLVER_HPP

#include <string>
#include <vector>

#include "owg/kernel.hpp"
#include "owg/linalg.hpp"
#include "owg/model.hpp"

namespace owg {

enum class SolveMethod { Dense, ClosedForm };

// Solution vectors of the two linear systems
//   (gamma_theta + (n-1) gamma_tilde) nu    = 1
//   (gamma_theta -       gamma_tilde) omega = 1
// together with their normalizations v = nu / (1^T nu), w = omega / (1^T omega).
// omega (hence w) does not depend on n.
struct EquilibriumVectors {
    std::vector<double> nu, omega; // unnormalized
    std::vector<double> v, w;      // normalized, each sums to 1
    double sum_nu = 0.0, sum_omega = 0.0;
    double residual_nu = 0.0, residual_omega = 0.0; // ||A x - 1||_inf
    SolveMethod method = SolveMethod::Dense;
};

// Equilibrium trade profile: row i holds the shares trader i executes at
// each date (positive = sell), xi_i = xbar * v + (x_i - xbar) * w.
// Each row sums to x_i.
struct StrategyProfile {
    Matrix xi; // n rows, N+1 columns
};

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scalar context of the closed forms on an equidistant grid: the
// characteristic roots m+-, the minor/coefficient constants c+-, d+-,
// and evaluators for the principal minors delta_k and the backward
// sequence phi_k. delta/phi evaluators form raw powers and are meant
// for small-N diagnostics; the nu evaluation itself only uses ratio
// powers of magnitude <= 1.
struct ClosedFormContext {
    int N;
    double alpha, kappa, kappa_hat;
    double R;                  // sqrt of the characteristic discriminant
    double m_plus, m_minus;    // roots of m^2 - (1 + a^2(k-n) + k) m + a^2 k (k+1-n)
    double c_plus, c_minus;
    double d_plus, d_minus;
    double C1;                 // a(a+1) / (k + 1 - a(k - khat - 1))

    double delta(int k) const; // k in 0..N+1; delta_0 = 1, delta_{N+1} = det B
    double phi(int k) const;   // k in 2..N+2; phi_{N+2} = 1
};

ClosedFormContext make_closed_form_context(const ModelParams& p, const GridSpec& grid);

// Closed-form omega: omega_i = ((1-a) kt + a (a(kt-1)/kt)^{N+1-i}) /
// (kt (kt - a(kt-1))), kt = 2 theta + 1/2. In particular
// omega_{N+1} = 1/kt.
std::vector<double> omega_closed_form(const ModelParams& p, const GridSpec& grid);

// Closed-form nu. Uses the normalized-bracket representation with ratio
// powers throughout; the branch kappa = n-1 (theta = (n-1)/4) runs
// through its own closed form, and near-degenerate kappa falls back to
// the dense solver.
std::vector<double> nu_closed_form(const ModelParams& p, const GridSpec& grid);

EquilibriumVectors equilibrium_dense(const ModelParams& p, const GridSpec& grid);
// Arbitrary strictly increasing grids (dense only).
EquilibriumVectors equilibrium_dense_times(const ModelParams& p,
                                           const std::vector<double>& times);
EquilibriumVectors equilibrium_closed(const ModelParams& p, const GridSpec& grid);
EquilibriumVectors equilibrium_solve(const ModelParams& p, const GridSpec& grid,
                                     SolveMethod method);

// Same systems with gamma_theta replaced by the half-grid matrix H or J.
// No closed form exists here; always dense.
EquilibriumVectors solve_halfgrid(const ModelParams& p, const GridSpec& grid,
                                  HalfGridMode mode);

StrategyProfile assemble_profile(const ModelParams& p, const EquilibriumVectors& vec);

// Max elementwise gap between the closed-form and dense solutions,
// max over both nu and omega.
double solver_gap(const EquilibriumVectors& a, const EquilibriumVectors& b);

// |x|^k with the sign resolved by parity, safe for negative ratios.
double pow_signed(double x, long k);

} // namespace owg

#endif // OWG_SOLVER_HPP
