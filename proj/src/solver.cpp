// src/solver.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/solver.hpp"

#include <cmath>
#include <sstream>

namespace owg {

double pow_signed(double x, long k) {
    if (k == 0) return 1.0;
    if (x == 0.0) return 0.0;
    const double mag = std::pow(std::abs(x), static_cast<double>(k));
    return (x < 0.0 && (k & 1L)) ? -mag : mag;
}

ClosedFormContext make_closed_form_context(const ModelParams& p, const GridSpec& grid) {
    validate_params(p);
    ClosedFormContext c;
    c.N = grid.N;
    const double a = std::exp(-p.rho * grid.T / grid.N);
    const double n = static_cast<double>(p.n);
    const double kappa = 2.0 * p.theta + 0.5 * (n - 1.0);
    c.alpha = a;
    c.kappa = kappa;
    c.kappa_hat = n - 1.0;
    const double a2 = a * a;
    const double lambda = 1.0 + a2 * (kappa - n) + kappa;
    const double disc = lambda * lambda - 4.0 * a2 * kappa * (kappa + 1.0 - n);
    if (!(disc >= 0.0))
        throw numerical_error("closed form: negative characteristic discriminant");
    c.R = std::sqrt(disc);
    if (c.R <= 1e-300)
        throw numerical_error("closed form: vanishing characteristic discriminant");
    c.m_plus = 0.5 * (lambda + c.R);
    c.m_minus = 0.5 * (lambda - c.R);
    c.c_plus = (+(1.0 - a2 * (kappa + n) + kappa) + c.R) / (2.0 * c.R);
    c.c_minus = (-(1.0 - a2 * (kappa + n) + kappa) + c.R) / (2.0 * c.R);
    c.d_plus = (+(1.0 + (1.0 - a2) * kappa - a2 * (2.0 - n)) + c.R) / (2.0 * c.R);
    c.d_minus = (-(1.0 + (1.0 - a2) * kappa - a2 * (2.0 - n)) + c.R) / (2.0 * c.R);
    c.C1 = a * (a + 1.0) / (kappa + 1.0 - a * (kappa - c.kappa_hat - 1.0));
    return c;
}

double ClosedFormContext::delta(int k) const {
    if (k == 0) return 1.0;
    if (k <= N)
        return c_plus * pow_signed(m_plus, k) + c_minus * pow_signed(m_minus, k);
    // delta_{N+1} = (1 - a^2 + kappa) delta_N - a^2 kappa (kappa + 1 - n) delta_{N-1}
    const double a2 = alpha * alpha;
    return (1.0 - a2 + kappa) * delta(N) -
           a2 * kappa * (kappa - kappa_hat) * delta(N - 1);
}

double ClosedFormContext::phi(int k) const {
    return d_plus * pow_signed(m_plus, N + 2 - k) + d_minus * pow_signed(m_minus, N + 2 - k);
}

std::vector<double> omega_closed_form(const ModelParams& p, const GridSpec& grid) {
    validate_params(p);
    const int N = grid.N;
    const double a = std::exp(-p.rho * grid.T / N);
    const double kt = 2.0 * p.theta + 0.5;
    const double denom = kt * (kt - a * (kt - 1.0));
    if (!(denom > 0.0))
        throw numerical_error("omega closed form: degenerate denominator");
    const double ratio = a * (kt - 1.0) / kt; // |ratio| < 1 for theta >= 0
    std::vector<double> omega(static_cast<size_t>(N) + 1);
    // Powers ratio^{N+1-i} walked from the last component (exponent 0).
    double pw = 1.0;
    for (int i = N + 1; i >= 1; --i) {
        omega[static_cast<size_t>(i - 1)] = ((1.0 - a) * kt + a * pw) / denom;
        pw *= ratio;
    }
    return omega;
}

namespace {

// nu on the branch kappa = n - 1 (theta = (n-1)/4), where the general
// representation degenerates.
std::vector<double> nu_closed_form_kappa_nhat(const ModelParams& p, const GridSpec& grid) {
    const int N = grid.N;
    const double a = std::exp(-p.rho * grid.T / N);
    const double n = static_cast<double>(p.n);
    const double theta_ratio = a * (n - 1.0) / (n - a * a); // in (0,1)
    std::vector<double> nu(static_cast<size_t>(N) + 1);
    const double pref = 1.0 / (n + a);
    nu[0] = pref * (1.0 + (n - a * a) / (n * (n - 1.0)) *
                              pow_signed(theta_ratio, N + 1));
    // nu_i for i = 2..N+1; powers theta_ratio^{N+2-i} walked downward.
    double pw = 1.0; // theta_ratio^{N+2-i} at i = N+2
    for (int i = N + 1; i >= 2; --i) {
        pw *= theta_ratio;
        nu[static_cast<size_t>(i - 1)] =
            pref * (1.0 - a + pw * (1.0 - a * a) / (n - 1.0));
    }
    return nu;
}

std::vector<double> nu_closed_form_general(const ModelParams& p, const GridSpec& grid) {
    const ClosedFormContext c = make_closed_form_context(p, grid);
    const int N = c.N;
    const double a = c.alpha;
    const double kappa = c.kappa;
    const double khat = c.kappa_hat;
    const double n = static_cast<double>(p.n);
    const double a2 = a * a;
    const double akh = a * (kappa - khat);

    // All powers below are of ratios with magnitude < 1:
    //   q   = m-/m+,  rk = a*kappa/m+,  rkh = a*(kappa-khat)/m+.
    const double q = c.m_minus / c.m_plus;
    const double rk = a * kappa / c.m_plus;
    const double rkh = akh / c.m_plus;

    // delta_{N+1} / m+^N
    const double D = c.c_plus * (c.m_plus - a2 * (kappa - khat)) +
                     c.c_minus * pow_signed(q, N) * (c.m_minus - a2 * (kappa - khat));
    if (std::abs(D) < 1e-250) {
        std::ostringstream msg;
        msg << "nu closed form: ill-conditioned normalization (n=" << p.n
            << ", theta=" << p.theta << ", rho*T=" << p.rho * grid.T << ", N=" << N << ")";
        throw numerical_error(msg.str());
    }
    const double S = 1.0 / D;

    std::vector<double> powq(static_cast<size_t>(N) + 2), powrk(powq.size()), powrkh(powq.size());
    powq[0] = powrk[0] = powrkh[0] = 1.0;
    for (size_t j = 1; j < powq.size(); ++j) {
        powq[j] = powq[j - 1] * q;
        powrk[j] = powrk[j - 1] * rk;
        powrkh[j] = powrkh[j - 1] * rkh;
    }

    const double Bp = (1.0 - a) * S;             // [m+]^N
    const double Bm = (1.0 - a) * powq[static_cast<size_t>(N)] * S;  // [m-]^N
    const double Bk = (1.0 - a) * powrk[static_cast<size_t>(N)] * S; // a^N [kappa]^N
    const double Bkh = (1.0 - a) * powrkh[static_cast<size_t>(N)] * S;

    std::vector<double> nu(static_cast<size_t>(N) + 1);
    nu[0] = c.d_plus * (c.m_plus - a2 * kappa) / (c.m_plus - a * kappa) * Bp +
            c.d_minus * (c.m_minus - a2 * kappa) / (c.m_minus - a * kappa) * Bm +
            c.C1 * Bk;
    nu[static_cast<size_t>(N)] =
        c.c_plus * (c.m_plus - a2 * (kappa - khat)) / (c.m_plus - akh) * Bp +
        c.c_minus * (c.m_minus - a2 * (kappa - khat)) / (c.m_minus - akh) * Bm +
        n * c.C1 * Bkh;

    const double Ep = c.c_plus * c.d_plus *
                      (akh / (c.m_plus - akh) + c.m_plus / (c.m_plus - a * kappa));
    const double Em = c.c_minus * c.d_minus *
                      (akh / (c.m_minus - akh) + c.m_minus / (c.m_minus - a * kappa));
    const double T1 = (1.0 - a) * (Ep * Bp + Em * Bm);
    const double g2 = n * c.C1 * (1.0 - a) * S;
    const double g3 = c.C1 * (1.0 - a) * S;
    for (int i = 2; i <= N; ++i) {
        const double t2 = g2 * powrkh[static_cast<size_t>(i - 1)] *
                          (c.d_plus + c.d_minus * powq[static_cast<size_t>(N + 1 - i)]);
        const double t3 = g3 * powrk[static_cast<size_t>(N + 1 - i)] *
                          (c.c_plus + c.c_minus * powq[static_cast<size_t>(i - 1)]);
        nu[static_cast<size_t>(i - 1)] = T1 + t2 + t3;
    }
    return nu;
}

std::vector<double> ones(size_t m) { return std::vector<double>(m, 1.0); }

EquilibriumVectors finalize(std::vector<double> nu, std::vector<double> omega,
                            double res_nu, double res_omega, SolveMethod method) {
    EquilibriumVectors e;
    e.nu = std::move(nu);
    e.omega = std::move(omega);
    e.method = method;
    e.residual_nu = res_nu;
    e.residual_omega = res_omega;
    for (double x : e.nu) e.sum_nu += x;
    for (double x : e.omega) e.sum_omega += x;
    if (e.sum_nu == 0.0 || e.sum_omega == 0.0)
        throw numerical_error("equilibrium vectors: zero normalization sum");
    e.v.resize(e.nu.size());
    e.w.resize(e.omega.size());
    for (size_t i = 0; i < e.nu.size(); ++i) e.v[i] = e.nu[i] / e.sum_nu;
    for (size_t i = 0; i < e.omega.size(); ++i) e.w[i] = e.omega[i] / e.sum_omega;
    return e;
}

double kernel_residual(const ModelParams& p, const std::vector<double>& decay,
                       const std::vector<double>& x, double tilde_coeff) {
    // ||(gamma_theta + tilde_coeff * gamma_tilde) x - 1||_inf
    std::vector<double> y = kernel_matvec_gamma_theta(decay, p.theta, x);
    std::vector<double> z = kernel_matvec_gamma_tilde(decay, x);
    double r = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        r = std::max(r, std::abs(y[i] + tilde_coeff * z[i] - 1.0));
    return r;
}

} // namespace

std::vector<double> nu_closed_form(const ModelParams& p, const GridSpec& grid) {
    validate_params(p);
    const double kappa = 2.0 * p.theta + 0.5 * (p.n - 1);
    const double khat = static_cast<double>(p.n - 1);
    const double dist = std::abs(kappa - khat);
    const double scale = std::max(1.0, kappa);
    if (dist <= 1e-9 * scale) return nu_closed_form_kappa_nhat(p, grid);
    if (dist <= 1e-6 * scale) {
        // Near-degenerate: the general denominators lose precision.
        KernelMatrices K = build_kernel(p, grid);
        Matrix A = K.gamma_theta;
        for (int i = 0; i <= grid.N; ++i)
            for (int j = 0; j <= grid.N; ++j) A(i, j) += (p.n - 1) * K.gamma_tilde(i, j);
        return solve_dense(A, ones(static_cast<size_t>(grid.N) + 1)).x;
    }
    return nu_closed_form_general(p, grid);
}

EquilibriumVectors equilibrium_dense(const ModelParams& p, const GridSpec& grid) {
    return equilibrium_dense_times(p, grid.times());
}

EquilibriumVectors equilibrium_dense_times(const ModelParams& p,
                                           const std::vector<double>& times) {
    KernelMatrices K = build_kernel_times(p, times);
    const int m = K.gamma_theta.rows();
    Matrix Anu = K.gamma_theta, Aom = K.gamma_theta;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Anu(i, j) += (p.n - 1) * K.gamma_tilde(i, j);
            Aom(i, j) -= K.gamma_tilde(i, j);
        }
    DenseSolution snu = solve_dense(Anu, ones(static_cast<size_t>(m)));
    DenseSolution som = solve_dense(Aom, ones(static_cast<size_t>(m)));
    return finalize(std::move(snu.x), std::move(som.x), snu.rel_residual, som.rel_residual,
                    SolveMethod::Dense);
}

EquilibriumVectors equilibrium_closed(const ModelParams& p, const GridSpec& grid) {
    std::vector<double> nu = nu_closed_form(p, grid);
    std::vector<double> omega = omega_closed_form(p, grid);
    const std::vector<double> decay = step_decay(p, grid);
    const double rn = kernel_residual(p, decay, nu, static_cast<double>(p.n - 1));
    const double ro = kernel_residual(p, decay, omega, -1.0);
    return finalize(std::move(nu), std::move(omega), rn, ro, SolveMethod::ClosedForm);
}

EquilibriumVectors equilibrium_solve(const ModelParams& p, const GridSpec& grid,
                                     SolveMethod method) {
    return method == SolveMethod::Dense ? equilibrium_dense(p, grid)
                                        : equilibrium_closed(p, grid);
}

EquilibriumVectors solve_halfgrid(const ModelParams& p, const GridSpec& grid,
                                  HalfGridMode mode) {
    HalfGridMatrices hg = build_halfgrid(p, grid);
    KernelMatrices K = build_kernel(p, grid);
    const Matrix& base = halfgrid_select(hg, mode);
    const int m = base.rows();
    Matrix Anu = base, Aom = base;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Anu(i, j) += (p.n - 1) * K.gamma_tilde(i, j);
            Aom(i, j) -= K.gamma_tilde(i, j);
        }
    DenseSolution snu = solve_dense(Anu, ones(static_cast<size_t>(m)));
    DenseSolution som = solve_dense(Aom, ones(static_cast<size_t>(m)));
    return finalize(std::move(snu.x), std::move(som.x), snu.rel_residual, som.rel_residual,
                    SolveMethod::Dense);
}

StrategyProfile assemble_profile(const ModelParams& p, const EquilibriumVectors& vec) {
    const int m = static_cast<int>(vec.v.size());
    const double xbar = mean_inventory(p.inventories);
    StrategyProfile prof{Matrix(p.n, m)};
    for (int i = 0; i < p.n; ++i) {
        const double dev = p.inventories[static_cast<size_t>(i)] - xbar;
        double* row = prof.xi.row(i);
        for (int k = 0; k < m; ++k)
            row[k] = xbar * vec.v[static_cast<size_t>(k)] + dev * vec.w[static_cast<size_t>(k)];
    }
    return prof;
}

double solver_gap(const EquilibriumVectors& a, const EquilibriumVectors& b) {
    if (a.nu.size() != b.nu.size() || a.omega.size() != b.omega.size())
        throw std::invalid_argument("solver_gap: dimension mismatch");
    double g = 0.0;
    for (size_t i = 0; i < a.nu.size(); ++i)
        g = std::max(g, std::abs(a.nu[i] - b.nu[i]));
    for (size_t i = 0; i < a.omega.size(); ++i)
        g = std::max(g, std::abs(a.omega[i] - b.omega[i]));
    return g;
}

} // namespace owg
