// src/kernel.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace owg {

namespace {

void check_cap(size_t dates, int cap) {
    if (dates > static_cast<size_t>(cap) + 1)
        throw std::length_error("kernel matrices: N exceeds configured cap");
}

void check_times(const std::vector<double>& times) {
    if (times.size() < 2) throw validation_error("times: at least two dates required");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw validation_error("times must be strictly increasing");
}

KernelMatrices build_from_times(const ModelParams& p, const std::vector<double>& times) {
    const int m = static_cast<int>(times.size());
    KernelMatrices K{Matrix(m, m), Matrix(m, m), Matrix(m, m)};
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double g = std::exp(-p.rho * std::abs(times[static_cast<size_t>(i)] -
                                                        times[static_cast<size_t>(j)]));
            K.gamma_zero(i, j) = g;
            K.gamma_theta(i, j) = g + (i == j ? 2.0 * p.theta : 0.0);
            if (i > j) K.gamma_tilde(i, j) = g;
            else if (i == j) K.gamma_tilde(i, j) = 0.5;
        }
    }
    return K;
}

} // namespace

KernelMatrices build_kernel(const ModelParams& p, const GridSpec& grid, int cap) {
    validate_params(p);
    check_cap(static_cast<size_t>(grid.N) + 1, cap);
    return build_from_times(p, grid.times());
}

KernelMatrices build_kernel_times(const ModelParams& p, const std::vector<double>& times,
                                  int cap) {
    validate_params(p);
    check_times(times);
    check_cap(times.size(), cap);
    return build_from_times(p, times);
}

Matrix inverse_gamma_zero(const ModelParams& p, const GridSpec& grid) {
    const int m = grid.N + 1;
    const double alpha = std::exp(-p.rho * grid.T / grid.N);
    const double s = 1.0 / (1.0 - alpha * alpha);
    Matrix inv(m, m);
    for (int i = 0; i < m; ++i) {
        inv(i, i) = (i == 0 || i == m - 1) ? s : s * (1.0 + alpha * alpha);
        if (i + 1 < m) {
            inv(i, i + 1) = -s * alpha;
            inv(i + 1, i) = -s * alpha;
        }
    }
    return inv;
}

Matrix inverse_gamma_zero_times(const ModelParams& p, const std::vector<double>& times) {
    check_times(times);
    const size_t m = times.size();
    const double h = times[1] - times[0];
    for (size_t i = 1; i + 1 < m; ++i) {
        const double hi = times[i + 1] - times[i];
        if (std::abs(hi - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw validation_error("inverse_gamma_zero requires an equidistant grid");
    }
    GridSpec g{static_cast<int>(m) - 1, times.back() - times.front()};
    return inverse_gamma_zero(p, g);
}

HalfGridMatrices build_halfgrid(const ModelParams& p, const GridSpec& grid, int cap) {
    validate_params(p);
    if (grid.N < 2) throw validation_error("half-grid matrices require N >= 2");
    check_cap(static_cast<size_t>(grid.N) + 1, cap);
    KernelMatrices K = build_kernel(p, grid, cap);
    const int m = grid.N + 1;
    const int s = (m + 1) / 2; // ceil((N+1)/2), 1-based split index
    HalfGridMatrices hg{K.gamma_zero, K.gamma_zero, s};
    for (int i = 0; i < m; ++i) {
        if (i + 1 > s) hg.H(i, i) += 2.0 * p.theta; // positions s+1..N+1
        else hg.J(i, i) += 2.0 * p.theta;           // positions 1..s
    }
    return hg;
}

const Matrix& halfgrid_select(const HalfGridMatrices& hg, HalfGridMode mode) {
    return mode == HalfGridMode::SecondHalf ? hg.H : hg.J;
}

void dump_matrix_csv(const Matrix& A, std::ostream& os) {
    char buf[40];
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", A(i, j));
            if (j) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

std::vector<double> step_decay(const ModelParams& p, const GridSpec& grid) {
    std::vector<double> a(static_cast<size_t>(grid.N), std::exp(-p.rho * grid.T / grid.N));
    return a;
}

std::vector<double> step_decay_times(const ModelParams& p, const std::vector<double>& times) {
    check_times(times);
    std::vector<double> a(times.size() - 1);
    for (size_t i = 1; i < times.size(); ++i)
        a[i - 1] = std::exp(-p.rho * (times[i] - times[i - 1]));
    return a;
}

// Forward sums f_i = sum_{j<i} e^{-rho(t_i-t_j)} x_j and backward sums
// b_i = sum_{j>i} e^{-rho(t_j-t_i)} x_j.
static void one_sided_sums(const std::vector<double>& decay, const std::vector<double>& x,
                           std::vector<double>& fwd, std::vector<double>& bwd) {
    const size_t m = x.size();
    fwd.assign(m, 0.0);
    bwd.assign(m, 0.0);
    for (size_t i = 1; i < m; ++i) fwd[i] = decay[i - 1] * (fwd[i - 1] + x[i - 1]);
    for (size_t i = m - 1; i-- > 0;) bwd[i] = decay[i] * (bwd[i + 1] + x[i + 1]);
}

std::vector<double> kernel_matvec_gamma_theta(const std::vector<double>& decay, double theta,
                                              const std::vector<double>& x) {
    std::vector<double> fwd, bwd, y(x.size());
    one_sided_sums(decay, x, fwd, bwd);
    for (size_t i = 0; i < x.size(); ++i)
        y[i] = fwd[i] + bwd[i] + (1.0 + 2.0 * theta) * x[i];
    return y;
}

std::vector<double> kernel_matvec_gamma_tilde(const std::vector<double>& decay,
                                              const std::vector<double>& x) {
    std::vector<double> fwd, bwd, y(x.size());
    one_sided_sums(decay, x, fwd, bwd);
    for (size_t i = 0; i < x.size(); ++i) y[i] = fwd[i] + 0.5 * x[i];
    return y;
}

double kernel_quadform_gamma_tilde(const std::vector<double>& decay,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("quadform: dimension mismatch");
    std::vector<double> fwd, bwd;
    one_sided_sums(decay, y, fwd, bwd);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * (fwd[i] + 0.5 * y[i]);
    return s;
}

double kernel_quadform_gamma_theta(const std::vector<double>& decay, double theta,
                                   const std::vector<double>& x) {
    std::vector<double> fwd, bwd;
    one_sided_sums(decay, x, fwd, bwd);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i] * (fwd[i] + bwd[i] + (1.0 + 2.0 * theta) * x[i]);
    return s;
}

} // namespace owg
