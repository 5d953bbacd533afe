// src/linalg.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/linalg.hpp"

#include <cmath>
#include <utility>

namespace owg {

Matrix Matrix::identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> matvec(const Matrix& A, const std::vector<double>& x) {
    if (A.cols() != static_cast<int>(x.size()))
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(static_cast<size_t>(A.rows()), 0.0);
    for (int i = 0; i < A.rows(); ++i) {
        const double* ai = A.row(i);
        double s = 0.0;
        for (int j = 0; j < A.cols(); ++j) s += ai[j] * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

double bilinear(const Matrix& A, const std::vector<double>& x, const std::vector<double>& y) {
    if (A.rows() != static_cast<int>(x.size()) || A.cols() != static_cast<int>(y.size()))
        throw std::invalid_argument("bilinear: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i) {
        const double* ai = A.row(i);
        double t = 0.0;
        for (int j = 0; j < A.cols(); ++j) t += ai[j] * y[static_cast<size_t>(j)];
        s += x[static_cast<size_t>(i)] * t;
    }
    return s;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix C(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i) {
        double* ci = C.row(i);
        for (int k = 0; k < A.cols(); ++k) {
            const double aik = A(i, k);
            const double* bk = B.row(k);
            for (int j = 0; j < B.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return C;
}

LuFactors lu_factor(Matrix A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("lu_factor: square matrix required");
    const int n = A.rows();
    std::vector<int> piv(static_cast<size_t>(n));
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (scale == 0.0) throw singular_matrix_error("lu_factor: zero matrix");

    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(A(i, k));
            if (v > best) { best = v; p = i; }
        }
        piv[static_cast<size_t>(k)] = p;
        if (best <= 1e-300 * scale)
            throw singular_matrix_error("lu_factor: singular to working precision");
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
        const double inv_pivot = 1.0 / A(k, k);
        const double* rowk = A.row(k);
        for (int i = k + 1; i < n; ++i) {
            double* rowi = A.row(i);
            const double lik = rowi[k] * inv_pivot;
            rowi[k] = lik;
            for (int j = k + 1; j < n; ++j) rowi[j] -= lik * rowk[j];
        }
    }
    return LuFactors{std::move(A), std::move(piv)};
}

std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b) {
    const int n = f.lu.rows();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("lu_solve: dimension mismatch");
    // Apply all row interchanges first; the stored L refers to the final
    // row ordering.
    for (int k = 0; k < n; ++k) {
        const int p = f.piv[static_cast<size_t>(k)];
        if (p != k) std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(p)]);
    }
    for (int k = 0; k < n; ++k) {
        const double bk = b[static_cast<size_t>(k)];
        if (bk != 0.0)
            for (int i = k + 1; i < n; ++i) b[static_cast<size_t>(i)] -= f.lu(i, k) * bk;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<size_t>(i)];
        const double* rowi = f.lu.row(i);
        for (int j = i + 1; j < n; ++j) s -= rowi[j] * b[static_cast<size_t>(j)];
        b[static_cast<size_t>(i)] = s / rowi[i];
    }
    return b;
}

DenseSolution solve_dense(const Matrix& A, const std::vector<double>& b) {
    LuFactors f = lu_factor(A);
    std::vector<double> x = lu_solve(f, b);
    double bnorm = 0.0, rnorm = 0.0;
    for (double v : b) bnorm = std::max(bnorm, std::abs(v));
    std::vector<double> Ax = matvec(A, x);
    for (size_t i = 0; i < Ax.size(); ++i)
        rnorm = std::max(rnorm, std::abs(Ax[i] - b[i]));
    return DenseSolution{std::move(x), bnorm > 0.0 ? rnorm / bnorm : rnorm};
}

Matrix invert(const Matrix& A) {
    const int n = A.rows();
    LuFactors f = lu_factor(A);
    Matrix inv(n, n);
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        e[static_cast<size_t>(j)] = 1.0;
        std::vector<double> col = lu_solve(f, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[static_cast<size_t>(i)];
        e[static_cast<size_t>(j)] = 0.0;
    }
    return inv;
}

bool positivity_check(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("positivity_check: square matrix required");
    const int n = A.rows();
    Matrix S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = 0.5 * (A(i, j) + A(j, i));
    // Cholesky of the symmetric part; success <=> positivity.
    for (int k = 0; k < n; ++k) {
        double d = S(k, k);
        for (int j = 0; j < k; ++j) d -= S(k, j) * S(k, j);
        if (!(d > 0.0)) return false;
        const double lkk = std::sqrt(d);
        S(k, k) = lkk;
        for (int i = k + 1; i < n; ++i) {
            double s = S(i, k);
            for (int j = 0; j < k; ++j) s -= S(i, j) * S(k, j);
            S(i, k) = s / lkk;
        }
    }
    return true;
}

double max_abs_diff(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j) - B(i, j)));
    return m;
}

} // namespace owg
