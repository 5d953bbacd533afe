// owg/linalg.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_LINALG_HPP
#define OWG_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace owg {

// Dense row-major matrix of doubles. Kept deliberately small: the
// library only needs square systems of desk-scale size.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

    const std::vector<double>& data() const { return a_; }

    Matrix transpose() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

class singular_matrix_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> matvec(const Matrix& A, const std::vector<double>& x);

// x^T A y
double bilinear(const Matrix& A, const std::vector<double>& x, const std::vector<double>& y);

Matrix matmul(const Matrix& A, const Matrix& B);

// In-place LU factorization with partial pivoting. Throws
// singular_matrix_error when a pivot is zero to working precision.
struct LuFactors {
    Matrix lu;
    std::vector<int> piv;
};

LuFactors lu_factor(Matrix A);

std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b);

// Solves A x = b and reports the relative residual
// ||A x - b||_inf / ||b||_inf of the computed solution.
struct DenseSolution {
    std::vector<double> x;
    double rel_residual;
};

DenseSolution solve_dense(const Matrix& A, const std::vector<double>& b);

// Dense inverse via LU; used only by tests and small oracles.
Matrix invert(const Matrix& A);

// True iff the symmetric part (A + A^T)/2 admits a Cholesky
// factorization, i.e. x^T A x > 0 for all x != 0.
bool positivity_check(const Matrix& A);

double max_abs_diff(const Matrix& A, const Matrix& B);

} // namespace owg

#endif // OWG_LINALG_HPP
