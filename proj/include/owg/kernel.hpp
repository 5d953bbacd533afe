// owg/kernel.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_KERNEL_HPP
#define OWG_KERNEL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "owg/linalg.hpp"
#include "owg/model.hpp"

namespace owg {

// Kernel matrices on a trading grid with N+1 dates:
//   gamma_theta(i,j) = exp(-rho|t_i - t_j|) + 2*theta*[i == j]
//   gamma_tilde(i,j) = 0 for i < j, 1/2 on the diagonal,
//                      exp(-rho(t_i - t_j)) for i > j
//   gamma_zero       = gamma_theta with theta = 0
// gamma_zero = gamma_tilde + gamma_tilde^T holds entrywise.
struct KernelMatrices {
    Matrix gamma_theta;
    Matrix gamma_tilde;
    Matrix gamma_zero;
};

// Half-grid variants: instantaneous costs charged only on the second
// (H) or first (J) half of the dates. Split index s = ceil((N+1)/2),
// counted 1-based: the bumped diagonal positions of H are s+1..N+1.
struct HalfGridMatrices {
    Matrix H; // gamma_zero + 2*theta on the second-half diagonal
    Matrix J; // gamma_zero + 2*theta on the first-half diagonal
    int split_index; // s, 1-based
};

enum class HalfGridMode { FirstHalf, SecondHalf };

inline constexpr int kDefaultMatrixCap = 20000;

KernelMatrices build_kernel(const ModelParams& p, const GridSpec& grid,
                            int cap = kDefaultMatrixCap);

// Escape hatch for arbitrary strictly increasing grids.
KernelMatrices build_kernel_times(const ModelParams& p, const std::vector<double>& times,
                                  int cap = kDefaultMatrixCap);

// Analytic tridiagonal inverse of gamma_zero on an equidistant grid:
// 1/(1-alpha^2) times the matrix with corner diagonal entries 1,
// interior diagonal 1+alpha^2, and off-diagonals -alpha.
Matrix inverse_gamma_zero(const ModelParams& p, const GridSpec& grid);
Matrix inverse_gamma_zero_times(const ModelParams& p, const std::vector<double>& times);

HalfGridMatrices build_halfgrid(const ModelParams& p, const GridSpec& grid,
                                int cap = kDefaultMatrixCap);

// Selects H (second-half mode) or J (first-half mode).
const Matrix& halfgrid_select(const HalfGridMatrices& hg, HalfGridMode mode);

// Row-major CSV dump, 17 significant digits.
void dump_matrix_csv(const Matrix& A, std::ostream& os);

// ---------------------------------------------------------------------------
// O(N) operations with the exponential kernel. These evaluate the same
// bilinear maps as the dense matrices, using the recursion
// p_i = e^{-rho(t_i - t_{i-1})}(p_{i-1} + x_{i-1}) for the one-sided sums.
// ---------------------------------------------------------------------------

// Per-step decay factors a_i = exp(-rho (t_i - t_{i-1})), i = 1..N.
std::vector<double> step_decay(const ModelParams& p, const GridSpec& grid);
std::vector<double> step_decay_times(const ModelParams& p, const std::vector<double>& times);

// y = gamma_theta x
std::vector<double> kernel_matvec_gamma_theta(const std::vector<double>& decay, double theta,
                                              const std::vector<double>& x);
// y = gamma_tilde x
std::vector<double> kernel_matvec_gamma_tilde(const std::vector<double>& decay,
                                              const std::vector<double>& x);
// x^T gamma_tilde y
double kernel_quadform_gamma_tilde(const std::vector<double>& decay,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y);
// x^T gamma_theta x
double kernel_quadform_gamma_theta(const std::vector<double>& decay, double theta,
                                   const std::vector<double>& x);

} // namespace owg

#endif // OWG_KERNEL_HPP
