// owg/continuous.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_CONTINUOUS_HPP
#define OWG_CONTINUOUS_HPP

#include "owg/model.hpp"

namespace owg {

// Continuous-time equilibrium inventory fractions and cost constants.
// The equilibrium exists for the boundary block-cost coefficients
// theta_0 = (n-1)/2 and theta_T = 1/2; trader i's inventory is
// X_t = f(t) (x_i - xbar) + g(t) xbar.

inline constexpr double kBlockCoeffT = 0.5;
inline double block_coeff_0(int n) { return 0.5 * (n - 1); }

// f(t) = (rho(T-t)+1)/(rho T+1) on [0,T) with terminal value f(T) = 0.
// left_limit requests the pre-jump value (at t = T this is 1/(rho T+1);
// at t = 0 it is 1).
double eval_f(double t, const ModelParams& p, bool left_limit = false);

// g is continuous on [0,T] with g(T) = 0; g(0-) = 1 while g(0) < 1, so
// left_limit only matters at t = 0.
double eval_g(double t, const ModelParams& p, bool left_limit = false);

double continuous_inventory(int i, double t, const ModelParams& p);

struct ContinuousCost {
    double impact; // transient-impact part
    double block0; // initial block cost
    double blockT; // terminal block cost
    double total;  // impact + block0 + blockT
};

ContinuousCost continuous_cost(int i, const ModelParams& p);

} // namespace owg

#endif // OWG_CONTINUOUS_HPP
