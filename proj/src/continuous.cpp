// src/continuous.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/continuous.hpp"

#include <cmath>

namespace owg {

namespace {

void check_time(double t, const ModelParams& p) {
    if (!(t >= 0.0) || !(t <= p.T)) throw validation_error("t must lie in [0, T]");
}

// All g/cost formulas evaluate exp(rho T (n+1)/(n-1)) directly; reject
// exponents past the 64-bit range.
void check_exponent(const ModelParams& p) {
    if (p.rho * p.T * (p.n + 1.0) / (p.n - 1.0) > 700.0)
        throw validation_error("rho*T*(n+1)/(n-1) too large (exp overflow)");
}

} // namespace

double eval_f(double t, const ModelParams& p, bool left_limit) {
    validate_params(p);
    check_time(t, p);
    if (t == p.T && !left_limit) return 0.0;
    return (p.rho * (p.T - t) + 1.0) / (p.rho * p.T + 1.0);
}

double eval_g(double t, const ModelParams& p, bool left_limit) {
    validate_params(p);
    check_time(t, p);
    check_exponent(p);
    if (t == 0.0 && left_limit) return 1.0;
    const double n = static_cast<double>(p.n);
    const double u = p.rho * (n + 1.0) / (n - 1.0);
    const double eT = std::exp(u * p.T);
    const double num = n * (p.rho * t + 1.0) * (n + 1.0) * eT + 2.0 * n * std::exp(u * t) - (n - 1.0);
    const double den = n * ((p.rho * p.T + 1.0) * (n + 1.0) + 2.0) * eT - (n - 1.0);
    return 1.0 - num / den;
}

double continuous_inventory(int i, double t, const ModelParams& p) {
    validate_params(p);
    if (i < 0 || i >= p.n) throw validation_error("agent index out of range");
    const double xbar = mean_inventory(p.inventories);
    return eval_f(t, p) * (p.inventories[static_cast<size_t>(i)] - xbar) + eval_g(t, p) * xbar;
}

ContinuousCost continuous_cost(int i, const ModelParams& p) {
    validate_params(p);
    check_exponent(p);
    if (i < 0 || i >= p.n) throw validation_error("agent index out of range");
    const double n = static_cast<double>(p.n);
    const double rT = p.rho * p.T;
    const double xbar = mean_inventory(p.inventories);
    const double dev = p.inventories[static_cast<size_t>(i)] - xbar;
    const double eT = std::exp(rT * (n + 1.0) / (n - 1.0));
    const double e2T = eT * eT;
    const double den = n * ((rT + 1.0) * (n + 1.0) + 2.0) * eT - (n - 1.0);

    ContinuousCost c;
    c.impact = n / (rT + 1.0) * xbar * dev +
               xbar * xbar * n * n * n * (n + 1.0) *
                   (((rT + 0.5) * (n + 1.0) + 3.0) * e2T -
                    2.0 * (n - 1.0) / (n * n) * (n * eT + 0.25)) /
                   (den * den);
    c.block0 = (n - 1.0) * (n + 1.0) * (n + 1.0) * (1.0 + n * eT) * (1.0 + n * eT) *
               xbar * xbar / (4.0 * den * den);
    c.blockT = dev * dev / (4.0 * (rT + 1.0) * (rT + 1.0));
    c.total = c.impact + c.block0 + c.blockT;
    return c;
}

} // namespace owg
