// src/model.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/model.hpp"

#include <cmath>

namespace owg {

std::vector<double> GridSpec::times() const {
    std::vector<double> t(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) t[static_cast<size_t>(k)] = time(k);
    return t;
}

const ModelParams& validate_params(const ModelParams& p) {
    if (p.n < 2) throw validation_error("n >= 2 required");
    if (!(p.rho > 0.0) || !std::isfinite(p.rho)) throw validation_error("rho > 0 required");
    if (!(p.T > 0.0) || !std::isfinite(p.T)) throw validation_error("T > 0 required");
    if (!(p.theta >= 0.0) || !std::isfinite(p.theta)) throw validation_error("theta >= 0 required");
    if (p.inventories.size() != static_cast<size_t>(p.n))
        throw validation_error("inventories must have length n");
    for (double xi : p.inventories)
        if (!std::isfinite(xi)) throw validation_error("inventories must be finite");
    return p;
}

GridSpec make_grid(int N, double T) {
    if (N < 1) throw validation_error("N >= 1 required");
    if (!(T > 0.0) || !std::isfinite(T)) throw validation_error("T > 0 required");
    return GridSpec{N, T};
}

GridIndex grid_index(double t, const GridSpec& grid) {
    if (!(t >= 0.0) || !(t <= grid.T))
        throw validation_error("t must lie in [0, T]");
    const double r = static_cast<double>(grid.N) * t / grid.T;
    const double nearest = std::round(r);
    int k;
    double eta;
    // Snap grid-aligned times before the ceiling so that eta_t = 0 there.
    if (std::abs(r - nearest) <= 1e-12 * std::max(1.0, std::abs(r))) {
        k = static_cast<int>(nearest);
        eta = 0.0;
    } else {
        k = static_cast<int>(std::ceil(r));
        eta = static_cast<double>(k) - r;
    }
    if (k < 0) k = 0;
    if (k > grid.N) k = grid.N;
    if (eta < 0.0 || eta >= 1.0) eta = 0.0;
    return GridIndex{k, eta};
}

DerivedScalars derived_scalars(const ModelParams& p, const GridSpec& grid) {
    DerivedScalars d;
    d.alpha = std::exp(-p.rho * grid.T / grid.N);
    d.kappa = 2.0 * p.theta + 0.5 * (p.n - 1);
    d.kappa_tilde = 2.0 * p.theta + 0.5;
    d.kappa_hat = static_cast<double>(p.n - 1);
    d.xbar = mean_inventory(p.inventories);
    return d;
}

double mean_inventory(const std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

} // namespace owg
