// owg/model.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_MODEL_HPP
#define OWG_MODEL_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace owg {

// Economic parameters of one game instance. The transient-impact scale
// lambda of the decay kernel G(t) = lambda * exp(-rho t) is normalized
// to 1; all quantities can be rescaled accordingly.
struct ModelParams {
    int n = 2;                       // number of traders, n >= 2
    double rho = 1.0;                // impact decay rate, > 0 (1/time)
    double T = 1.0;                  // trading horizon, > 0
    double theta = 0.0;              // instantaneous cost coefficient, >= 0
    std::vector<double> inventories; // initial inventories x_1..x_n (shares)
};

// Equidistant trading grid t_k = k*T/N, k = 0..N.
struct GridSpec {
    int N = 1;      // number of steps; N+1 trading dates
    double T = 1.0; // horizon

    double time(int k) const { return static_cast<double>(k) * T / N; }
    std::vector<double> times() const;
};

// Scalars derived from (params, grid) that appear throughout the
// closed forms.
struct DerivedScalars {
    double alpha;       // exp(-rho*T/N), in (0,1)
    double kappa;       // 2*theta + (n-1)/2
    double kappa_tilde; // 2*theta + 1/2
    double kappa_hat;   // n - 1
    double xbar;        // mean inventory
};

// Grid index of calendar time t: n_t = ceil(N*t/T), together with the
// fractional offset eta_t = n_t - N*t/T in [0,1). Grid-aligned t is
// snapped before the ceiling with a 1e-12 relative tolerance so that
// eta_t = 0 exactly at grid points.
struct GridIndex {
    int k;      // n_t
    double eta; // eta_t
};

class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Returns p unchanged if all invariants hold, otherwise throws
// validation_error naming the violated one.
const ModelParams& validate_params(const ModelParams& p);

GridSpec make_grid(int N, double T);

GridIndex grid_index(double t, const GridSpec& grid);

DerivedScalars derived_scalars(const ModelParams& p, const GridSpec& grid);

double mean_inventory(const std::vector<double>& x);

} // namespace owg

#endif // OWG_MODEL_HPP
