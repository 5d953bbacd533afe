// owg/asymptotics.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_ASYMPTOTICS_HPP
#define OWG_ASYMPTOTICS_HPP

#include <array>
#include <vector>

#include "owg/continuous.hpp"
#include "owg/costs.hpp"
#include "owg/model.hpp"
#include "owg/solver.hpp"

namespace owg {

// ---------------------------------------------------------------------------
// Discrete inventory paths V, W, X built from the normalized vectors.
// V_t = 1 - sum_{k=1}^{n_t} v_k; right-continuous step function with
// V_0 = 1 and V_T = v_{N+1}. W and the per-agent X are analogous.
// ---------------------------------------------------------------------------

struct InventorySample {
    double t;
    int n_t;
    double eta;
    double V, W;
    std::vector<double> X; // one entry per agent
};

struct InventoryPath {
    int N;
    double theta;
    std::vector<InventorySample> samples;
};

InventoryPath inventory_path(const ModelParams& p, const GridSpec& grid,
                             const EquilibriumVectors& vec,
                             const std::vector<double>& t_list);

// Cumulative sums of v and w; entry k holds the sum of the first k
// components, so V at index n_t is 1 - csum[n_t].
std::vector<double> prefix_sums(const std::vector<double>& x);

// Limit of W_T for theta >= 0: 1 / ((2 theta + 1/2)(rho T + 1)).
double terminal_W_limit(const ModelParams& p);

// ---------------------------------------------------------------------------
// Convergence-rate diagnostics for theta > 0: N |path - limit| over a
// grid refinement, with a boundedness verdict (last value <= 1.1 x the
// max over the first half of the N-list).
// ---------------------------------------------------------------------------

enum class RateTarget { WvsF, VvsG };

struct RateDiagnostic {
    double t;
    RateTarget target;
    std::vector<int> N_list;
    std::vector<double> errors; // |path - limit|
    std::vector<double> scaled; // N * error
    double sup_scaled;
    bool bounded;
};

RateDiagnostic rate_diagnostic(const ModelParams& p, double t, const std::vector<int>& N_list,
                               RateTarget target);

// ---------------------------------------------------------------------------
// theta = 0: oscillatory cluster points.
// ---------------------------------------------------------------------------

// Cluster points of the theta = 0 inventory subsequences at one time t,
// along with the underlying constants. Even-N subsequences of V cluster
// at beta+-, odd at gamma+-; W clusters at phi+- / psi+-.
struct ClusterPointSet {
    double t;
    double beta_plus, beta_minus;
    double gamma_plus, gamma_minus;
    double phi_plus, phi_minus;
    double psi_plus, psi_minus;
    double d1, d2;             // denominators, positive for n >= 2
    double a_plus, a_minus, b, c; // t-dependent numerator constants
};

ClusterPointSet cluster_points(const ModelParams& p, double t);

// Which cluster a sample with grid index n_t on an N-step grid tracks.
// V follows the parity of n_t; W follows the parity of N - n_t
// (+ branch when the parity is even). Validated empirically.
double predicted_V_cluster(const ClusterPointSet& cp, int N, int n_t);
double predicted_W_cluster(const ClusterPointSet& cp, int N, int n_t);

struct OscillationSample {
    int N;
    int n_t;
    double V, W;
    double V_cluster, W_cluster; // predicted values
    double V_nearest, W_nearest; // distance to the nearest admissible cluster
};

struct OscillationClassStat {
    bool N_even, nt_even;
    int count = 0;
    int last_N = -1;
    double last_V = 0.0, last_W = 0.0;
    double last_V_resid = 0.0, last_W_resid = 0.0; // to the predicted cluster
};

struct OscillationScan {
    double t;
    std::vector<OscillationSample> samples;
    std::array<OscillationClassStat, 4> classes; // indexed by 2*N_even + nt_even
};

OscillationScan oscillation_scan(const ModelParams& p, double t,
                                 const std::vector<int>& N_list);

// theta = 0 cost limits along even/odd N for agent i.
struct ThetaZeroCostLimits {
    double even_limit;
    double odd_limit;
};

ThetaZeroCostLimits theta_zero_cost_limits(const ModelParams& p, int i);

// ---------------------------------------------------------------------------
// Limits of the bilinear forms nu' gt nu, om'(khat gt - gt') nu,
// om' gt om: three constants for theta > 0, and even/odd pairs for
// theta = 0.
// ---------------------------------------------------------------------------

struct QuadformLimits {
    double nu_gt_nu;
    double om_mix_nu;
    double om_gt_om;
};

QuadformLimits quadform_limits_positive_theta(const ModelParams& p);
QuadformLimits quadform_limits_theta_zero(const ModelParams& p, bool even_N);

// Limits of the normalization sums.
double sum_nu_limit_positive_theta(const ModelParams& p);
double sum_omega_limit_positive_theta(const ModelParams& p);
double sum_nu_limit_theta_zero(const ModelParams& p, bool even_N);
double sum_omega_limit_theta_zero(const ModelParams& p, bool even_N);

struct QuadformCheckRow {
    int N;
    QuadformTerms value;
    QuadformLimits target;
    double rel_err_nu_gt_nu, rel_err_om_mix_nu, rel_err_om_gt_om;
};

std::vector<QuadformCheckRow> quadform_limit_check(const ModelParams& p,
                                                   const std::vector<int>& N_list);

// ---------------------------------------------------------------------------
// Half-grid convergence diagnostics. Sup-errors over an equispaced
// (mesh_points)-point t-mesh on [0,T]; sups against g exclude t = 0,
// where V = 1 for every N by construction.
// ---------------------------------------------------------------------------

struct HalfGridRow {
    int N;
    double sup_W_vs_f;        // over [0, T]
    double sup_V_vs_g;        // over (0, T]
    double sup_V_vs_g_first;  // over (0, T/2]
    double sup_V_vs_g_second; // over (T/2, T]
    double sup_W_vs_f_first;  // over [0, T/2]
    double sup_W_vs_f_second; // over (T/2, T]
};

struct HalfGridReport {
    HalfGridMode mode;
    int mesh_points;
    std::vector<HalfGridRow> rows;
};

HalfGridReport halfgrid_convergence(const ModelParams& p, const std::vector<int>& N_list,
                                    HalfGridMode mode, int mesh_points = 101);

} // namespace owg

#endif // OWG_ASYMPTOTICS_HPP
