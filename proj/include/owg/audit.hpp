// owg/audit.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_AUDIT_HPP
#define OWG_AUDIT_HPP

#include <cstdint>
#include <vector>

#include "owg/model.hpp"
#include "owg/solver.hpp"

namespace owg {

// Deterministic generator (splitmix64 + Box-Muller); identical streams
// on every platform, so audit outputs are reproducible byte for byte.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next_u64();
    double uniform01(); // in (0,1)
    double normal();

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct AuditThresholds {
    double kkt_spread = 1e-9;
    double residual = 1e-10;
    double margin = -1e-10;
    double solver_gap = 1e-9;
};

struct KktAudit {
    std::vector<double> multipliers;  // recovered alpha_i (stationarity means)
    std::vector<double> spreads;      // per-agent relative spreads
    double max_spread;
    double aggregation_residual;      // ||(gt + (n-1) gtil) sum_j xi_j - (sum_j alpha_j) 1||_inf
};

struct ProbeResult {
    double margin;                 // min over agents and trials of cost(eta) - cost(xi)
    double identity_residual_max;  // max |dcost - 0.5 d' gamma_theta d|
    int trials;
    uint64_t seed;
};

struct AuditReport {
    KktAudit kkt;
    double residual_nu, residual_omega;
    ProbeResult probe;
    double solver_gap;          // closed form vs dense; negative when not applicable
    bool solver_gap_applicable;
    bool pass;
    AuditThresholds thresholds;
};

// Stationarity certificate: for each agent the vector
// gamma_theta xi_i + gamma_tilde sum_{j!=i} xi_j must be constant; the
// report carries the per-agent relative spread (max-min over components
// divided by max(1, |mean|)) and the recovered multipliers.
KktAudit kkt_audit(const ModelParams& p, const GridSpec& grid, const StrategyProfile& profile);

// Seeded feasible perturbations eta = xi_i + z - mean(z) 1 with
// z ~ N(0, (0.1 ||xi_i||_inf)^2): cost differences must be nonnegative
// at an equilibrium and must match 0.5 d' gamma_theta d.
ProbeResult best_response_probe(const ModelParams& p, const GridSpec& grid,
                                const StrategyProfile& profile, int trials, uint64_t seed);

AuditReport full_audit(const ModelParams& p, const GridSpec& grid, int trials = 100,
                       uint64_t seed = 42, const AuditThresholds& thr = AuditThresholds{});

// Negative control: returns the profile with two entries of the first
// row swapped.
StrategyProfile corrupt_profile(StrategyProfile profile);

AuditReport full_audit_corrupted(const ModelParams& p, const GridSpec& grid, int trials = 100,
                                 uint64_t seed = 42,
                                 const AuditThresholds& thr = AuditThresholds{});

} // namespace owg

#endif // OWG_AUDIT_HPP
