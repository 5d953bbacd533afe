// tests/test_costs.cpp

#include <doctest.h>

#include <cmath>

#include "owg/audit.hpp"
#include "owg/costs.hpp"

using namespace owg;

namespace {

ModelParams params(int n, double rho, double T, double theta, std::vector<double> x = {}) {
    if (x.empty()) x.assign(static_cast<size_t>(n), 1.0);
    return ModelParams{n, rho, T, theta, std::move(x)};
}

} // namespace

TEST_CASE("cost of trivial profiles") {
    const ModelParams p = params(2, 1.0, 1.0, 0.1, {0.0, 0.0});
    const GridSpec g{4, 1.0};
    const KernelMatrices K = build_kernel(p, g);

    SUBCASE("zero profile costs nothing") {
        StrategyProfile prof{Matrix(2, 5)};
        CHECK(cost_of_profile(0, prof, K) == 0.0);
        CHECK(cost_of_profile(1, prof, K) == 0.0);
    }

    SUBCASE("silent opponent leaves only the own quadratic form") {
        StrategyProfile prof{Matrix(2, 5)};
        std::vector<double> xi = {0.4, 0.1, 0.2, 0.1, 0.2};
        for (int k = 0; k <= 4; ++k) prof.xi(0, k) = xi[static_cast<size_t>(k)];
        const double expect = 0.5 * bilinear(K.gamma_theta, xi, xi);
        CHECK(cost_of_profile(0, prof, K) == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("quadratic-form representation") {
    SUBCASE("matches the direct evaluation at a small equilibrium") {
        const ModelParams p = params(2, 1.0, 1.0, 0.1, {1.0, 1.0});
        const GridSpec g{4, 1.0};
        const KernelMatrices K = build_kernel(p, g);
        const EquilibriumVectors vec = equilibrium_dense(p, g);
        const StrategyProfile prof = assemble_profile(p, vec);
        for (int i = 0; i < 2; ++i)
            CHECK(cost_of_profile(i, prof, K) ==
                  doctest::Approx(cost_equilibrium_quadform(p, i, vec, K)).epsilon(1e-12));
    }

    SUBCASE("zero-mean inventories collapse to the omega terms") {
        const ModelParams p = params(2, 1.0, 1.0, 0.2, {2.0, -2.0});
        const GridSpec g{10, 1.0};
        const KernelMatrices K = build_kernel(p, g);
        const EquilibriumVectors vec = equilibrium_dense(p, g);
        const QuadformTerms q = quadform_terms(vec, K, 1.0);
        for (int i = 0; i < 2; ++i) {
            const double xi = p.inventories[static_cast<size_t>(i)];
            const double expect =
                0.5 * (xi * xi / vec.sum_omega -
                       (xi / vec.sum_omega) * (xi / vec.sum_omega) * q.om_gt_om);
            CHECK(cost_equilibrium_quadform(p, i, vec, K) ==
                  doctest::Approx(expect).epsilon(1e-13));
        }
    }

    SUBCASE("symmetric inventories kill the deviation terms") {
        const ModelParams p = params(3, 1.0, 1.0, 0.2, {1.5, 1.5, 1.5});
        const GridSpec g{10, 1.0};
        const KernelMatrices K = build_kernel(p, g);
        const EquilibriumVectors vec = equilibrium_dense(p, g);
        const QuadformTerms q = quadform_terms(vec, K, 2.0);
        const double xbar = 1.5;
        const double expect = 0.5 * (xbar * xbar / vec.sum_nu +
                                     2.0 * (xbar / vec.sum_nu) * (xbar / vec.sum_nu) * q.nu_gt_nu);
        for (int i = 0; i < 3; ++i)
            CHECK(cost_equilibrium_quadform(p, i, vec, K) ==
                  doctest::Approx(expect).epsilon(1e-13));
    }

    SUBCASE("agreement on an asymmetric five-trader instance") {
        const ModelParams p = params(5, 1.0, 1.0, 0.3, {3.0, 1.0, 0.0, -1.0, 2.0});
        const GridSpec g{60, 1.0};
        const KernelMatrices K = build_kernel(p, g);
        const EquilibriumVectors vec = equilibrium_dense(p, g);
        const StrategyProfile prof = assemble_profile(p, vec);
        for (int i = 0; i < 5; ++i) {
            const double direct = cost_of_profile(i, prof, K);
            const double quad = cost_equilibrium_quadform(p, i, vec, K);
            CHECK(std::abs(direct - quad) <= 1e-11 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("quadform terms against a brute-force summation oracle") {
    const ModelParams p = params(2, 1.0, 1.0, 0.0, {1.0, -1.0});
    const GridSpec g{4, 1.0};
    const EquilibriumVectors vec = equilibrium_dense(p, g);
    const KernelMatrices K = build_kernel(p, g);
    const QuadformTerms q = quadform_terms(vec, K, 1.0);

    // Independent O(N^2) loops over entries built from scratch.
    const double rho = 1.0;
    auto tilde = [&](int i, int j) {
        if (i < j) return 0.0;
        if (i == j) return 0.5;
        return std::exp(-rho * (g.time(i) - g.time(j)));
    };
    double nu_gt_nu = 0.0, om_gt_nu = 0.0, nu_gt_om = 0.0, om_gt_om = 0.0;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            nu_gt_nu += vec.nu[static_cast<size_t>(i)] * tilde(i, j) * vec.nu[static_cast<size_t>(j)];
            om_gt_nu += vec.omega[static_cast<size_t>(i)] * tilde(i, j) * vec.nu[static_cast<size_t>(j)];
            nu_gt_om += vec.nu[static_cast<size_t>(i)] * tilde(i, j) * vec.omega[static_cast<size_t>(j)];
            om_gt_om += vec.omega[static_cast<size_t>(i)] * tilde(i, j) * vec.omega[static_cast<size_t>(j)];
        }
    CHECK(q.nu_gt_nu == doctest::Approx(nu_gt_nu).epsilon(1e-13));
    CHECK(q.om_mix_nu == doctest::Approx(1.0 * om_gt_nu - nu_gt_om).epsilon(1e-13));
    CHECK(q.om_gt_om == doctest::Approx(om_gt_om).epsilon(1e-13));

    // Symmetric-part identity: nu' gt nu = 1/2 nu' gamma_zero nu.
    CHECK(q.nu_gt_nu ==
          doctest::Approx(0.5 * bilinear(K.gamma_zero, vec.nu, vec.nu)).epsilon(1e-13));

    // Fast kernel path agrees with the dense path.
    const QuadformTerms qf = quadform_terms_fast(p, g, vec);
    CHECK(qf.nu_gt_nu == doctest::Approx(q.nu_gt_nu).epsilon(1e-13));
    CHECK(qf.om_mix_nu == doctest::Approx(q.om_mix_nu).epsilon(1e-13));
    CHECK(qf.om_gt_om == doctest::Approx(q.om_gt_om).epsilon(1e-13));
}

TEST_CASE("cost splits") {
    const ModelParams p = params(3, 1.0, 1.0, 0.1, {1.0, 1.0, 1.0});
    const GridSpec g{40, 1.0};
    const KernelMatrices K = build_kernel(p, g);
    const StrategyProfile prof = assemble_profile(p, equilibrium_dense(p, g));

    SUBCASE("partition identity") {
        const CostBreakdown b = cost_split(p, 0, prof, K, 0.37);
        double inst = 0.0;
        for (int k = 0; k <= 40; ++k) inst += prof.xi(0, k) * prof.xi(0, k);
        inst *= p.theta;
        CHECK(b.inst_front + b.inst_back == doctest::Approx(inst).epsilon(1e-14));
        CHECK(b.impact + b.inst_front + b.inst_back == doctest::Approx(b.total).epsilon(1e-13));
        CHECK(b.split_index == 15); // ceil(0.37 * 40)
    }

    SUBCASE("theta=0 puts everything into impact") {
        const ModelParams p0 = params(3, 1.0, 1.0, 0.0, {1.0, 1.0, 1.0});
        const KernelMatrices K0 = build_kernel(p0, g);
        const StrategyProfile prof0 = assemble_profile(p0, equilibrium_dense(p0, g));
        const CostBreakdown b = cost_split(p0, 0, prof0, K0, 0.5);
        CHECK(b.inst_front == 0.0);
        CHECK(b.inst_back == 0.0);
        CHECK(b.impact == b.total);
    }

    SUBCASE("c outside (0,1) is rejected") {
        CHECK_THROWS_AS(cost_split(p, 0, prof, K, 0.0), validation_error);
        CHECK_THROWS_AS(cost_split(p, 0, prof, K, 1.0), validation_error);
    }
}

TEST_CASE("equilibrium profiles beat seeded feasible perturbations") {
    const ModelParams p = params(3, 1.0, 1.0, 0.1, {2.0, 0.0, 1.0});
    const GridSpec g{50, 1.0};
    const KernelMatrices K = build_kernel(p, g);
    const EquilibriumVectors vec = equilibrium_dense(p, g);
    const StrategyProfile prof = assemble_profile(p, vec);
    const double base = cost_of_profile(0, prof, K);

    Rng rng(42);
    double scale = 0.0;
    for (int k = 0; k <= 50; ++k) scale = std::max(scale, std::abs(prof.xi(0, k)));
    scale *= 0.1;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> z(51);
        double zsum = 0.0;
        for (double& v : z) {
            v = scale * rng.normal();
            zsum += v;
        }
        StrategyProfile pert = prof;
        for (int k = 0; k <= 50; ++k) pert.xi(0, k) += z[static_cast<size_t>(k)] - zsum / 51.0;
        CHECK(cost_of_profile(0, pert, K) >= base - 1e-10);
    }
}
