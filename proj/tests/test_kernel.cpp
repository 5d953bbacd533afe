// tests/test_kernel.cpp

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "owg/kernel.hpp"

using namespace owg;

namespace {

ModelParams params(int n, double rho, double T, double theta) {
    return ModelParams{n, rho, T, theta, std::vector<double>(static_cast<size_t>(n), 1.0)};
}

} // namespace

TEST_CASE("kernel entries at N=1") {
    const KernelMatrices K0 = build_kernel(params(2, 1.0, 1.0, 0.0), GridSpec{1, 1.0});
    CHECK(K0.gamma_zero(0, 0) == 1.0);
    CHECK(K0.gamma_zero(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-16));
    CHECK(K0.gamma_zero(1, 0) == K0.gamma_zero(0, 1));

    const KernelMatrices K = build_kernel(params(2, 1.0, 1.0, 0.5), GridSpec{1, 1.0});
    CHECK(K.gamma_theta(0, 0) == 2.0);
    CHECK(K.gamma_theta(1, 1) == 2.0);
    CHECK(K.gamma_theta(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-16));
}

TEST_CASE("gamma_tilde at N=2 matches hand substitution") {
    const KernelMatrices K = build_kernel(params(2, 1.0, 1.0, 0.3), GridSpec{2, 1.0});
    const double e_half = std::exp(-0.5), e_one = std::exp(-1.0);
    CHECK(K.gamma_tilde(0, 0) == 0.5);
    CHECK(K.gamma_tilde(0, 1) == 0.0);
    CHECK(K.gamma_tilde(0, 2) == 0.0);
    CHECK(K.gamma_tilde(1, 0) == doctest::Approx(e_half).epsilon(1e-16));
    CHECK(K.gamma_tilde(1, 1) == 0.5);
    CHECK(K.gamma_tilde(2, 0) == doctest::Approx(e_one).epsilon(1e-16));
    CHECK(K.gamma_tilde(2, 1) == doctest::Approx(e_half).epsilon(1e-16));
    CHECK(K.gamma_tilde(2, 2) == 0.5);
}

TEST_CASE("symmetry and the tilde decomposition hold exactly") {
    const KernelMatrices K = build_kernel(params(3, 0.7, 2.0, 0.2), GridSpec{9, 2.0});
    const int m = K.gamma_theta.rows();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CHECK(K.gamma_theta(i, j) == K.gamma_theta(j, i));
            CHECK(K.gamma_zero(i, j) == K.gamma_tilde(i, j) + K.gamma_tilde(j, i));
        }
}

TEST_CASE("analytic inverse of gamma_zero") {
    const ModelParams p = params(2, 1.0, 1.0, 0.0);

    SUBCASE("N=1 closed form") {
        const Matrix inv = inverse_gamma_zero(p, GridSpec{1, 1.0});
        const double a = std::exp(-1.0);
        const double s = 1.0 / (1.0 - a * a);
        CHECK(inv(0, 0) == doctest::Approx(s).epsilon(1e-15));
        CHECK(inv(0, 1) == doctest::Approx(-s * a).epsilon(1e-15));
        CHECK(inv(1, 1) == doctest::Approx(s).epsilon(1e-15));
    }

    SUBCASE("product check and dense-inversion oracle at N=50") {
        const GridSpec g{50, 1.0};
        const KernelMatrices K = build_kernel(p, g);
        const Matrix inv = inverse_gamma_zero(p, g);
        CHECK(max_abs_diff(matmul(K.gamma_zero, inv), Matrix::identity(51)) <= 1e-12);
        CHECK(max_abs_diff(inv, invert(K.gamma_zero)) <= 1e-10);
    }

    SUBCASE("(1-a^2) Gamma^-1 1 has the corner/interior pattern") {
        const GridSpec g{6, 1.0};
        const double a = std::exp(-1.0 / 6.0);
        const Matrix inv = inverse_gamma_zero(p, g);
        const std::vector<double> y = matvec(inv, std::vector<double>(7, 1.0));
        for (int i = 0; i < 7; ++i) {
            const double expected = (i == 0 || i == 6) ? (1.0 - a) : (1.0 - a) * (1.0 - a);
            CHECK((1.0 - a * a) * y[static_cast<size_t>(i)] ==
                  doctest::Approx(expected).epsilon(1e-13));
        }
    }

    SUBCASE("non-equidistant grid is rejected") {
        CHECK_THROWS_AS(inverse_gamma_zero_times(p, {0.0, 0.3, 1.0}), validation_error);
        CHECK_NOTHROW(inverse_gamma_zero_times(p, {0.0, 0.5, 1.0}));
    }
}

TEST_CASE("positivity check") {
    const KernelMatrices K = build_kernel(params(3, 1.0, 1.0, 0.1), GridSpec{10, 1.0});
    CHECK(positivity_check(K.gamma_theta));

    const KernelMatrices K5 = build_kernel(params(5, 1.0, 1.0, 0.0), GridSpec{10, 1.0});
    Matrix A = K5.gamma_theta;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) A(i, j) -= K5.gamma_tilde(i, j);
    CHECK(positivity_check(A));

    Matrix negI = Matrix::identity(4);
    for (int i = 0; i < 4; ++i) negI(i, i) = -1.0;
    CHECK_FALSE(positivity_check(negI));
}

TEST_CASE("positivity across the parameter sweep") {
    for (int n : {2, 3, 5, 10})
        for (double theta : {0.0, 0.1, 1.0})
            for (int N : {2, 3, 5, 10, 25, 50, 100, 200}) {
                const ModelParams p = params(n, 1.0, 1.0, theta);
                const GridSpec g{N, 1.0};
                const KernelMatrices K = build_kernel(p, g);
                const int m = N + 1;
                Matrix Anu = K.gamma_theta, Aom = K.gamma_theta;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        Anu(i, j) += (n - 1) * K.gamma_tilde(i, j);
                        Aom(i, j) -= K.gamma_tilde(i, j);
                    }
                CHECK(positivity_check(K.gamma_theta));
                CHECK(positivity_check(Anu));
                CHECK(positivity_check(Aom));
                if (N >= 2) {
                    const HalfGridMatrices hg = build_halfgrid(p, g);
                    for (const Matrix* base : {&hg.H, &hg.J}) {
                        Matrix Hnu = *base, Hom = *base;
                        for (int i = 0; i < m; ++i)
                            for (int j = 0; j < m; ++j) {
                                Hnu(i, j) += (n - 1) * K.gamma_tilde(i, j);
                                Hom(i, j) -= K.gamma_tilde(i, j);
                            }
                        CHECK(positivity_check(Hnu));
                        CHECK(positivity_check(Hom));
                    }
                }
            }
}

TEST_CASE("half-grid split") {
    const ModelParams p = params(2, 1.0, 1.0, 1.0);

    SUBCASE("N=3: bumps sit on 1-based positions 3 and 4") {
        const HalfGridMatrices hg = build_halfgrid(p, GridSpec{3, 1.0});
        CHECK(hg.split_index == 2);
        const KernelMatrices K = build_kernel(p, GridSpec{3, 1.0});
        for (int i = 0; i < 4; ++i) {
            const double bumpH = hg.H(i, i) - K.gamma_zero(i, i);
            const double bumpJ = hg.J(i, i) - K.gamma_zero(i, i);
            CHECK(bumpH == (i >= 2 ? 2.0 : 0.0));
            CHECK(bumpJ == (i >= 2 ? 0.0 : 2.0));
        }
    }

    SUBCASE("theta=0 collapses to gamma_zero") {
        const ModelParams p0 = params(2, 1.0, 1.0, 0.0);
        const HalfGridMatrices hg = build_halfgrid(p0, GridSpec{4, 1.0});
        const KernelMatrices K = build_kernel(p0, GridSpec{4, 1.0});
        CHECK(max_abs_diff(hg.H, K.gamma_zero) == 0.0);
        CHECK(max_abs_diff(hg.J, K.gamma_zero) == 0.0);
    }

    SUBCASE("H + J = 2 gamma_zero + 2 theta I") {
        const ModelParams p3 = params(3, 1.0, 1.0, 0.3);
        const HalfGridMatrices hg = build_halfgrid(p3, GridSpec{5, 1.0});
        const KernelMatrices K = build_kernel(p3, GridSpec{5, 1.0});
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const double expect = 2.0 * K.gamma_zero(i, j) + (i == j ? 2.0 * 0.3 : 0.0);
                CHECK(hg.H(i, j) + hg.J(i, j) == doctest::Approx(expect).epsilon(1e-16));
            }
    }
}

TEST_CASE("kernel recursions agree with the dense matrices") {
    const ModelParams p = params(4, 0.9, 1.7, 0.25);
    const GridSpec g{23, 1.7};
    const KernelMatrices K = build_kernel(p, g);
    const std::vector<double> decay = step_decay(p, g);
    std::vector<double> x(24), y(24);
    for (int i = 0; i < 24; ++i) {
        x[static_cast<size_t>(i)] = std::sin(1.0 + i);
        y[static_cast<size_t>(i)] = std::cos(2.0 + 0.5 * i);
    }
    const std::vector<double> a = kernel_matvec_gamma_theta(decay, p.theta, x);
    const std::vector<double> b = matvec(K.gamma_theta, x);
    const std::vector<double> c = kernel_matvec_gamma_tilde(decay, x);
    const std::vector<double> d = matvec(K.gamma_tilde, x);
    for (int i = 0; i < 24; ++i) {
        CHECK(a[static_cast<size_t>(i)] == doctest::Approx(b[static_cast<size_t>(i)]).epsilon(1e-13));
        CHECK(c[static_cast<size_t>(i)] == doctest::Approx(d[static_cast<size_t>(i)]).epsilon(1e-13));
    }
    CHECK(kernel_quadform_gamma_tilde(decay, x, y) ==
          doctest::Approx(bilinear(K.gamma_tilde, x, y)).epsilon(1e-12));
    CHECK(kernel_quadform_gamma_theta(decay, p.theta, x) ==
          doctest::Approx(bilinear(K.gamma_theta, x, x)).epsilon(1e-12));
}

TEST_CASE("matrix cap and CSV dump") {
    CHECK_THROWS_AS(build_kernel(params(2, 1.0, 1.0, 0.0), GridSpec{100, 1.0}, 50),
                    std::length_error);

    Matrix A(1, 2);
    A(0, 0) = 1.0 / 3.0;
    A(0, 1) = -0.1;
    std::ostringstream os;
    dump_matrix_csv(A, os);
    CHECK(os.str() == "0.33333333333333331,-0.10000000000000001\n");
}
