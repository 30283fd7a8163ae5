#include <doctest.h>

#include <cmath>

#include "fgarch/function_space.hpp"
#include "test_helpers.hpp"

using namespace fgarch;

namespace {
const Grid g285{285};

Curve phi1(Grid grid) {
    return make_curve(grid, [](double t) { return std::sqrt(30.0) * t * (1.0 - t); });
}

Kernel2D paper_kernel(Grid grid, double c) {
    return make_kernel(grid, [c](double t, double s) { return c * t * (1 - t) * s * (1 - s); });
}
}  // namespace

TEST_CASE("inner_product: quadrature examples") {
    const Curve p = phi1(g285);
    CHECK(inner_product(p, p) == doctest::Approx(1.0).epsilon(1e-4));

    const Curve z = zero_curve(g285);
    CHECK(inner_product(z, p) == 0.0);

    const Curve one = constant_curve(g285, 1.0);
    CHECK(inner_product(one, one) == 1.0);  // Riemann sum exact for constants
}

TEST_CASE("inner_product: grid mismatch") {
    CHECK_THROWS_AS(inner_product(zero_curve(Grid{16}), zero_curve(Grid{17})), DimensionError);
}

TEST_CASE("l2_norm examples") {
    CHECK(l2_norm(phi1(g285)) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(l2_norm(zero_curve(g285)) == 0.0);
    CHECK(l2_norm(constant_curve(g285, -2.5)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("sup_norm examples") {
    const Curve arch = make_curve(g285, [](double t) { return 4.0 * t * (1.0 - t); });
    // analytic max 1 at t = 1/2; grid carries the value at the nearest point
    double expected = 0.0;
    for (int j = 0; j < g285.T; ++j) {
        const double t = g285.point(j);
        expected = std::max(expected, 4.0 * t * (1.0 - t));
    }
    CHECK(sup_norm(arch) == expected);
    CHECK(sup_norm(arch) >= 0.9999);
    CHECK(sup_norm(zero_curve(g285)) == 0.0);
    CHECK(sup_norm(constant_curve(g285, -3.0)) == 3.0);
}

TEST_CASE("hs_norm examples") {
    CHECK(hs_norm(paper_kernel(g285, 12.0)) == doctest::Approx(0.4).epsilon(1e-3 / 0.4));
    CHECK(hs_norm(zero_kernel(g285)) == 0.0);
    CHECK(hs_norm(paper_kernel(g285, 24.0)) == doctest::Approx(0.8).epsilon(2e-3 / 0.8));
}

TEST_CASE("apply_kernel examples") {
    const Kernel2D K = paper_kernel(g285, 12.0);
    const Curve one = constant_curve(g285, 1.0);
    const Curve out = apply_kernel(K, one);
    for (int j = 0; j < g285.T; ++j) {
        const double t = g285.point(j);
        CHECK(std::abs(out.values[j] - 2.0 * t * (1.0 - t)) <= 1e-4);
    }

    CHECK(sup_norm(apply_kernel(zero_kernel(g285), one)) == 0.0);

    const Curve p = phi1(g285);
    const Kernel2D projector =
        Kernel2D(g285, p.values * p.values.transpose());
    const Curve projected = apply_kernel(projector, p);
    CHECK((projected.values - p.values).cwiseAbs().maxCoeff() <= 1e-3);

    CHECK_THROWS_AS(apply_kernel(K, zero_curve(Grid{16})), DimensionError);
}

TEST_CASE("row_integrate examples") {
    const Curve bar = row_integrate(paper_kernel(g285, 24.0));
    for (int j = 0; j < g285.T; ++j) {
        const double t = g285.point(j);
        CHECK(std::abs(bar.values[j] - 4.0 * t * (1.0 - t)) <= 1e-4);
    }
    CHECK(sup_norm(bar) == doctest::Approx(1.0).epsilon(1e-3));

    CHECK(sup_norm(row_integrate(zero_kernel(g285))) == 0.0);

    const Kernel2D ones(g285, Eigen::MatrixXd::Ones(g285.T, g285.T));
    const Curve flat = row_integrate(ones);
    CHECK((flat.values.array() - 1.0).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("quadrature error bound for endpoint-vanishing cubics") {
    for (const int T : {20, 50, 285}) {
        const Grid grid{T};
        const Curve f = make_curve(grid, [](double t) { return t * (1 - t) * (2 * t - 1); });
        const double analytic = 1.0 / 210.0;  // int t^2 (1-t)^2 (2t-1)^2 dt
        CHECK(std::abs(inner_product(f, f) - analytic) <= 5.0 / (T * T));
    }
}

TEST_CASE("apply_kernel is linear") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const Grid grid{40};
    for (int rep = 0; rep < 10; ++rep) {
        const Kernel2D K = testing::random_kernel(grid, rng);
        const Curve f = testing::random_curve(grid, rng);
        const Curve h = testing::random_curve(grid, rng);
        const double a = u(rng);
        const double b = u(rng);
        const Curve combo(grid, a * f.values + b * h.values);
        const Eigen::VectorXd lhs = apply_kernel(K, combo).values;
        const Eigen::VectorXd rhs =
            a * apply_kernel(K, f).values + b * apply_kernel(K, h).values;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("hs_norm is a norm and bounds the operator") {
    std::mt19937_64 rng(99);
    const Grid grid{40};
    CHECK(hs_norm(zero_kernel(grid)) == 0.0);
    for (int rep = 0; rep < 10; ++rep) {
        const Kernel2D K = testing::random_kernel(grid, rng);
        CHECK(hs_norm(K) > 0.0);
        // flattened l2 with weight 1/T^2
        const double flat = std::sqrt(K.values.array().square().sum() / (grid.T * grid.T));
        CHECK(hs_norm(K) == doctest::Approx(flat).epsilon(1e-13));
        const Curve f = testing::random_curve(grid, rng);
        CHECK(l2_norm(apply_kernel(K, f)) <= hs_norm(K) * l2_norm(f) * (1 + 1e-12));
    }
}
