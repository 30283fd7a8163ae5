#include <doctest.h>

#include "fgarch/function_space.hpp"
#include "fgarch/preset.hpp"
#include "fgarch/reference.hpp"
#include "test_helpers.hpp"

using namespace fgarch;

// The OpenMP kernels must agree with their serial reference twins; the
// per-replication RNG streams make the Monte Carlo values identical, so only
// accumulation order can differ.

TEST_CASE("apply_kernel agrees with the naive reference") {
    std::mt19937_64 rng(1);
    const Grid grid{60};
    for (int rep = 0; rep < 5; ++rep) {
        const Kernel2D K = testing::random_kernel(grid, rng);
        const Curve f = testing::random_curve(grid, rng);
        const Eigen::VectorXd a = apply_kernel(K, f).values;
        const Eigen::VectorXd b = ref::apply_kernel(K, f).values;
        const double scale = b.cwiseAbs().maxCoeff() + 1e-300;
        CHECK((a - b).cwiseAbs().maxCoeff() / scale <= 1e-12);
    }
}

TEST_CASE("covariance_kernel agrees with the naive reference") {
    std::mt19937_64 rng(2);
    const Grid grid{40};
    std::vector<Curve> sample;
    for (int i = 0; i < 25; ++i) sample.push_back(testing::random_curve(grid, rng));
    const Kernel2D a = covariance_kernel(sample);
    const Kernel2D b = ref::covariance_kernel(sample);
    const double scale = b.values.cwiseAbs().maxCoeff();
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() / scale <= 1e-12);
}

TEST_CASE("Monte Carlo diagnostics agree with serial references") {
    SimPreset preset = default_sim_preset();
    preset.grid_T = 32;
    preset.innovation.rate = 5.0;
    const FGarchSpec spec = build_spec(preset);

    const MCEstimate lp = lyapunov_l2(spec, preset.innovation, 500);
    const MCEstimate ls = ref::lyapunov_l2(spec, preset.innovation, 500);
    CHECK(lp.mean == doctest::Approx(ls.mean).epsilon(1e-12));
    CHECK(lp.se == doctest::Approx(ls.se).epsilon(1e-9));

    for (const NormKind kind : {NormKind::hs, NormKind::sup}) {
        const MCEstimate mp = moment_norm(spec, preset.innovation, 1.0, 300, kind);
        const MCEstimate ms = ref::moment_norm(spec, preset.innovation, 1.0, 300, kind);
        CHECK(mp.mean == doctest::Approx(ms.mean).epsilon(1e-12));
    }

    const std::vector<int> ells{1, 4};
    const auto cp = coupling_decay(spec, preset.innovation, ells, 20, 16);
    const auto cs = ref::coupling_decay(spec, preset.innovation, ells, 20, 16);
    for (std::size_t i = 0; i < ells.size(); ++i) {
        CHECK(cp[i].mean == doctest::Approx(cs[i].mean).epsilon(1e-12));
        CHECK(cp[i].ell == cs[i].ell);
    }
}
