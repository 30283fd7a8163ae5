#include <doctest.h>

#include <cmath>

#include "fgarch/estimation.hpp"
#include "fgarch/model.hpp"
#include "fgarch/preset.hpp"
#include "fgarch/rng.hpp"
#include "test_helpers.hpp"

using namespace fgarch;

namespace {

CoefSeries series_from_matrix(const Eigen::MatrixXd& y2, Grid grid = Grid{16}) {
    CoefSeries s;
    s.basis = make_basis(BasisKind::fourier, static_cast<int>(y2.cols()), grid);
    s.y2 = y2;
    return s;
}

Theta random_theta(int M, std::mt19937_64& rng, double bscale = 0.6) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Theta th = Theta::zero(M);
    for (int m = 0; m < M; ++m) th.d[m] = u(rng);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) {
            th.A(r, c) = u(rng);
            th.B(r, c) = u(rng);
        }
    const double bn = th.B.norm();
    if (bn > bscale) th.B *= bscale / bn;
    return th;
}

// Brute-force truncated double sum: shat_i = sum B^{l-1} d + sum B^{l-1} A y_{i-l}.
Eigen::VectorXd shat_bruteforce(const Theta& th, const Eigen::MatrixXd& y2, int i /*1-based*/) {
    const int M = th.M();
    Eigen::VectorXd s = Eigen::VectorXd::Zero(M);
    Eigen::MatrixXd Bpow = Eigen::MatrixXd::Identity(M, M);
    for (int l = 1; l <= i - 1; ++l) {
        s += Bpow * th.d;
        s += Bpow * th.A * y2.row(i - l - 1).transpose();
        Bpow = Bpow * th.B;
    }
    return s;
}

// Shared long simulation from the shipped design (built once).
const SimResult& long_sim() {
    static const SimResult sim = [] {
        const SimPreset preset = default_sim_preset();
        return simulate(build_spec(preset), preset.innovation, 10000, 1000);
    }();
    return sim;
}

}  // namespace

TEST_CASE("theta flatten round trip") {
    std::mt19937_64 rng(17);
    const Theta th = random_theta(3, rng);
    const Theta back = Theta::unflatten(th.flatten(), 3);
    CHECK((back.d - th.d).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.A - th.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.B - th.B).cwiseAbs().maxCoeff() == 0.0);
    CHECK(th.dim() == 21);
}

TEST_CASE("theta bounds validation") {
    const ThetaBounds bad_c1{0.0, 0.5};
    CHECK_THROWS_AS(bad_c1.validate(), ArgumentError);
    const ThetaBounds bad_c2{1e-6, 1.0};
    CHECK_THROWS_AS(bad_c2.validate(), ArgumentError);
    const ThetaBounds ok{};
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("project_sample examples") {
    const Grid grid{64};
    const BasisSet basis = make_basis(BasisKind::fourier, 2, grid);

    const std::vector<Curve> zeros(3, zero_curve(grid));
    const CoefSeries z = project_sample(zeros, basis);
    CHECK(z.y2.cwiseAbs().maxCoeff() == 0.0);

    // a curve whose square is exactly phi_1 (the constant 1): projection e_1
    std::vector<Curve> sample{constant_curve(grid, 1.0)};
    const CoefSeries s = project_sample(sample, basis);
    CHECK(std::abs(s.y2(0, 0) - 1.0) <= 1e-6);
    CHECK(std::abs(s.y2(0, 1)) <= 1e-6);
}

TEST_CASE("shat_recursion: closed forms") {
    std::mt19937_64 rng(18);
    const int M = 2, n = 6;
    Eigen::MatrixXd y2(n, M);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m) y2(i, m) = u(rng);
    const CoefSeries series = series_from_matrix(y2);

    Theta th = random_theta(M, rng);
    th.B.setZero();
    const Eigen::MatrixXd shat = shat_recursion(th, series);
    for (int i = 2; i <= n; ++i) {
        const Eigen::VectorXd expect = th.d + th.A * y2.row(i - 2).transpose();
        CHECK((shat.row(i - 2).transpose() - expect).cwiseAbs().maxCoeff() <= 1e-15);
    }

    Theta zero = Theta::zero(M);
    zero.B = th.A;  // d = 0, A = 0: recursion stays at zero
    CHECK(shat_recursion(zero, series).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shat_recursion equals the truncated double sum") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const int M : {1, 2, 3}) {
        for (int rep = 0; rep < 5; ++rep) {
            const int n = 10;
            Eigen::MatrixXd y2(n, M);
            for (int i = 0; i < n; ++i)
                for (int m = 0; m < M; ++m) y2(i, m) = u(rng);
            const CoefSeries series = series_from_matrix(y2);
            const Theta th = random_theta(M, rng);
            const Eigen::MatrixXd shat = shat_recursion(th, series);
            for (int i = 2; i <= n; ++i) {
                const Eigen::VectorXd brute = shat_bruteforce(th, y2, i);
                CHECK((shat.row(i - 2).transpose() - brute).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("objective: zero-residual configuration and hand-computed case") {
    const int M = 1, n = 8;
    Theta th = Theta::zero(M);
    th.d[0] = 0.7;
    const CoefSeries series = series_from_matrix(Eigen::MatrixXd::Constant(n, M, 0.7));
    CHECK(objective(th, series) == 0.0);

    // n = 3, M = 1 by hand: S = (y2 - d - a y1)^2 + (y3 - d - a y2 - b(d + a y1))^2
    Eigen::MatrixXd y2(3, 1);
    y2 << 1.0, 2.0, -0.5;
    Theta th2 = Theta::zero(1);
    th2.d[0] = 0.3;
    th2.A(0, 0) = 0.5;
    th2.B(0, 0) = 0.25;
    const double r2 = 2.0 - 0.3 - 0.5 * 1.0;
    const double r3 = -0.5 - 0.3 - 0.5 * 2.0 - 0.25 * (0.3 + 0.5 * 1.0);
    const double expected = r2 * r2 + r3 * r3;
    CHECK(objective(th2, series_from_matrix(y2)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("objective: finite positive at the truth on simulated data") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    CoefSeries series;
    series.basis = basis;
    series.y2.resize(600, 1);
    for (int i = 0; i < 600; ++i) {
        const Curve sq(sim.y[i].grid, sim.y[i].values.array().square());
        series.y2(i, 0) = inner_product(sq, basis.functions[0]);
    }
    Theta truth = Theta::zero(1);
    truth.d[0] = std::sqrt(30.0) / 600.0;
    truth.A(0, 0) = 0.4;
    truth.B(0, 0) = 0.4;
    const double v = objective(truth, series);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
}

TEST_CASE("gradient: stationary point and closed form") {
    const int M = 1, n = 8;
    Theta th = Theta::zero(M);
    th.d[0] = 0.7;
    const CoefSeries flat = series_from_matrix(Eigen::MatrixXd::Constant(n, M, 0.7));
    CHECK(gradient(th, flat).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd y2(12, 1);
    for (int i = 0; i < 12; ++i) y2(i, 0) = u(rng);
    Theta th2 = random_theta(1, rng);
    th2.B.setZero();
    const CoefSeries series = series_from_matrix(y2);
    const Eigen::VectorXd g = gradient(th2, series);
    double expect_d = 0.0;
    for (int i = 1; i < 12; ++i)
        expect_d += -2.0 * (y2(i, 0) - th2.d[0] - th2.A(0, 0) * y2(i - 1, 0));
    CHECK(g[0] == doctest::Approx(expect_d).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 50;
    for (int rep = 0; rep < 5; ++rep) {
        Eigen::MatrixXd y2(n, 1);
        for (int i = 0; i < n; ++i) y2(i, 0) = u(rng);
        const CoefSeries series = series_from_matrix(y2);
        const Theta th = random_theta(1, rng);
        const Eigen::VectorXd g = gradient(th, series);
        const Eigen::VectorXd x = th.flatten();
        const double h = 1e-6;
        for (int j = 0; j < x.size(); ++j) {
            Eigen::VectorXd xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const double fd = (objective(Theta::unflatten(xp, 1), series) -
                               objective(Theta::unflatten(xm, 1), series)) /
                              (2 * h);
            const double scale = std::max({std::abs(fd), std::abs(g[j]), 1e-2});
            CHECK(std::abs(g[j] - fd) / scale <= 1e-5);
        }
    }
}

TEST_CASE("fit: noiseless linear case recovers d and A") {
    // y_i = d + a y_{i-1}, started off the fixed point: the truncated
    // recursion pins (d, a, b) = (d, a, 0) as the unique zero-residual point
    const int n = 100;
    Eigen::MatrixXd y2(n, 1);
    y2(0, 0) = 3.0;
    const double d = 0.5, a = 0.6;
    for (int i = 1; i < n; ++i) y2(i, 0) = d + a * y2(i - 1, 0);
    const CoefSeries series = series_from_matrix(y2);

    const FitResult res = fit(series);
    CHECK(res.converged);
    CHECK(std::abs(res.theta_hat.d[0] - d) <= 1e-6);
    CHECK(std::abs(res.theta_hat.A(0, 0) - a) <= 1e-6);
    CHECK(std::abs(res.theta_hat.B(0, 0)) <= 1e-5);
    CHECK(res.objective_value <= 1e-12);
}

TEST_CASE("fit: rejects short series") {
    const CoefSeries series = series_from_matrix(Eigen::MatrixXd::Constant(5, 1, 1.0));
    CHECK_THROWS_AS(fit(series), ArgumentError);
}

TEST_CASE("fit: argmin dominance over the truth on simulated data") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    std::vector<Curve> sample(sim.y.begin(), sim.y.begin() + 400);
    const CoefSeries series = project_sample(sample, basis);
    const FitResult res = fit(series);
    Theta truth = Theta::zero(1);
    truth.d[0] = std::sqrt(30.0) / 600.0;
    truth.A(0, 0) = 0.4;
    truth.B(0, 0) = 0.4;
    CHECK(res.objective_value <= objective(truth, series));
}

TEST_CASE("fit: invariant under basis sign flip at the kernel level") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    BasisSet flipped = basis;
    flipped.functions[0].values = -flipped.functions[0].values;

    std::vector<Curve> sample(sim.y.begin(), sim.y.begin() + 300);
    const FitResult a = fit(project_sample(sample, basis));
    const FitResult b = fit(project_sample(sample, flipped));

    CHECK((a.alpha_hat.values - b.alpha_hat.values).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((a.beta_hat.values - b.beta_hat.values).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((a.delta_hat.values - b.delta_hat.values).cwiseAbs().maxCoeff() <= 1e-8);
    // coefficient-level values flip sign
    CHECK(a.theta_hat.d[0] == doctest::Approx(-b.theta_hat.d[0]).epsilon(1e-8));
}

TEST_CASE("identifiability: population objective gap is positive") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    const CoefSeries series = project_sample(sim.y, basis);
    const int n = series.n();

    Theta truth = Theta::zero(1);
    truth.d[0] = std::sqrt(30.0) / 600.0;
    truth.A(0, 0) = 0.4;
    truth.B(0, 0) = 0.4;
    const double base = objective(truth, series) / n;

    for (const auto& [dd, aa, bb] : std::vector<std::tuple<double, double, double>>{
             {0.02, 0.4, 0.4}, {0.009, 0.7, 0.1}, {0.009, 0.2, 0.6}, {0.05, 0.5, 0.3}}) {
        Theta other = Theta::zero(1);
        other.d[0] = dd;
        other.A(0, 0) = aa;
        other.B(0, 0) = bb;
        CHECK(objective(other, series) / n > base);
    }
}

TEST_CASE("asymptotic_cov: structure and degenerate cases") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    std::vector<Curve> sample(sim.y.begin(), sim.y.begin() + 500);
    const CoefSeries series = project_sample(sample, basis);
    const FitResult res = fit(series);
    const Eigen::MatrixXd cov = asymptotic_cov(res.theta_hat, series);

    CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * cov.cwiseAbs().maxCoeff());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * cov.trace());

    // identically zero residuals: Jhat = 0, covariance 0
    const int n = 60;
    Eigen::MatrixXd y2(n, 1);
    y2(0, 0) = 3.0;
    for (int i = 1; i < n; ++i) y2(i, 0) = 0.5 + 0.6 * y2(i - 1, 0);
    const CoefSeries clean = series_from_matrix(y2);
    Theta exact = Theta::zero(1);
    exact.d[0] = 0.5;
    exact.A(0, 0) = 0.6;
    const Eigen::MatrixXd cov0 = asymptotic_cov(exact, clean);
    CHECK(cov0.cwiseAbs().maxCoeff() <= 1e-18);

    // constant series: derivative columns collinear, Qhat singular
    const CoefSeries constant = series_from_matrix(Eigen::MatrixXd::Constant(50, 1, 1.0));
    Theta th = Theta::zero(1);
    th.d[0] = 0.2;
    th.A(0, 0) = 0.5;
    th.B(0, 0) = 0.3;
    CHECK_THROWS_AS(asymptotic_cov(th, constant), SingularError);
}

TEST_CASE("delta_tilde examples") {
    const Grid grid{32};
    std::mt19937_64 rng(23);
    std::vector<Curve> sample;
    for (int i = 0; i < 20; ++i) sample.push_back(testing::random_curve(grid, rng));

    // zero kernels return the mean squared curve
    const Curve dt = delta_tilde(zero_kernel(grid), zero_kernel(grid), sample);
    Eigen::VectorXd ybar2 = Eigen::VectorXd::Zero(grid.T);
    for (const Curve& c : sample) ybar2 += c.values.array().square().matrix();
    ybar2 /= 20.0;
    CHECK((dt.values - ybar2).cwiseAbs().maxCoeff() <= 1e-15);

    // at the truth on a long simulation, close to the true intercept
    const SimResult& sim = long_sim();
    const Curve est = delta_tilde(sim.spec.alpha, sim.spec.beta, sim.y);
    const Curve err(est.grid, est.values - sim.spec.delta.values);
    CHECK(l2_norm(err) <= 0.10 * l2_norm(sim.spec.delta));
}

TEST_CASE("delta_tilde close to the reconstructed intercept estimate") {
    const SimResult& sim = long_sim();
    const BasisSet basis = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    std::vector<Curve> sample(sim.y.begin(), sim.y.begin() + 600);
    const FitResult res = fit(project_sample(sample, basis));
    const Curve dt = delta_tilde(res.alpha_hat, res.beta_hat, sample);
    const Curve gap(dt.grid, dt.values - res.delta_hat.values);
    CHECK(l2_norm(gap) < 0.5 * l2_norm(res.delta_hat));
}

TEST_CASE("volatility_filter") {
    const Grid grid{32};
    const BasisSet basis = make_basis(BasisKind::fourier, 1, grid);

    CoefSeries series;
    series.basis = basis;
    series.y2 = Eigen::MatrixXd::Constant(6, 1, 0.5);

    const VolatilityFilterResult zeroed = volatility_filter(Theta::zero(1), series, basis);
    CHECK(zeroed.curves.size() == 5);
    for (const Curve& c : zeroed.curves) CHECK(sup_norm(c) == 0.0);
    CHECK(zeroed.clipped == 0);

    Theta donly = Theta::zero(1);
    donly.d[0] = 0.25;
    const VolatilityFilterResult dres = volatility_filter(donly, series, basis);
    for (const Curve& c : dres.curves)
        CHECK((c.values.array() - 0.25).abs().maxCoeff() <= 1e-12);

    // at the truth, mean filtering error shrinks as the window grows
    const SimResult& sim = long_sim();
    const BasisSet bump = make_basis(BasisKind::bump, 1, sim.spec.delta.grid);
    Theta truth = Theta::zero(1);
    truth.d[0] = std::sqrt(30.0) / 600.0;
    truth.A(0, 0) = 0.4;
    truth.B(0, 0) = 0.4;
    const auto mean_error = [&](int n) {
        std::vector<Curve> sample(sim.y.begin(), sim.y.begin() + n);
        const CoefSeries s = project_sample(sample, bump);
        const VolatilityFilterResult f = volatility_filter(truth, s, bump);
        double acc = 0.0;
        for (std::size_t i = 0; i < f.curves.size(); ++i) {
            const Curve diff(f.curves[i].grid,
                             f.curves[i].values - sim.sigma2[i + 1].values);
            acc += l2_norm(diff);
        }
        return acc / static_cast<double>(f.curves.size());
    };
    CHECK(mean_error(2000) < mean_error(200));
}
