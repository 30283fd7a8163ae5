#include "fgarch/reference.hpp"

#include <cmath>
#include <limits>

#include "fgarch/rng.hpp"

namespace fgarch::ref {

namespace {

// Online mean and standard error (Welford), a deliberately different
// accumulation than the array-then-reduce of the parallel versions.
class Welford {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / n_;
        m2_ += d * (x - mean_);
    }
    double mean() const { return mean_; }
    double se() const {
        if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
        return std::sqrt(m2_ / (n_ - 1) / n_);
    }

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

double gamma_hs_norm_naive(const FGarchSpec& spec, const Curve& eps) {
    const int T = spec.delta.grid.T;
    double s = 0.0;
    for (int k = 0; k < T; ++k) {
        const double e = eps.values[k] * eps.values[k];
        for (int j = 0; j < T; ++j) {
            const double v = spec.alpha.values(j, k) * e + spec.beta.values(j, k);
            s += v * v;
        }
    }
    return std::sqrt(s) / T;
}

double gamma_bar_sup_naive(const FGarchSpec& spec, const Curve& eps) {
    const int T = spec.delta.grid.T;
    double sup = 0.0;
    for (int j = 0; j < T; ++j) {
        double row = 0.0;
        for (int k = 0; k < T; ++k) {
            const double e = eps.values[k] * eps.values[k];
            row += spec.alpha.values(j, k) * e + spec.beta.values(j, k);
        }
        sup = std::max(sup, std::abs(row / T));
    }
    return sup;
}

}  // namespace

Curve apply_kernel(const Kernel2D& K, const Curve& f) {
    require_same_grid(K.grid, f.grid, "ref::apply_kernel");
    const int T = K.grid.T;
    Eigen::VectorXd g(T);
    for (int j = 0; j < T; ++j) {
        double s = 0.0;
        for (int k = 0; k < T; ++k) s += K.values(j, k) * f.values[k];
        g[j] = s / T;
    }
    return Curve(f.grid, std::move(g));
}

Kernel2D covariance_kernel(const std::vector<Curve>& sample) {
    if (sample.size() < 2) throw ArgumentError("ref::covariance_kernel: need at least 2 curves");
    const Grid grid = sample.front().grid;
    const int n = static_cast<int>(sample.size());
    const int T = grid.T;

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(T);
    for (const Curve& c : sample) mean += c.values;
    mean /= n;

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(T, T);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd dev = sample[i].values - mean;
        for (int j = 0; j < T; ++j)
            for (int k = 0; k < T; ++k) D(j, k) += dev[j] * dev[k];
    }
    D /= n;
    return Kernel2D(grid, std::move(D));
}

MCEstimate lyapunov_l2(const FGarchSpec& spec, const InnovationGen& gen, std::int64_t reps) {
    const Grid grid = spec.delta.grid;
    Welford acc;
    std::int64_t degenerate = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        std::mt19937_64 rng = make_rng(gen.seed, StreamTag::lyapunov, static_cast<std::uint64_t>(r));
        const Curve eps = draw_innovation(gen, grid, rng);
        const double v = std::log(gamma_hs_norm_naive(spec, eps));
        if (std::isinf(v)) {
            ++degenerate;
            continue;
        }
        acc.add(v);
    }
    MCEstimate est;
    est.reps = reps;
    est.degenerate = degenerate;
    if (degenerate > 0) {
        est.mean = -std::numeric_limits<double>::infinity();
        est.se = std::numeric_limits<double>::quiet_NaN();
    } else {
        est.mean = acc.mean();
        est.se = acc.se();
    }
    return est;
}

MCEstimate moment_norm(const FGarchSpec& spec, const InnovationGen& gen, double nu,
                       std::int64_t reps, NormKind kind) {
    const Grid grid = spec.delta.grid;
    Welford acc;
    for (std::int64_t r = 0; r < reps; ++r) {
        std::mt19937_64 rng = make_rng(gen.seed, StreamTag::moment, static_cast<std::uint64_t>(r));
        const Curve eps = draw_innovation(gen, grid, rng);
        const double norm = (kind == NormKind::hs) ? gamma_hs_norm_naive(spec, eps)
                                                   : gamma_bar_sup_naive(spec, eps);
        acc.add(std::pow(norm, nu));
    }
    MCEstimate est;
    est.reps = reps;
    est.mean = acc.mean();
    est.se = acc.se();
    return est;
}

std::vector<CouplingRow> coupling_decay(const FGarchSpec& spec, const InnovationGen& gen,
                                        const std::vector<int>& ells, std::int64_t reps,
                                        int depth) {
    const Grid grid = spec.delta.grid;
    std::vector<CouplingRow> rows;
    rows.reserve(ells.size());
    for (std::size_t li = 0; li < ells.size(); ++li) {
        const int ell = ells[li];
        const int shared = std::min(ell, depth);
        Welford acc;
        for (std::int64_t r = 0; r < reps; ++r) {
            std::mt19937_64 rng =
                make_rng(gen.seed, StreamTag::coupling,
                         (static_cast<std::uint64_t>(li) << 32) | static_cast<std::uint64_t>(r));
            std::vector<Curve> histA, histB;
            for (int k = 0; k < shared; ++k) {
                Curve e = draw_innovation(gen, grid, rng);
                histB.push_back(e);
                histA.push_back(std::move(e));
            }
            for (int k = shared; k < depth; ++k) histA.push_back(draw_innovation(gen, grid, rng));
            for (int k = shared; k < depth; ++k) histB.push_back(draw_innovation(gen, grid, rng));
            const Curve sA = series_solution(spec, histA, depth);
            const Curve sB = series_solution(spec, histB, depth);
            acc.add(l2_norm(Curve(grid, sA.values - sB.values)));
        }
        rows.push_back({ell, acc.mean(), acc.se()});
    }
    return rows;
}

}  // namespace fgarch::ref
