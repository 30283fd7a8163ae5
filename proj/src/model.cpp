#include "fgarch/model.hpp"

#include <cmath>
#include <limits>

namespace fgarch {

void validate_spec(const FGarchSpec& spec) {
    require_same_grid(spec.delta.grid, spec.alpha.grid, "FGarchSpec");
    require_same_grid(spec.delta.grid, spec.beta.grid, "FGarchSpec");
    if (!spec.delta.values.allFinite() || !spec.alpha.values.allFinite() ||
        !spec.beta.values.allFinite())
        throw ArgumentError("FGarchSpec: non-finite entries");
    if (spec.delta.values.minCoeff() < 0.0)
        throw ArgumentError("FGarchSpec: delta must be nonnegative");
    if (spec.alpha.values.minCoeff() < 0.0 || spec.beta.values.minCoeff() < 0.0)
        throw ArgumentError("FGarchSpec: alpha and beta kernels must be nonnegative");
}

std::string to_string(InnovKind kind) {
    return kind == InnovKind::ou_bridge ? "ou_bridge" : "iid_gaussian_pointwise";
}

InnovKind innov_kind_from_string(const std::string& name) {
    if (name == "ou_bridge") return InnovKind::ou_bridge;
    if (name == "iid_gaussian_pointwise") return InnovKind::iid_gaussian_pointwise;
    throw ArgumentError("unknown innovation kind: " + name);
}

Curve ou_innovation(const InnovationGen& gen, const Grid& grid, std::mt19937_64& rng) {
    if (gen.kind != InnovKind::ou_bridge)
        throw ArgumentError("ou_innovation: generator kind is not ou_bridge");
    const double rho = std::exp2(-gen.rate / grid.T);
    const double scale = std::sqrt(1.0 - rho * rho);
    Eigen::VectorXd v(grid.T);
    v[0] = gaussian(rng);
    for (int j = 1; j < grid.T; ++j) v[j] = rho * v[j - 1] + scale * gaussian(rng);
    return Curve(grid, std::move(v));
}

Curve draw_innovation(const InnovationGen& gen, const Grid& grid, std::mt19937_64& rng) {
    if (gen.kind == InnovKind::ou_bridge) return ou_innovation(gen, grid, rng);
    Eigen::VectorXd v(grid.T);
    for (int j = 0; j < grid.T; ++j) v[j] = gaussian(rng);
    return Curve(grid, std::move(v));
}

Kernel2D gamma_kernel(const FGarchSpec& spec, const Curve& eps) {
    require_same_grid(spec.delta.grid, eps.grid, "gamma_kernel");
    const Eigen::ArrayXd eps2 = eps.values.array().square();
    Eigen::MatrixXd K = spec.beta.values;
    for (int k = 0; k < eps.grid.T; ++k) K.col(k) += spec.alpha.values.col(k) * eps2[k];
    return Kernel2D(eps.grid, std::move(K));
}

namespace {

// ||gamma||_HS without materializing the kernel.
double gamma_hs_norm(const FGarchSpec& spec, const Eigen::VectorXd& eps2) {
    const int T = spec.delta.grid.T;
    double s = 0.0;
    for (int k = 0; k < T; ++k)
        s += (spec.alpha.values.col(k) * eps2[k] + spec.beta.values.col(k)).squaredNorm();
    return std::sqrt(s) / T;
}

// sup_t |int gamma(t,s) ds| given the precomputed row sums of beta.
double gamma_bar_sup_norm(const FGarchSpec& spec, const Eigen::VectorXd& beta_rowsum,
                          const Eigen::VectorXd& eps2) {
    const Eigen::VectorXd rowbar =
        (spec.alpha.values * eps2 + beta_rowsum) * spec.delta.grid.weight();
    return rowbar.cwiseAbs().maxCoeff();
}

// gamma applied to f: (1/T) [alpha (eps^2 .* f) + beta f].
Eigen::VectorXd apply_gamma(const FGarchSpec& spec, const Eigen::VectorXd& eps2,
                            const Eigen::VectorXd& f) {
    return (spec.alpha.values * eps2.cwiseProduct(f) + spec.beta.values * f) *
           spec.delta.grid.weight();
}

struct MeanSe {
    double mean, se;
};

MeanSe reduce(const Eigen::VectorXd& vals) {
    const auto n = vals.size();
    const double mean = vals.mean();
    if (n < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
    const double var = (vals.array() - mean).square().sum() / (n - 1);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

SimResult simulate(const FGarchSpec& spec, const InnovationGen& gen, int n, int burnin) {
    validate_spec(spec);
    if (n < 1) throw ArgumentError("simulate: n must be >= 1");
    if (burnin < 0) throw ArgumentError("simulate: burnin must be >= 0");

    const Grid grid = spec.delta.grid;
    const double w = grid.weight();
    std::mt19937_64 rng = make_rng(gen.seed, StreamTag::simulate, 0);

    SimResult out;
    out.spec = spec;
    out.burnin = burnin;
    out.y.reserve(n);
    out.sigma2.reserve(n);
    out.eps.reserve(n);

    Eigen::VectorXd sigma2 = spec.delta.values;
    for (int i = 0; i < burnin + n; ++i) {
        Curve eps = draw_innovation(gen, grid, rng);
        Eigen::VectorXd y = sigma2.cwiseSqrt().cwiseProduct(eps.values);
        Eigen::VectorXd y2 = y.cwiseProduct(y);
        if (i >= burnin) {
            out.sigma2.emplace_back(grid, sigma2);
            out.y.emplace_back(grid, y);
            out.eps.push_back(std::move(eps));
        }
        sigma2 = spec.delta.values + (spec.alpha.values * y2 + spec.beta.values * sigma2) * w;
        if (sigma2.minCoeff() < 0.0 || !sigma2.allFinite())
            throw InternalError("simulate: volatility recursion left the nonnegative cone");
    }
    return out;
}

MCEstimate lyapunov_l2(const FGarchSpec& spec, const InnovationGen& gen, std::int64_t reps) {
    validate_spec(spec);
    if (reps < 1) throw ArgumentError("lyapunov_l2: reps must be >= 1");
    const Grid grid = spec.delta.grid;

    Eigen::VectorXd vals(reps);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < reps; ++r) {
        std::mt19937_64 rng = make_rng(gen.seed, StreamTag::lyapunov, static_cast<std::uint64_t>(r));
        const Curve eps = draw_innovation(gen, grid, rng);
        vals[r] = std::log(gamma_hs_norm(spec, eps.values.array().square()));
    }

    MCEstimate est;
    est.reps = reps;
    for (std::int64_t r = 0; r < reps; ++r)
        if (std::isinf(vals[r])) ++est.degenerate;
    if (est.degenerate > 0) {
        est.mean = -std::numeric_limits<double>::infinity();
        est.se = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    const MeanSe ms = reduce(vals);
    est.mean = ms.mean;
    est.se = ms.se;
    return est;
}

MCEstimate moment_norm(const FGarchSpec& spec, const InnovationGen& gen, double nu,
                       std::int64_t reps, NormKind kind) {
    validate_spec(spec);
    if (reps < 1) throw ArgumentError("moment_norm: reps must be >= 1");
    if (!(nu > 0.0)) throw ArgumentError("moment_norm: nu must be positive");
    const Grid grid = spec.delta.grid;
    const Eigen::VectorXd beta_rowsum = spec.beta.values.rowwise().sum();

    Eigen::VectorXd vals(reps);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < reps; ++r) {
        std::mt19937_64 rng = make_rng(gen.seed, StreamTag::moment, static_cast<std::uint64_t>(r));
        const Curve eps = draw_innovation(gen, grid, rng);
        const Eigen::VectorXd eps2 = eps.values.array().square();
        const double norm = (kind == NormKind::hs) ? gamma_hs_norm(spec, eps2)
                                                   : gamma_bar_sup_norm(spec, beta_rowsum, eps2);
        vals[r] = std::pow(norm, nu);
    }

    const MeanSe ms = reduce(vals);
    MCEstimate est;
    est.reps = reps;
    est.mean = ms.mean;
    est.se = ms.se;
    return est;
}

Curve series_solution(const FGarchSpec& spec, const std::vector<Curve>& eps_history, int K) {
    validate_spec(spec);
    if (K < 0) throw ArgumentError("series_solution: K must be >= 0");
    if (K > static_cast<int>(eps_history.size()))
        throw ArgumentError("series_solution: K exceeds innovation history length");

    const Grid grid = spec.delta.grid;
    Eigen::VectorXd s = spec.delta.values;
    // Oldest kernel applied first; unrolling reproduces the K-truncated series.
    for (int idx = K - 1; idx >= 0; --idx) {
        require_same_grid(grid, eps_history[idx].grid, "series_solution");
        const Eigen::VectorXd eps2 = eps_history[idx].values.array().square();
        s = spec.delta.values + apply_gamma(spec, eps2, s);
    }
    return Curve(grid, std::move(s));
}

std::vector<CouplingRow> coupling_decay(const FGarchSpec& spec, const InnovationGen& gen,
                                        const std::vector<int>& ells, std::int64_t reps,
                                        int depth) {
    validate_spec(spec);
    if (reps < 1) throw ArgumentError("coupling_decay: reps must be >= 1");
    if (depth < 1) throw ArgumentError("coupling_decay: depth must be >= 1");
    const Grid grid = spec.delta.grid;
    const double w = grid.weight();

    std::vector<CouplingRow> rows;
    rows.reserve(ells.size());
    for (std::size_t li = 0; li < ells.size(); ++li) {
        const int ell = ells[li];
        if (ell < 0) throw ArgumentError("coupling_decay: ell must be >= 0");
        const int shared = std::min(ell, depth);

        Eigen::VectorXd vals(reps);
#pragma omp parallel for schedule(static)
        for (std::int64_t r = 0; r < reps; ++r) {
            std::mt19937_64 rng =
                make_rng(gen.seed, StreamTag::coupling,
                         (static_cast<std::uint64_t>(li) << 32) | static_cast<std::uint64_t>(r));
            std::vector<Curve> histA, histB;
            histA.reserve(depth);
            histB.reserve(depth);
            for (int k = 0; k < shared; ++k) {
                Curve e = draw_innovation(gen, grid, rng);
                histB.push_back(e);
                histA.push_back(std::move(e));
            }
            for (int k = shared; k < depth; ++k) histA.push_back(draw_innovation(gen, grid, rng));
            for (int k = shared; k < depth; ++k) histB.push_back(draw_innovation(gen, grid, rng));
            const Curve sA = series_solution(spec, histA, depth);
            const Curve sB = series_solution(spec, histB, depth);
            vals[r] = std::sqrt((sA.values - sB.values).squaredNorm() * w);
        }

        const MeanSe ms = reduce(vals);
        rows.push_back({ell, ms.mean, ms.se});
    }
    return rows;
}

}  // namespace fgarch
