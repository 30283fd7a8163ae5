#include "fgarch/replication.hpp"

#include <cmath>

#include "fgarch/rng.hpp"

namespace fgarch {

ReplicationRow replicate(const SimPreset& preset, const BasisSet& basis, int n, int reps,
                         std::uint64_t seed, const ThetaBounds& bounds, const FitOptions& opts) {
    if (reps < 1) throw ArgumentError("replicate: reps must be >= 1");
    const FGarchSpec spec = build_spec(preset);
    require_same_grid(spec.delta.grid, basis.grid, "replicate");

    const int p = basis.M + 2 * basis.M * basis.M;
    Eigen::MatrixXd estimates = Eigen::MatrixXd::Zero(reps, p);
    std::vector<char> ok(reps, 0);

#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < reps; ++r) {
        InnovationGen gen = preset.innovation;
        gen.seed = derive_seed(seed, StreamTag::replicate, static_cast<std::uint64_t>(r));
        FitOptions rep_opts = opts;
        rep_opts.seed = gen.seed;
        try {
            const SimResult sim = simulate(spec, gen, n, preset.burnin);
            const CoefSeries series = project_sample(sim.y, basis);
            const FitResult res = fit(series, bounds, rep_opts);
            estimates.row(r) = res.theta_hat.flatten().transpose();
            ok[r] = 1;
        } catch (const std::exception&) {
            ok[r] = 0;
        }
    }

    ReplicationRow row;
    row.n = n;
    row.reps = reps;
    int good = 0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (int r = 0; r < reps; ++r) {
        if (!ok[r]) continue;
        mean += estimates.row(r).transpose();
        ++good;
    }
    row.failed = reps - good;
    if (good == 0) throw ConvergenceError("replicate: every replication failed");
    mean /= good;
    row.mean = mean;
    if (good >= 2) {
        Eigen::VectorXd var = Eigen::VectorXd::Zero(p);
        for (int r = 0; r < reps; ++r) {
            if (!ok[r]) continue;
            const Eigen::VectorXd dev = estimates.row(r).transpose() - mean;
            var += dev.cwiseProduct(dev);
        }
        row.sd = (var / (good - 1)).cwiseSqrt();
    }
    row.estimates = std::move(estimates);
    row.ok = std::move(ok);
    return row;
}

}  // namespace fgarch
