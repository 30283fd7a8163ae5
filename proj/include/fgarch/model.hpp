#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgarch/function_space.hpp"
#include "fgarch/rng.hpp"
#include "fgarch/types.hpp"

namespace fgarch {

/// Functional GARCH(1,1): y_i = sigma_i eps_i,
/// sigma_i^2 = delta + alpha y_{i-1}^2 + beta sigma_{i-1}^2,
/// with delta >= 0 and nonnegative kernels alpha, beta.
struct FGarchSpec {
    Curve delta;
    Kernel2D alpha;
    Kernel2D beta;
};

/// Throws unless grids agree and delta, alpha, beta are finite and >= 0.
void validate_spec(const FGarchSpec& spec);

enum class InnovKind { ou_bridge, iid_gaussian_pointwise };

std::string to_string(InnovKind kind);
InnovKind innov_kind_from_string(const std::string& name);

/// Innovation law configuration. `ou_bridge` is the stationary
/// Ornstein-Uhlenbeck-type curve obtained by evaluating a time-changed
/// Brownian motion at the grid; `rate` is its exponential decay rate c, so
/// Corr(eps(t), eps(s)) = 2^{-c|t-s|}. `iid_gaussian_pointwise` draws
/// independent standard normals per grid point (degenerate testing only).
struct InnovationGen {
    InnovKind kind = InnovKind::ou_bridge;
    double rate = 200.0;
    std::uint64_t seed = 0;
};

/// One ou_bridge draw: eps(t_1) ~ N(0,1), eps(t_{j+1}) = rho eps(t_j) +
/// sqrt(1-rho^2) Z_j with rho = 2^{-c/T}. This is the exact joint law of the
/// time-changed Brownian construction at the grid points, evaluated without
/// forming the astronomically large time arguments.
Curve ou_innovation(const InnovationGen& gen, const Grid& grid, std::mt19937_64& rng);

/// Dispatches on gen.kind.
Curve draw_innovation(const InnovationGen& gen, const Grid& grid, std::mt19937_64& rng);

/// Random volatility-recursion kernel gamma(t,s) = alpha(t,s) eps^2(s) + beta(t,s).
Kernel2D gamma_kernel(const FGarchSpec& spec, const Curve& eps);

struct SimResult {
    std::vector<Curve> y;
    std::vector<Curve> sigma2;
    std::vector<Curve> eps;
    FGarchSpec spec;
    int burnin = 0;
};

/// Simulates n curves after discarding `burnin`, starting from sigma_1^2 = delta.
/// Deterministic given gen.seed.
SimResult simulate(const FGarchSpec& spec, const InnovationGen& gen, int n, int burnin);

/// Monte Carlo mean with standard error.
struct MCEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::int64_t reps = 0;
    /// Draws whose norm was exactly zero (log = -inf); if any occur the mean
    /// of a log-statistic is reported as -inf.
    std::int64_t degenerate = 0;
};

/// Monte Carlo estimate of E[log ||gamma||_HS] over iid innovations.
/// Negative values certify the contraction condition for L2 solutions.
MCEstimate lyapunov_l2(const FGarchSpec& spec, const InnovationGen& gen, std::int64_t reps);

enum class NormKind { hs, sup };

/// Monte Carlo estimate of E[||gamma||^nu]; `sup` uses the sup norm of the
/// row-integrated kernel (the contraction gauge for continuous solutions).
MCEstimate moment_norm(const FGarchSpec& spec, const InnovationGen& gen, double nu,
                       std::int64_t reps, NormKind kind);

/// Truncated series solution sum_{k=0}^{K} Gamma_{i,k} delta evaluated by
/// backward iteration over the innovation history (most recent first).
Curve series_solution(const FGarchSpec& spec, const std::vector<Curve>& eps_history, int K);

struct CouplingRow {
    int ell = 0;
    double mean = 0.0;
    double se = 0.0;
};

/// For each ell, mean L2 distance between paired volatilities sharing the
/// ell most recent innovations (independent copies beyond), estimated over
/// `reps` replications with series depth `depth`.
std::vector<CouplingRow> coupling_decay(const FGarchSpec& spec, const InnovationGen& gen,
                                        const std::vector<int>& ells, std::int64_t reps,
                                        int depth = 64);

}  // namespace fgarch
