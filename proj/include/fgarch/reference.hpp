#pragma once

#include "fgarch/basis.hpp"
#include "fgarch/model.hpp"

namespace fgarch::ref {

/// Serial reference implementations of the parallel kernels, written as
/// straightforward loops. Kept for testing (results must agree with the
/// OpenMP versions) and for the benchmark target.

Curve apply_kernel(const Kernel2D& K, const Curve& f);

Kernel2D covariance_kernel(const std::vector<Curve>& sample);

MCEstimate lyapunov_l2(const FGarchSpec& spec, const InnovationGen& gen, std::int64_t reps);

MCEstimate moment_norm(const FGarchSpec& spec, const InnovationGen& gen, double nu,
                       std::int64_t reps, NormKind kind);

std::vector<CouplingRow> coupling_decay(const FGarchSpec& spec, const InnovationGen& gen,
                                        const std::vector<int>& ells, std::int64_t reps,
                                        int depth = 64);

}  // namespace fgarch::ref
