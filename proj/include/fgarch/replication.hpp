#pragma once

#include <cstdint>
#include <vector>

#include "fgarch/estimation.hpp"
#include "fgarch/preset.hpp"

namespace fgarch {

/// One row of a replication study: per-coordinate means and standard
/// deviations of the flattened parameter estimates across replications.
struct ReplicationRow {
    int n = 0;
    int reps = 0;
    int failed = 0;  // replications whose fit threw; excluded from the moments
    Eigen::VectorXd mean;  // length M + 2 M^2
    Eigen::VectorXd sd;    // empty when fewer than 2 successful replications
    Eigen::MatrixXd estimates;  // reps x (M + 2 M^2), rows of failed reps are zero
    std::vector<char> ok;       // per-replication success flags
};

/// Repeatedly simulates from the preset's process and refits with the given
/// basis. Replication r draws its own innovation stream derived from (seed, r),
/// so results are independent of the number of workers.
ReplicationRow replicate(const SimPreset& preset, const BasisSet& basis, int n, int reps,
                         std::uint64_t seed, const ThetaBounds& bounds = {},
                         const FitOptions& opts = {});

}  // namespace fgarch
