#pragma once

#include <random>

#include "fgarch/basis.hpp"
#include "fgarch/types.hpp"

namespace fgarch::testing {

inline Curve random_curve(Grid grid, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd v(grid.T);
    for (int j = 0; j < grid.T; ++j) v[j] = u(rng);
    return Curve(grid, std::move(v));
}

inline Kernel2D random_kernel(Grid grid, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::MatrixXd m(grid.T, grid.T);
    for (int c = 0; c < grid.T; ++c)
        for (int r = 0; r < grid.T; ++r) m(r, c) = u(rng);
    return Kernel2D(grid, std::move(m));
}

/// max |G - I| over the discrete Gram matrix of the basis.
inline double gram_error(const BasisSet& basis) {
    const Eigen::MatrixXd Phi = basis.matrix();
    const Eigen::MatrixXd G = Phi.transpose() * Phi * basis.grid.weight();
    return (G - Eigen::MatrixXd::Identity(basis.M, basis.M)).cwiseAbs().maxCoeff();
}

}  // namespace fgarch::testing
