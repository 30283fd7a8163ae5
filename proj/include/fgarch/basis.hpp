#pragma once

#include <string>
#include <vector>

#include "fgarch/function_space.hpp"
#include "fgarch/types.hpp"

namespace fgarch {

enum class BasisKind { fourier, bspline, bump, fpca };

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// M orthonormal functions on a grid. Orthonormality is with respect to the
/// discrete inner product, enforced by Gram-Schmidt at construction, so
/// project/reconstruct round-trips are exact at the grid level.
struct BasisSet {
    Grid grid;
    int M = 0;
    BasisKind kind = BasisKind::fourier;
    std::vector<Curve> functions;
    /// fpca only: full nonincreasing spectrum of the empirical covariance
    /// operator (not just the leading M values); empty otherwise.
    Eigen::VectorXd eigenvalues;

    /// T x M matrix whose columns are the basis functions.
    Eigen::MatrixXd matrix() const;
};

/// Builds an analytic basis (fourier | bspline | bump), Gram-Schmidt corrected
/// on the grid. `bump` is the family of endpoint-vanishing polynomials
/// t^m (1-t); its first element is the normalized parabolic arch
/// sqrt(30) t (1-t) used by the shipped simulation preset.
BasisSet make_basis(BasisKind kind, int M, Grid grid);

/// Empirical covariance kernel of a sample of curves:
/// D(t_j,t_k) = (1/n) sum_i {x_i(t_j) - xbar(t_j)}{x_i(t_k) - xbar(t_k)}.
Kernel2D covariance_kernel(const std::vector<Curve>& sample);

/// Functional PCA: eigenfunctions of the discretized covariance operator
/// (1/T) D v = lambda v, unit L2 norm, sign fixed so the coordinate of
/// largest absolute value is positive. Throws RankError when M exceeds the
/// numerical rank of the covariance.
BasisSet fpca(const std::vector<Curve>& sample, int M);

/// Coefficients <f, phi_m>, m = 1..M.
Eigen::VectorXd project(const Curve& f, const BasisSet& basis);

/// Kernel coefficients C_{mm'} = <<K, phi_m (x) phi_{m'}>>.
Eigen::MatrixXd project_kernel(const Kernel2D& K, const BasisSet& basis);

/// sum_m c_m phi_m.
Curve reconstruct_curve(const Eigen::VectorXd& c, const BasisSet& basis);

/// K(t,s) = sum_{m,m'} C_{mm'} phi_m(t) phi_{m'}(s).
Kernel2D reconstruct_kernel(const Eigen::MatrixXd& C, const BasisSet& basis);

/// Smallest M whose cumulative explained variance reaches `share`, capped.
int choose_m_by_explained_variance(const Eigen::VectorXd& eigenvalues, double share = 0.70,
                                   int cap = 5);

}  // namespace fgarch
