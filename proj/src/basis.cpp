#include "fgarch/basis.hpp"

#include <algorithm>
#include <cmath>

namespace fgarch {

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::fourier: return "fourier";
        case BasisKind::bspline: return "bspline";
        case BasisKind::bump: return "bump";
        case BasisKind::fpca: return "fpca";
    }
    return "?";
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "fourier") return BasisKind::fourier;
    if (name == "bspline") return BasisKind::bspline;
    if (name == "bump") return BasisKind::bump;
    if (name == "fpca") return BasisKind::fpca;
    throw ArgumentError("unknown basis kind: " + name);
}

Eigen::MatrixXd BasisSet::matrix() const {
    Eigen::MatrixXd Phi(grid.T, M);
    for (int m = 0; m < M; ++m) Phi.col(m) = functions[m].values;
    return Phi;
}

namespace {

// Modified Gram-Schmidt (two passes) in the discrete inner product.
// Throws RankError when a column is numerically dependent on its predecessors.
Eigen::MatrixXd orthonormalize(Eigen::MatrixXd cols, const Grid& grid) {
    const double w = grid.weight();
    const int M = static_cast<int>(cols.cols());
    for (int m = 0; m < M; ++m) {
        const double orig = std::sqrt(cols.col(m).squaredNorm() * w);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < m; ++k)
                cols.col(m) -= (cols.col(k).dot(cols.col(m)) * w) * cols.col(k);
        const double norm = std::sqrt(cols.col(m).squaredNorm() * w);
        if (!(norm > 1e-10 * std::max(orig, 1e-30)) || norm == 0.0)
            throw RankError("orthonormalize: basis functions dependent, attainable M = " +
                                std::to_string(m),
                            m);
        cols.col(m) /= norm;
    }
    return cols;
}

Eigen::MatrixXd fourier_columns(int M, const Grid& grid) {
    Eigen::MatrixXd cols(grid.T, M);
    const double sqrt2 = std::sqrt(2.0);
    for (int j = 0; j < grid.T; ++j) {
        const double t = grid.point(j);
        for (int m = 0; m < M; ++m) {
            if (m == 0) {
                cols(j, m) = 1.0;
            } else {
                const int k = (m + 1) / 2;
                cols(j, m) = (m % 2 == 1) ? sqrt2 * std::sin(2.0 * M_PI * k * t)
                                          : sqrt2 * std::cos(2.0 * M_PI * k * t);
            }
        }
    }
    return cols;
}

// Endpoint-vanishing polynomials t^{m+1} (1-t); the first orthonormalized
// element is sqrt(30) t (1-t).
Eigen::MatrixXd bump_columns(int M, const Grid& grid) {
    Eigen::MatrixXd cols(grid.T, M);
    for (int j = 0; j < grid.T; ++j) {
        const double t = grid.point(j);
        double p = t;
        for (int m = 0; m < M; ++m) {
            cols(j, m) = p * (1.0 - t);
            p *= t;
        }
    }
    return cols;
}

// Cox-de Boor evaluation of M B-spline basis functions of order min(4, M)
// on a clamped uniform knot vector.
Eigen::MatrixXd bspline_columns(int M, const Grid& grid) {
    const int order = std::min(4, M);
    const int nknots = M + order;
    Eigen::VectorXd knots(nknots);
    const int inner = M - order;
    for (int i = 0; i < nknots; ++i) {
        if (i < order)
            knots[i] = 0.0;
        else if (i >= nknots - order)
            knots[i] = 1.0;
        else
            knots[i] = static_cast<double>(i - order + 1) / (inner + 1);
    }

    Eigen::MatrixXd cols(grid.T, M);
    std::vector<double> b(nknots - 1), bnext(nknots - 1);
    for (int j = 0; j < grid.T; ++j) {
        const double t = grid.point(j);
        for (int i = 0; i + 1 < nknots; ++i) {
            const bool last = knots[i + 1] >= 1.0;  // right-closed final interval
            b[i] = (knots[i] <= t && (t < knots[i + 1] || (last && t <= 1.0))) ? 1.0 : 0.0;
        }
        for (int ord = 2; ord <= order; ++ord) {
            for (int i = 0; i + ord < nknots; ++i) {
                double v = 0.0;
                const double den1 = knots[i + ord - 1] - knots[i];
                const double den2 = knots[i + ord] - knots[i + 1];
                if (den1 > 0.0) v += (t - knots[i]) / den1 * b[i];
                if (den2 > 0.0) v += (knots[i + ord] - t) / den2 * b[i + 1];
                bnext[i] = v;
            }
            std::swap(b, bnext);
        }
        for (int m = 0; m < M; ++m) cols(j, m) = b[m];
    }
    return cols;
}

std::vector<Curve> columns_to_curves(const Eigen::MatrixXd& cols, const Grid& grid) {
    std::vector<Curve> out;
    out.reserve(cols.cols());
    for (int m = 0; m < cols.cols(); ++m) out.emplace_back(grid, cols.col(m));
    return out;
}

}  // namespace

BasisSet make_basis(BasisKind kind, int M, Grid grid) {
    if (M < 1) throw ArgumentError("make_basis: M must be >= 1");
    if (M > grid.T)
        throw RankError("make_basis: M exceeds grid size " + std::to_string(grid.T), grid.T);
    Eigen::MatrixXd cols;
    switch (kind) {
        case BasisKind::fourier: cols = fourier_columns(M, grid); break;
        case BasisKind::bspline: cols = bspline_columns(M, grid); break;
        case BasisKind::bump: cols = bump_columns(M, grid); break;
        case BasisKind::fpca:
            throw ArgumentError("make_basis: use fpca() for the empirical basis");
    }
    BasisSet basis;
    basis.grid = grid;
    basis.M = M;
    basis.kind = kind;
    basis.functions = columns_to_curves(orthonormalize(std::move(cols), grid), grid);
    return basis;
}

Kernel2D covariance_kernel(const std::vector<Curve>& sample) {
    if (sample.size() < 2) throw ArgumentError("covariance_kernel: need at least 2 curves");
    const Grid grid = sample.front().grid;
    const int n = static_cast<int>(sample.size());
    const int T = grid.T;
    for (const Curve& c : sample) require_same_grid(grid, c.grid, "covariance_kernel");

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(T);
    for (const Curve& c : sample) mean += c.values;
    mean /= n;

    // Column j of X holds the deviations of coordinate j across the sample,
    // so each covariance cell is a contiguous dot product.
    Eigen::MatrixXd X(n, T);
    for (int i = 0; i < n; ++i) X.row(i) = (sample[i].values - mean).transpose();

    Eigen::MatrixXd D(T, T);
#pragma omp parallel for schedule(static, 8)
    for (int j = 0; j < T; ++j) {
        for (int k = j; k < T; ++k) {
            const double v = X.col(j).dot(X.col(k)) / n;
            D(j, k) = v;
            D(k, j) = v;
        }
    }
    return Kernel2D(grid, std::move(D));
}

BasisSet fpca(const std::vector<Curve>& sample, int M) {
    if (sample.size() < 2) throw ArgumentError("fpca: sample size must be >= 2");
    const Grid grid = sample.front().grid;
    const int n = static_cast<int>(sample.size());
    if (M < 1) throw ArgumentError("fpca: M must be >= 1");
    if (M > std::min(n, grid.T))
        throw RankError("fpca: M exceeds min(n, T) = " + std::to_string(std::min(n, grid.T)),
                        std::min(n, grid.T));

    const Kernel2D D = covariance_kernel(sample);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(D.values * grid.weight());
    if (eig.info() != Eigen::Success) throw InternalError("fpca: eigensolver failed");

    const int T = grid.T;
    Eigen::VectorXd lambda(T);  // nonincreasing
    for (int m = 0; m < T; ++m) lambda[m] = eig.eigenvalues()[T - 1 - m];

    const double lead = std::max(lambda[0], 0.0);
    int attainable = 0;
    while (attainable < std::min(n, T) && lambda[attainable] > lead * 1e-10 && lambda[attainable] > 0.0)
        ++attainable;
    if (M > attainable)
        throw RankError("fpca: covariance has numerical rank " + std::to_string(attainable) +
                            ", cannot supply M = " + std::to_string(M),
                        attainable);

    const double sqrtT = std::sqrt(static_cast<double>(T));
    BasisSet basis;
    basis.grid = grid;
    basis.M = M;
    basis.kind = BasisKind::fpca;
    basis.eigenvalues = lambda;
    basis.functions.reserve(M);
    for (int m = 0; m < M; ++m) {
        Eigen::VectorXd v = eig.eigenvectors().col(T - 1 - m) * sqrtT;
        int imax = 0;
        for (int j = 1; j < T; ++j)
            if (std::abs(v[j]) > std::abs(v[imax])) imax = j;
        if (v[imax] < 0.0) v = -v;
        basis.functions.emplace_back(grid, std::move(v));
    }
    return basis;
}

Eigen::VectorXd project(const Curve& f, const BasisSet& basis) {
    require_same_grid(f.grid, basis.grid, "project");
    Eigen::VectorXd c(basis.M);
    for (int m = 0; m < basis.M; ++m) c[m] = inner_product(f, basis.functions[m]);
    return c;
}

Eigen::MatrixXd project_kernel(const Kernel2D& K, const BasisSet& basis) {
    require_same_grid(K.grid, basis.grid, "project_kernel");
    const Eigen::MatrixXd Phi = basis.matrix();
    const double w = basis.grid.weight();
    return Phi.transpose() * K.values * Phi * (w * w);
}

Curve reconstruct_curve(const Eigen::VectorXd& c, const BasisSet& basis) {
    if (c.size() != basis.M) throw DimensionError("reconstruct_curve: coefficient length != M");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.grid.T);
    for (int m = 0; m < basis.M; ++m) v += c[m] * basis.functions[m].values;
    return Curve(basis.grid, std::move(v));
}

Kernel2D reconstruct_kernel(const Eigen::MatrixXd& C, const BasisSet& basis) {
    if (C.rows() != basis.M || C.cols() != basis.M)
        throw DimensionError("reconstruct_kernel: coefficient matrix is not M x M");
    const Eigen::MatrixXd Phi = basis.matrix();
    return Kernel2D(basis.grid, Phi * C * Phi.transpose());
}

int choose_m_by_explained_variance(const Eigen::VectorXd& eigenvalues, double share, int cap) {
    double total = 0.0;
    for (int m = 0; m < eigenvalues.size(); ++m) total += std::max(eigenvalues[m], 0.0);
    if (total <= 0.0) return 1;
    double cum = 0.0;
    for (int m = 0; m < eigenvalues.size(); ++m) {
        cum += std::max(eigenvalues[m], 0.0);
        if (cum / total >= share || m + 1 >= cap) return m + 1;
    }
    return std::min<int>(cap, static_cast<int>(eigenvalues.size()));
}

}  // namespace fgarch
