#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fgarch/errors.hpp"

namespace fgarch {

/// Uniform right-endpoint grid on (0,1]: points t_j = j/T for j = 1..T,
/// quadrature weight 1/T. t = 0 is deliberately excluded.
struct Grid {
    int T = 0;

    double point(int j) const { return static_cast<double>(j + 1) / T; }  // j in [0, T)
    double weight() const { return 1.0 / T; }

    Eigen::VectorXd points() const {
        Eigen::VectorXd p(T);
        for (int j = 0; j < T; ++j) p[j] = point(j);
        return p;
    }

    bool operator==(const Grid&) const = default;
};

/// A function on [0,1] represented by its values on a Grid.
struct Curve {
    Grid grid;
    Eigen::VectorXd values;

    Curve() = default;
    Curve(Grid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.T)
            throw DimensionError("Curve: value vector length does not match grid");
    }
};

/// A bivariate kernel K(t,s) on [0,1]^2, entry (j,k) = K(t_j, t_k).
struct Kernel2D {
    Grid grid;
    Eigen::MatrixXd values;

    Kernel2D() = default;
    Kernel2D(Grid g, Eigen::MatrixXd v) : grid(g), values(std::move(v)) {
        if (values.rows() != grid.T || values.cols() != grid.T)
            throw DimensionError("Kernel2D: matrix dimensions do not match grid");
    }
};

inline Curve make_curve(Grid grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v(grid.T);
    for (int j = 0; j < grid.T; ++j) v[j] = f(grid.point(j));
    return Curve(grid, std::move(v));
}

inline Curve constant_curve(Grid grid, double c) {
    return Curve(grid, Eigen::VectorXd::Constant(grid.T, c));
}

inline Curve zero_curve(Grid grid) { return constant_curve(grid, 0.0); }

inline Kernel2D make_kernel(Grid grid, const std::function<double(double, double)>& k) {
    Eigen::MatrixXd v(grid.T, grid.T);
    for (int col = 0; col < grid.T; ++col)
        for (int row = 0; row < grid.T; ++row) v(row, col) = k(grid.point(row), grid.point(col));
    return Kernel2D(grid, std::move(v));
}

inline Kernel2D zero_kernel(Grid grid) {
    return Kernel2D(grid, Eigen::MatrixXd::Zero(grid.T, grid.T));
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw DimensionError(std::string(where) + ": grid mismatch");
}

}  // namespace fgarch
