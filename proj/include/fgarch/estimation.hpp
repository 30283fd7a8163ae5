#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgarch/basis.hpp"
#include "fgarch/types.hpp"

namespace fgarch {

/// Projected parameters of the volatility recursion: intercept coefficients d,
/// operator coefficient matrices A (squared-observation feedback) and B
/// (volatility feedback). Flattened order is [d, A row-major, B row-major],
/// a vector of length M + 2 M^2.
struct Theta {
    Eigen::VectorXd d;
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;

    int M() const { return static_cast<int>(d.size()); }
    int dim() const { return M() + 2 * M() * M(); }

    Eigen::VectorXd flatten() const;
    static Theta unflatten(const Eigen::VectorXd& v, int M);
    static Theta zero(int M);
};

/// Parameter-space box: |det A| >= c1 keeps A invertible, ||B||_F <= c2 < 1
/// keeps the recursion contracting.
struct ThetaBounds {
    double c1 = 1e-6;
    double c2 = 0.98;

    void validate() const;
};

/// Projections of the squared sample curves onto the basis: row i holds
/// y_i^(2), the M-vector of coefficients <y_i^2, phi_m>.
struct CoefSeries {
    Eigen::MatrixXd y2;  // n x M
    BasisSet basis;

    int n() const { return static_cast<int>(y2.rows()); }
    int M() const { return static_cast<int>(y2.cols()); }
};

/// Squares each curve pointwise and projects onto the basis.
CoefSeries project_sample(const std::vector<Curve>& sample, const BasisSet& basis);

/// Truncated volatility-coefficient recursion: shat_1 = 0,
/// shat_i = d + A y2_{i-1} + B shat_{i-1}. Returns rows for i = 2..n.
/// Telescopes exactly to the truncated double sum of powers of B.
Eigen::MatrixXd shat_recursion(const Theta& theta, const CoefSeries& series);

/// Least-squares criterion S_n = sum_{i=2}^n ||y2_i - shat_i||^2.
double objective(const Theta& theta, const CoefSeries& series);

/// Exact analytic gradient of `objective` via forward-propagated derivative
/// recursions (length M + 2 M^2, flattened order of Theta).
Eigen::VectorXd gradient(const Theta& theta, const CoefSeries& series);

struct FitOptions {
    int n_starts = 8;
    int max_iterations = 500;
    double gradient_tol = 1e-8;  // relative to max(1, |objective|)
    double entry_box = 10.0;     // |theta_j| <= entry_box
    int lbfgs_history = 10;
    std::uint64_t seed = 0;  // randomized starts
    int min_n = 20;
    bool compute_cov = false;
};

struct FitResult {
    Theta theta_hat;
    double objective_value = 0.0;
    bool converged = false;
    int n_starts_used = 0;
    bool c1_active = false;
    bool c2_active = false;
    std::optional<Eigen::MatrixXd> cov;
    Curve delta_hat;
    Kernel2D alpha_hat;
    Kernel2D beta_hat;
    /// Nonnegativity of the reconstructed delta/alpha/beta is not imposed by
    /// the optimizer; violations are reported here.
    std::vector<std::string> warnings;
};

/// Multi-start projected quasi-Newton least squares over the parameter box.
/// Start 0 is moment-based (lag-1 regression plus the mean identity); the
/// rest are randomized within bounds. B is projected onto the Frobenius ball
/// of radius c2 and |det A| >= c1 is maintained by a log-barrier.
FitResult fit(const CoefSeries& series, const ThetaBounds& bounds = {},
              const FitOptions& opts = {});

/// Plug-in sandwich covariance Qhat^{-1} Mhat Qhat^{-1} / n of theta_hat,
/// with Qhat the mean Gram matrix of the recursion Jacobians and Mhat the
/// mean outer product of the per-observation scores J_i^T r_i (the
/// heteroskedasticity-robust middle; the conditional residual variance
/// scales with the squared volatility, so the naive middle built from
/// separate averages badly understates the variance). Throws SingularError
/// when Qhat is numerically singular.
Eigen::MatrixXd asymptotic_cov(const Theta& theta_hat, const CoefSeries& series);

/// Intercept estimator ybar2 - (alpha_hat + beta_hat) ybar2 from the
/// stationarity identity; consistent when the kernel estimates are.
Curve delta_tilde(const Kernel2D& alpha_hat, const Kernel2D& beta_hat,
                  const std::vector<Curve>& sample);

struct VolatilityFilterResult {
    std::vector<Curve> curves;  // fitted volatility curves for i = 2..n
    std::int64_t clipped = 0;   // grid values clipped at zero
};

/// Reconstructs fitted volatility curves from the coefficient recursion,
/// clipping negative grid values at zero.
VolatilityFilterResult volatility_filter(const Theta& theta_hat, const CoefSeries& series,
                                         const BasisSet& basis);

}  // namespace fgarch
