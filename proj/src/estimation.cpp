#include "fgarch/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "fgarch/rng.hpp"

namespace fgarch {

Eigen::VectorXd Theta::flatten() const {
    const int m = M();
    Eigen::VectorXd v(dim());
    v.head(m) = d;
    int idx = m;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v[idx++] = A(r, c);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v[idx++] = B(r, c);
    return v;
}

Theta Theta::unflatten(const Eigen::VectorXd& v, int M) {
    if (v.size() != M + 2 * M * M)
        throw DimensionError("Theta::unflatten: vector length != M + 2 M^2");
    Theta th = Theta::zero(M);
    th.d = v.head(M);
    int idx = M;
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) th.A(r, c) = v[idx++];
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) th.B(r, c) = v[idx++];
    return th;
}

Theta Theta::zero(int M) {
    Theta th;
    th.d = Eigen::VectorXd::Zero(M);
    th.A = Eigen::MatrixXd::Zero(M, M);
    th.B = Eigen::MatrixXd::Zero(M, M);
    return th;
}

void ThetaBounds::validate() const {
    if (!(c1 > 0.0)) throw ArgumentError("ThetaBounds: c1 must be positive");
    if (!(c2 > 0.0 && c2 < 1.0)) throw ArgumentError("ThetaBounds: c2 must lie in (0,1)");
}

CoefSeries project_sample(const std::vector<Curve>& sample, const BasisSet& basis) {
    CoefSeries series;
    series.basis = basis;
    series.y2.resize(static_cast<int>(sample.size()), basis.M);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        require_same_grid(sample[i].grid, basis.grid, "project_sample");
        const Curve sq(sample[i].grid, sample[i].values.array().square());
        series.y2.row(i) = project(sq, basis).transpose();
    }
    return series;
}

namespace {

struct RecursionSums {
    double sse = 0.0;
    Eigen::VectorXd grad;  // d sse / d theta
    Eigen::MatrixXd Gsum;  // sum_i (J_i^T r_i)(J_i^T r_i)^T, score outer products
    Eigen::MatrixXd Qsum;  // sum_i J_i^T J_i
};

// Shared forward pass over the truncated recursion: residuals, the exact
// Jacobian recursion J_i = D_i + B J_{i-1}, and the sums needed by the
// gradient and the sandwich covariance. M = 1 dominates the replication
// workloads, so it gets a scalar fast path.
RecursionSums run_recursion(const Theta& th, const Eigen::MatrixXd& y2, bool want_grad,
                            bool want_cov) {
    const int n = static_cast<int>(y2.rows());
    const int M = static_cast<int>(y2.cols());
    const int p = M + 2 * M * M;
    const bool need_jac = want_grad || want_cov;

    RecursionSums out;
    if (want_grad) out.grad = Eigen::VectorXd::Zero(p);
    if (want_cov) {
        out.Gsum = Eigen::MatrixXd::Zero(p, p);
        out.Qsum = Eigen::MatrixXd::Zero(p, p);
    }

    if (M == 1) {
        const double d = th.d[0], a = th.A(0, 0), b = th.B(0, 0);
        double shat = 0.0, Jd = 0.0, Ja = 0.0, Jb = 0.0;
        double gd = 0.0, ga = 0.0, gb = 0.0;
        double g00 = 0.0, g01 = 0.0, g02 = 0.0, g11 = 0.0, g12 = 0.0, g22 = 0.0;
        double q00 = 0.0, q01 = 0.0, q02 = 0.0, q11 = 0.0, q12 = 0.0, q22 = 0.0;
        for (int i = 1; i < n; ++i) {
            const double yprev = y2(i - 1, 0);
            if (need_jac) {
                const double Jdn = 1.0 + b * Jd;
                const double Jan = yprev + b * Ja;
                const double Jbn = shat + b * Jb;
                Jd = Jdn;
                Ja = Jan;
                Jb = Jbn;
            }
            const double snew = d + a * yprev + b * shat;
            const double r = y2(i, 0) - snew;
            out.sse += r * r;
            if (want_grad) {
                gd -= 2.0 * Jd * r;
                ga -= 2.0 * Ja * r;
                gb -= 2.0 * Jb * r;
            }
            if (want_cov) {
                const double sd = Jd * r, sa = Ja * r, sb = Jb * r;
                g00 += sd * sd;
                g01 += sd * sa;
                g02 += sd * sb;
                g11 += sa * sa;
                g12 += sa * sb;
                g22 += sb * sb;
                q00 += Jd * Jd;
                q01 += Jd * Ja;
                q02 += Jd * Jb;
                q11 += Ja * Ja;
                q12 += Ja * Jb;
                q22 += Jb * Jb;
            }
            shat = snew;
        }
        if (want_grad) out.grad << gd, ga, gb;
        if (want_cov) {
            out.Gsum << g00, g01, g02, g01, g11, g12, g02, g12, g22;
            out.Qsum << q00, q01, q02, q01, q11, q12, q02, q12, q22;
        }
        return out;
    }

    Eigen::VectorXd shat = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd snew(M), r(M);
    Eigen::MatrixXd J, Jn;
    if (need_jac) {
        J = Eigen::MatrixXd::Zero(M, p);
        Jn.resize(M, p);
    }
    for (int i = 1; i < n; ++i) {
        if (need_jac) {
            Jn.noalias() = th.B * J;
            for (int m = 0; m < M; ++m) Jn(m, m) += 1.0;
            for (int m = 0; m < M; ++m) Jn.row(m).segment(M + m * M, M) += y2.row(i - 1);
            for (int m = 0; m < M; ++m)
                Jn.row(m).segment(M + M * M + m * M, M) += shat.transpose();
            J.swap(Jn);
        }
        snew = th.d;
        snew.noalias() += th.A * y2.row(i - 1).transpose();
        snew.noalias() += th.B * shat;
        r = y2.row(i).transpose() - snew;
        out.sse += r.squaredNorm();
        if (want_grad) out.grad.noalias() -= 2.0 * (J.transpose() * r);
        if (want_cov) {
            const Eigen::VectorXd score = J.transpose() * r;
            out.Gsum.noalias() += score * score.transpose();
            out.Qsum.noalias() += J.transpose() * J;
        }
        shat = snew;
    }
    return out;
}

}  // namespace

Eigen::MatrixXd shat_recursion(const Theta& theta, const CoefSeries& series) {
    const int n = series.n();
    const int M = series.M();
    if (theta.M() != M) throw DimensionError("shat_recursion: theta dimension != series M");
    Eigen::MatrixXd shat(std::max(n - 1, 0), M);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(M);
    for (int i = 1; i < n; ++i) {
        Eigen::VectorXd s = theta.d;
        s.noalias() += theta.A * series.y2.row(i - 1).transpose();
        s.noalias() += theta.B * prev;
        shat.row(i - 1) = s.transpose();
        prev = s;
    }
    return shat;
}

double objective(const Theta& theta, const CoefSeries& series) {
    if (theta.M() != series.M()) throw DimensionError("objective: theta dimension != series M");
    return run_recursion(theta, series.y2, false, false).sse;
}

Eigen::VectorXd gradient(const Theta& theta, const CoefSeries& series) {
    if (theta.M() != series.M()) throw DimensionError("gradient: theta dimension != series M");
    return run_recursion(theta, series.y2, true, false).grad;
}

namespace {

// Box clamp plus projection of the B block onto the Frobenius ball.
Eigen::VectorXd project_theta(Eigen::VectorXd x, int M, const ThetaBounds& bounds, double box) {
    x = x.cwiseMax(-box).cwiseMin(box);
    auto Bblk = x.segment(M + M * M, M * M);
    const double nb = Bblk.norm();
    if (nb > bounds.c2) Bblk *= bounds.c2 / nb;
    return x;
}

// Least-squares criterion plus log-barrier keeping |det A| > c1.
// Returns +inf outside the barrier domain (the line search rejects there).
double augmented_value_grad(const Eigen::VectorXd& x, int M, const Eigen::MatrixXd& y2,
                            const ThetaBounds& bounds, double mu, Eigen::VectorXd& g) {
    const Theta th = Theta::unflatten(x, M);
    RecursionSums sums = run_recursion(th, y2, true, false);
    g = std::move(sums.grad);

    double adet;
    Eigen::MatrixXd AinvT;
    if (M == 1) {
        adet = std::abs(th.A(0, 0));
        if (adet <= bounds.c1) return std::numeric_limits<double>::infinity();
        AinvT = Eigen::MatrixXd::Constant(1, 1, 1.0 / th.A(0, 0));
    } else {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(th.A);
        adet = std::abs(lu.determinant());
        if (!(adet > bounds.c1)) return std::numeric_limits<double>::infinity();
        AinvT = lu.inverse().transpose();
    }
    // d|det A|/dA = |det A| A^{-T}
    const double coef = -mu * adet / (adet - bounds.c1);
    int idx = M;
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) g[idx++] += coef * AinvT(r, c);
    return sums.sse - mu * std::log(adet - bounds.c1);
}

struct StartOutcome {
    Eigen::VectorXd x;
    double f = std::numeric_limits<double>::infinity();
    double gnorm = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    int iters = 0;
};

// Projected L-BFGS with Armijo backtracking. Convergence is declared on the
// sup norm of the projected gradient step relative to max(1, |f|).
StartOutcome lbfgs_projected(const Eigen::VectorXd& x0, int M, const Eigen::MatrixXd& y2,
                             const ThetaBounds& bounds, double mu, const FitOptions& opts) {
    const auto project = [&](const Eigen::VectorXd& v) {
        return project_theta(v, M, bounds, opts.entry_box);
    };

    StartOutcome out;
    Eigen::VectorXd x = project(x0);
    Eigen::VectorXd g(x.size()), gc(x.size());
    double f = augmented_value_grad(x, M, y2, bounds, mu, g);
    if (!std::isfinite(f)) {
        out.x = x;
        out.f = f;
        return out;
    }

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    double gamma = 1.0;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        out.iters = iter;
        const Eigen::VectorXd pg = x - project(x - g);
        out.gnorm = pg.lpNorm<Eigen::Infinity>();
        if (out.gnorm <= opts.gradient_tol * std::max(1.0, std::abs(f))) {
            out.converged = true;
            break;
        }

        // two-loop recursion
        Eigen::VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
            alpha[k] = rho_hist[k] * s_hist[k].dot(q);
            q -= alpha[k] * y_hist[k];
        }
        q *= gamma;
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * y_hist[k].dot(q);
            q += (alpha[k] - beta) * s_hist[k];
        }
        Eigen::VectorXd dir = -q;
        if (!(dir.dot(g) < -1e-12 * dir.norm() * g.norm())) dir = -g;

        double t = 1.0;
        bool accepted = false;
        Eigen::VectorXd cand;
        double fc = f;
        for (int ls = 0; ls < 60; ++ls) {
            cand = project(x + t * dir);
            fc = augmented_value_grad(cand, M, y2, bounds, mu, gc);
            if (std::isfinite(fc) && fc <= f + 1e-4 * g.dot(cand - x)) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // stalled; gnorm check above decides convergence

        const Eigen::VectorXd s = cand - x;
        const Eigen::VectorXd yv = gc - g;
        x = cand;
        f = fc;
        g = gc;
        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(yv);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.lbfgs_history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
            gamma = sy / yv.squaredNorm();
        }
    }

    out.x = x;
    out.f = f;
    return out;
}

// Builds the start points: one moment-based start, then randomized starts.
// Randomized entries are conjugated by the sign pattern of the sample mean so
// that whole fits are equivariant under basis sign flips.
std::vector<Eigen::VectorXd> build_starts(const CoefSeries& series, const ThetaBounds& bounds,
                                          const FitOptions& opts) {
    const int M = series.M();
    const int n = series.n();
    const Eigen::VectorXd ybar = series.y2.colwise().mean();
    Eigen::VectorXd sgn(M);
    for (int m = 0; m < M; ++m) sgn[m] = ybar[m] >= 0.0 ? 1.0 : -1.0;

    const auto det_ok = [&](const Eigen::MatrixXd& A, double floor) {
        return std::isfinite(A.sum()) &&
               std::abs(Eigen::PartialPivLU<Eigen::MatrixXd>(A).determinant()) >= floor;
    };

    std::vector<Eigen::VectorXd> starts;
    starts.reserve(opts.n_starts);

    // moment start: lag-1 regression for A, B small, d from the mean identity
    Eigen::MatrixXd C0 = Eigen::MatrixXd::Zero(M, M), C1 = Eigen::MatrixXd::Zero(M, M);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd dev = series.y2.row(i).transpose() - ybar;
        C0.noalias() += dev * dev.transpose();
        if (i > 0)
            C1.noalias() += dev * (series.y2.row(i - 1).transpose() - ybar).transpose();
    }
    C0 /= n;
    C1 /= std::max(n - 1, 1);
    Eigen::MatrixXd A0;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(C0);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive())
        A0 = ldlt.solve(C1.transpose()).transpose();
    else
        A0 = 0.3 * Eigen::MatrixXd::Identity(M, M);
    if (!A0.allFinite()) A0 = 0.3 * Eigen::MatrixXd::Identity(M, M);
    for (int tries = 0; tries < 6 && !det_ok(A0, 10.0 * bounds.c1); ++tries)
        A0 += 0.15 * Eigen::MatrixXd::Identity(M, M);
    if (!det_ok(A0, 10.0 * bounds.c1)) A0 = 0.3 * Eigen::MatrixXd::Identity(M, M);
    Eigen::MatrixXd B0 = 0.1 * Eigen::MatrixXd::Identity(M, M);
    Theta mstart;
    mstart.d = (Eigen::MatrixXd::Identity(M, M) - A0 - B0) * ybar;
    mstart.A = A0;
    mstart.B = B0;
    starts.push_back(mstart.flatten());

    for (int k = 1; k < opts.n_starts; ++k) {
        std::mt19937_64 rng = make_rng(opts.seed, StreamTag::fit_start, k);
        Eigen::MatrixXd A(M, M), B(M, M);
        const double scale = 0.7 / std::sqrt(static_cast<double>(M));
        for (int tries = 0;; ++tries) {
            for (int r = 0; r < M; ++r)
                for (int c = 0; c < M; ++c)
                    A(r, c) = sgn[r] * sgn[c] * uniform(rng, -scale, scale);
            if (det_ok(A, 10.0 * bounds.c1) || tries >= 20) break;
        }
        if (!det_ok(A, 10.0 * bounds.c1))
            A = 0.3 * Eigen::MatrixXd::Identity(M, M);
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < M; ++c) B(r, c) = sgn[r] * sgn[c] * uniform(rng, -scale, scale);
        const double bn = B.norm();
        const double btarget = uniform(rng, 0.0, 0.8 * bounds.c2);
        if (bn > 0.0) B *= btarget / bn;
        Theta th;
        th.A = A;
        th.B = B;
        th.d = (Eigen::MatrixXd::Identity(M, M) - A - B) * ybar;
        for (int m = 0; m < M; ++m) th.d[m] *= uniform(rng, 0.5, 1.5);
        starts.push_back(th.flatten());
    }
    return starts;
}

}  // namespace

FitResult fit(const CoefSeries& series, const ThetaBounds& bounds, const FitOptions& opts) {
    bounds.validate();
    const int n = series.n();
    const int M = series.M();
    if (n < opts.min_n)
        throw ArgumentError("fit: need at least " + std::to_string(opts.min_n) +
                            " observations, got " + std::to_string(n));
    if (M < 1) throw ArgumentError("fit: series has no coefficients");

    const std::vector<Eigen::VectorXd> starts = build_starts(series, bounds, opts);

    // One barrier weight for all starts, scaled off the moment start.
    const double s0 = run_recursion(Theta::unflatten(
                                        project_theta(starts[0], M, bounds, opts.entry_box), M),
                                    series.y2, false, false)
                          .sse;
    const double mu = 1e-8 * std::max(1.0, s0);

    std::vector<StartOutcome> outcomes(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < starts.size(); ++k)
        outcomes[k] = lbfgs_projected(starts[k], M, series.y2, bounds, mu, opts);

    int best = -1;
    bool any_converged = false;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        any_converged = any_converged || outcomes[k].converged;
        if (best < 0 || outcomes[k].f < outcomes[best].f) best = static_cast<int>(k);
    }
    if (!any_converged) {
        std::ostringstream oss;
        oss << "fit: no start converged within " << opts.max_iterations << " iterations;";
        for (std::size_t k = 0; k < outcomes.size(); ++k)
            oss << " start " << k << ": f=" << outcomes[k].f << " |pg|=" << outcomes[k].gnorm
                << ";";
        throw ConvergenceError(oss.str());
    }

    FitResult result;
    result.theta_hat = Theta::unflatten(outcomes[best].x, M);
    result.objective_value = objective(result.theta_hat, series);
    result.converged = outcomes[best].converged;
    result.n_starts_used = static_cast<int>(starts.size());

    const double adet =
        std::abs(Eigen::PartialPivLU<Eigen::MatrixXd>(result.theta_hat.A).determinant());
    result.c1_active = adet <= bounds.c1 * 1.05;
    result.c2_active = result.theta_hat.B.norm() >= bounds.c2 * (1.0 - 1e-6);

    result.delta_hat = reconstruct_curve(result.theta_hat.d, series.basis);
    result.alpha_hat = reconstruct_kernel(result.theta_hat.A, series.basis);
    result.beta_hat = reconstruct_kernel(result.theta_hat.B, series.basis);

    const auto warn_negative = [&](const char* name, double minval, double scale) {
        if (minval < -1e-12 * std::max(1.0, scale)) {
            std::ostringstream oss;
            oss << name << " has negative values (min " << minval
                << "); nonnegativity is not imposed by the optimizer";
            result.warnings.push_back(oss.str());
        }
    };
    warn_negative("delta_hat", result.delta_hat.values.minCoeff(),
                  result.delta_hat.values.cwiseAbs().maxCoeff());
    warn_negative("alpha_hat", result.alpha_hat.values.minCoeff(),
                  result.alpha_hat.values.cwiseAbs().maxCoeff());
    warn_negative("beta_hat", result.beta_hat.values.minCoeff(),
                  result.beta_hat.values.cwiseAbs().maxCoeff());

    if (opts.compute_cov) result.cov = asymptotic_cov(result.theta_hat, series);
    return result;
}

Eigen::MatrixXd asymptotic_cov(const Theta& theta_hat, const CoefSeries& series) {
    if (theta_hat.M() != series.M())
        throw DimensionError("asymptotic_cov: theta dimension != series M");
    const int n = series.n();
    const RecursionSums sums = run_recursion(theta_hat, series.y2, false, true);

    // middle term: mean outer product of the per-observation scores
    const Eigen::MatrixXd Mhat = sums.Gsum / n;
    const Eigen::MatrixXd Qhat = sums.Qsum / n;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Qhat);
    if (eig.info() != Eigen::Success) throw SingularError("asymptotic_cov: eigensolver failed");
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    if (!(lmin > 0.0) || lmax / lmin > 1e12) {
        std::ostringstream oss;
        oss << "asymptotic_cov: Qhat is numerically singular (eigenvalues in [" << lmin << ", "
            << lmax << "])";
        throw SingularError(oss.str());
    }
    const Eigen::MatrixXd Qinv = eig.eigenvectors() *
                                 eig.eigenvalues().cwiseInverse().asDiagonal() *
                                 eig.eigenvectors().transpose();
    Eigen::MatrixXd cov = Qinv * Mhat * Qinv / n;
    cov = ((cov + cov.transpose()) / 2.0).eval();
    return cov;
}

Curve delta_tilde(const Kernel2D& alpha_hat, const Kernel2D& beta_hat,
                  const std::vector<Curve>& sample) {
    if (sample.empty()) throw ArgumentError("delta_tilde: empty sample");
    require_same_grid(alpha_hat.grid, beta_hat.grid, "delta_tilde");
    const Grid grid = alpha_hat.grid;
    Eigen::VectorXd ybar2 = Eigen::VectorXd::Zero(grid.T);
    for (const Curve& c : sample) {
        require_same_grid(c.grid, grid, "delta_tilde");
        ybar2 += c.values.array().square().matrix();
    }
    ybar2 /= static_cast<double>(sample.size());
    const Eigen::VectorXd applied =
        (alpha_hat.values * ybar2 + beta_hat.values * ybar2) * grid.weight();
    return Curve(grid, ybar2 - applied);
}

VolatilityFilterResult volatility_filter(const Theta& theta_hat, const CoefSeries& series,
                                         const BasisSet& basis) {
    const Eigen::MatrixXd shat = shat_recursion(theta_hat, series);
    VolatilityFilterResult out;
    out.curves.reserve(shat.rows());
    for (int i = 0; i < shat.rows(); ++i) {
        Curve c = reconstruct_curve(shat.row(i).transpose(), basis);
        for (int j = 0; j < c.grid.T; ++j) {
            if (c.values[j] < 0.0) {
                c.values[j] = 0.0;
                ++out.clipped;
            }
        }
        out.curves.push_back(std::move(c));
    }
    return out;
}

}  // namespace fgarch
