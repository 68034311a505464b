#include "unmix/sisal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "unmix/errors.hpp"
#include "unmix/geometry.hpp"
#include "unmix/vca.hpp"

namespace unmix {

namespace {
constexpr double kDetFloor = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

void SisalConfig::validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("SisalConfig: lambda must be >= 0");
    if (!(admm_rho > 0.0)) throw std::invalid_argument("SisalConfig: admm_rho must be positive");
    if (outer_iters < 1 || admm_iters < 1)
        throw std::invalid_argument("SisalConfig: iteration counts must be positive");
    if (!(tol > 0.0) || !(admm_tol > 0.0))
        throw std::invalid_argument("SisalConfig: tolerances must be positive");
    if (step_grid.empty()) throw std::invalid_argument("SisalConfig: empty step grid");
    for (double a : step_grid)
        if (!(a > 0.0) || !(a <= 1.0))
            throw std::invalid_argument("SisalConfig: step grid values must lie in (0, 1]");
}

double SisalConfig::effective_mu(const Matrix& reduced_data) const {
    if (mu > 0.0) return mu;
    return reduced_data.squaredNorm() / static_cast<double>(reduced_data.cols());
}

double hinge(const Matrix& x) {
    return (-x.array()).cwiseMax(0.0).sum();
}

double neg_logdet(const Matrix& b) {
    const double det = b.partialPivLu().determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor)
        throw SingularMatrixError("neg_logdet: |det B| underflows");
    return -std::log(std::abs(det));
}

Matrix grad_neg_logdet(const Matrix& b) {
    Eigen::PartialPivLU<Matrix> lu(b);
    const double det = lu.determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor)
        throw SingularMatrixError("grad_neg_logdet: |det B| underflows");
    return -lu.inverse().transpose();
}

double sisal_objective(const Matrix& b, const Matrix& reduced_data, double lambda) {
    const double det = b.partialPivLu().determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor) return kInf;
    return -std::log(std::abs(det)) + lambda * hinge(b * reduced_data);
}

double prox_hinge(double v, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("prox_hinge: c must be positive");
    if (v > 0.0) return v;
    if (v >= -c) return 0.0;
    return v + c;
}

Matrix project_equality(const Matrix& b, const Vector& q) {
    const Index n = b.rows();
    const Vector correction = (q - b.transpose() * Vector::Ones(n)) / static_cast<double>(n);
    return b + Vector::Ones(n) * correction.transpose();
}

namespace {

/// Subproblem objective: <G, B - Bk> + mu ||B - Bk||^2 + lambda hinge(BY).
/// (The constant f(Bk) is dropped; comparisons only ever use differences.)
double majorized_objective(const Matrix& b, const Matrix& b_current, const Matrix& grad,
                           const Matrix& reduced_data, double lambda, double mu) {
    const Matrix delta = b - b_current;
    return grad.cwiseProduct(delta).sum() + mu * delta.squaredNorm() +
           lambda * hinge(b * reduced_data);
}

} // namespace

Matrix solve_subproblem(const Matrix& b_current, const Matrix& reduced_data, double lambda,
                        double mu, const Vector& q, const SisalConfig& config) {
    const Index n = b_current.rows();
    const Index t = reduced_data.cols();
    if (b_current.cols() != n || reduced_data.rows() != n || q.size() != n)
        throw std::invalid_argument("solve_subproblem: shape mismatch");
    if (!(mu > 0.0)) throw std::invalid_argument("solve_subproblem: mu must be positive");

    const double rho = config.admm_rho;
    const Matrix grad = grad_neg_logdet(b_current); // throws if singular

    // B-update normal matrix, shared by every ADMM iteration:
    //   B (2 mu I + rho Y Y') = 2 mu Bk - G + rho W Y' - 1 nu',
    // with the multiplier nu eliminated through the column-sum constraint.
    Matrix h = rho * (reduced_data * reduced_data.transpose());
    h.diagonal().array() += 2.0 * mu;
    Eigen::LLT<Matrix> llt(h);
    if (llt.info() != Eigen::Success)
        throw SingularMatrixError("solve_subproblem: normal matrix factorization failed");
    const Vector hq = h * q;

    const Matrix base = 2.0 * mu * b_current - grad;
    Matrix b = b_current;
    Matrix z = b * reduced_data;
    Matrix dual = Matrix::Zero(n, t);
    const double scale = std::sqrt(static_cast<double>(n * t));

    for (int iter = 0; iter < config.admm_iters; ++iter) {
        const Matrix w = z - dual;
        const Matrix r = base + rho * (w * reduced_data.transpose());
        const Vector nu = (r.transpose() * Vector::Ones(n) - hq) / static_cast<double>(n);
        b = llt.solve((r - Vector::Ones(n) * nu.transpose()).transpose()).transpose();

        const Matrix by = b * reduced_data;
        const Matrix z_old = std::move(z);
        const double c = lambda / rho;
        z = (by + dual).unaryExpr([c](double v) {
            if (v > 0.0) return v;
            if (v >= -c) return 0.0;
            return v + c;
        });
        dual += by - z;

        const double primal = (by - z).norm() / scale;
        const double dual_res = rho * (z - z_old).norm() / scale;
        if (primal < config.admm_tol && dual_res < config.admm_tol) break;
    }

    // The majorized problem is strongly convex, so the minimizer can only
    // improve on a feasible starting point; guard against an under-converged
    // splitting iterate anyway.
    if ((b_current.transpose() * Vector::Ones(n) - q).lpNorm<Eigen::Infinity>() < 1e-8) {
        const double at_output = majorized_objective(b, b_current, grad, reduced_data, lambda, mu);
        const double at_start = majorized_objective(b_current, b_current, grad, reduced_data, lambda, mu);
        if (!(at_output <= at_start + 1e-9)) return b_current;
    }
    return b;
}

SisalState sisal(const Matrix& reduced_data, const SisalConfig& config, const Matrix& b_init) {
    config.validate();
    const Index n = reduced_data.rows();
    if (b_init.rows() != n || b_init.cols() != n)
        throw std::invalid_argument("sisal: b_init must be N x N");

    const Vector q = equality_vector(reduced_data);
    const double mu = config.effective_mu(reduced_data);

    Matrix b = b_init;
    if ((b.transpose() * Vector::Ones(n) - q).lpNorm<Eigen::Infinity>() > 1e-6)
        b = project_equality(b, q);
    double objective = sisal_objective(b, reduced_data, config.lambda);
    if (!std::isfinite(objective))
        throw SingularMatrixError("sisal: b_init is singular (after projection)");

    SisalState state;
    state.q = q;
    state.objective_trace.push_back(objective);
    state.max_constraint_violation =
        (b.transpose() * Vector::Ones(n) - q).lpNorm<Eigen::Infinity>();

    for (int outer = 0; outer < config.outer_iters; ++outer) {
        const Matrix candidate = solve_subproblem(b, reduced_data, config.lambda, mu, q, config);
        const Matrix step = candidate - b;

        double best_objective = kInf;
        Matrix best_b;
        int finite_candidates = 0;
        for (double alpha : config.step_grid) {
            const Matrix trial = b + alpha * step;
            const double value = sisal_objective(trial, reduced_data, config.lambda);
            if (!std::isfinite(value)) continue;
            ++finite_candidates;
            if (value < best_objective) {
                best_objective = value;
                best_b = trial;
            }
        }
        if (finite_candidates == 0)
            throw SingularMatrixError("sisal: every step candidate is singular at outer iteration " +
                                      std::to_string(outer));

        const double improvement = objective - best_objective;
        if (!(improvement > config.tol * std::max(1.0, std::abs(objective)))) break;

        b = best_b;
        objective = best_objective;
        state.objective_trace.push_back(objective);
        state.max_constraint_violation =
            std::max(state.max_constraint_violation,
                     (b.transpose() * Vector::Ones(n) - q).lpNorm<Eigen::Infinity>());
    }

    state.b = std::move(b);
    return state;
}

Matrix sisal_default_init(const Matrix& reduced_data, Rng& rng) {
    const Index n = reduced_data.rows();
    const Vector q = equality_vector(reduced_data);

    VcaResult seed = vca(reduced_data, static_cast<int>(n), rng);
    Eigen::PartialPivLU<Matrix> lu(seed.endmembers);
    double det = lu.determinant();
    if (std::isfinite(det) && std::abs(det) > kDetFloor)
        return project_equality(lu.inverse(), q);

    // Degenerate pick: build a simplex around the data mean from scaled
    // principal directions instead.
    const Vector mean = reduced_data.rowwise().mean();
    Matrix centered = reduced_data.colwise() - mean;
    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU);
    const double spread = std::max(centered.norm() / std::sqrt(static_cast<double>(reduced_data.cols())), 1e-6);
    Matrix vertices(n, n);
    for (Index j = 0; j < n; ++j) {
        Vector offset = Vector::Zero(n);
        if (j + 1 < n) {
            offset = svd.matrixU().col(j);
        } else {
            for (Index i = 0; i + 1 < n; ++i) offset -= svd.matrixU().col(i);
            offset /= std::sqrt(static_cast<double>(n - 1));
        }
        vertices.col(j) = mean + 2.0 * spread * offset;
    }
    Eigen::PartialPivLU<Matrix> lu2(vertices);
    det = lu2.determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor)
        throw SingularMatrixError("sisal_default_init: could not build a nonsingular seed");
    return project_equality(lu2.inverse(), q);
}

} // namespace unmix
