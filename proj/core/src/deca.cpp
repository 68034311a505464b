#include "unmix/deca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "unmix/errors.hpp"
#include "unmix/quadrature.hpp"
#include "unmix/sisal.hpp"
#include "unmix/special_functions.hpp"
#include "unmix/vca.hpp"

namespace unmix {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDetFloor = 1e-300;
} // namespace

void DirichletMixture::validate() const {
    if (weights.size() < 1) throw std::invalid_argument("DirichletMixture: no components");
    if (alphas.rows() != weights.size())
        throw std::invalid_argument("DirichletMixture: weights/alphas mismatch");
    if (weights.minCoeff() <= 0.0)
        throw std::invalid_argument("DirichletMixture: weights must be positive");
    if (std::abs(weights.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("DirichletMixture: weights must sum to 1");
    if (alphas.minCoeff() <= 0.0)
        throw std::invalid_argument("DirichletMixture: concentrations must be positive");
}

double dirichlet_logpdf(const Vector& s, const Vector& alpha) {
    if (s.size() != alpha.size()) throw std::invalid_argument("dirichlet_logpdf: shape mismatch");
    if (alpha.minCoeff() <= 0.0) throw std::invalid_argument("dirichlet_logpdf: alpha must be positive");
    if (s.minCoeff() <= 0.0) return -kInf; // boundary / outside the support
    double value = std::lgamma(alpha.sum());
    for (Index i = 0; i < alpha.size(); ++i)
        value += -std::lgamma(alpha(i)) + (alpha(i) - 1.0) * std::log(s(i));
    return value;
}

double mixture_logpdf(const Vector& s, const DirichletMixture& prior) {
    prior.validate();
    const Index k = prior.components();
    std::vector<double> terms(static_cast<std::size_t>(k));
    for (Index c = 0; c < k; ++c)
        terms[static_cast<std::size_t>(c)] =
            std::log(prior.weights(c)) + dirichlet_logpdf(s, prior.alphas.row(c).transpose());
    return log_sum_exp(terms.data(), static_cast<int>(k));
}

namespace {

/// Clips entries up to `clip` and renormalizes each column onto the simplex.
Matrix clip_to_interior(const Matrix& s, double clip) {
    Matrix out = s.cwiseMax(clip);
    for (Index t = 0; t < out.cols(); ++t) out.col(t) /= out.col(t).sum();
    return out;
}

/// Per-component log normalization constants of the Dirichlet densities.
Vector mixture_norm_constants(const DirichletMixture& prior) {
    Vector consts(prior.components());
    for (Index c = 0; c < prior.components(); ++c) {
        const auto alpha = prior.alphas.row(c);
        double v = std::lgamma(alpha.sum());
        for (Index i = 0; i < alpha.size(); ++i) v -= std::lgamma(alpha(i));
        consts(c) = v;
    }
    return consts;
}

struct EStep {
    Matrix responsibilities; // K x T
    double loglik = 0.0;     // total over pixels
};

/// E-step on interior abundances S with cached logs L = log(S).
EStep e_step(const Matrix& log_s, const DirichletMixture& prior) {
    const Index k = prior.components();
    const Index t = log_s.cols();
    Matrix scores = (prior.alphas.array() - 1.0).matrix() * log_s; // K x T
    const Vector consts = mixture_norm_constants(prior);
    for (Index c = 0; c < k; ++c)
        scores.row(c).array() += consts(c) + std::log(prior.weights(c));

    EStep out;
    out.responsibilities.resize(k, t);
    for (Index j = 0; j < t; ++j) {
        const double m = scores.col(j).maxCoeff();
        const Vector shifted = (scores.col(j).array() - m).exp();
        const double total = shifted.sum();
        out.responsibilities.col(j) = shifted / total;
        out.loglik += m + std::log(total);
    }
    return out;
}

/// Weighted Dirichlet log-likelihood of one component (the EM Q-term without
/// the weight entropy): R*(lgamma(a0) - sum lgamma(a_i)) + sum (a_i-1) L_i.
double component_q(const Vector& alpha, double resp_total, const Vector& weighted_logs) {
    double q = resp_total * std::lgamma(alpha.sum());
    for (Index i = 0; i < alpha.size(); ++i)
        q += -resp_total * std::lgamma(alpha(i)) + (alpha(i) - 1.0) * weighted_logs(i);
    return q;
}

/// Moment-matching starting point for a weighted Dirichlet fit.
Vector moment_alpha(const Matrix& s, const Vector& resp_row) {
    const Index n = s.rows();
    const double total = resp_row.sum();
    if (total <= 0.0) return Vector::Ones(n);
    const Vector mean = (s * resp_row) / total;
    Vector var = Vector::Zero(n);
    for (Index j = 0; j < s.cols(); ++j)
        var += resp_row(j) * (s.col(j) - mean).cwiseAbs2();
    var /= total;

    std::vector<double> candidates;
    for (Index i = 0; i < n; ++i) {
        if (var(i) > 1e-12 && mean(i) > 0.0 && mean(i) < 1.0) {
            const double est = mean(i) * (1.0 - mean(i)) / var(i) - 1.0;
            if (est > 0.0) candidates.push_back(est);
        }
    }
    double a0 = static_cast<double>(n);
    if (!candidates.empty()) {
        std::nth_element(candidates.begin(), candidates.begin() + candidates.size() / 2,
                         candidates.end());
        a0 = candidates[candidates.size() / 2];
    }
    a0 = std::clamp(a0, 0.5, 1e4);
    return (a0 * mean).cwiseMax(1e-3);
}

/// Damped Newton ascent on the component Q; never decreases it.
Vector fit_component_alpha(const Vector& alpha_init, double resp_total,
                           const Vector& weighted_logs, int newton_iters = 25,
                           int max_halvings = 50) {
    Vector alpha = alpha_init;
    if (resp_total <= 0.0) return alpha;
    double q = component_q(alpha, resp_total, weighted_logs);
    for (int iter = 0; iter < newton_iters; ++iter) {
        const double a0 = alpha.sum();
        const double psi0 = digamma(a0);
        Vector grad(alpha.size());
        for (Index i = 0; i < alpha.size(); ++i)
            grad(i) = resp_total * (psi0 - digamma(alpha(i))) + weighted_logs(i);

        // H = R (c 11' - diag(z)); invert through the rank-one update.
        const double c = trigamma(a0);
        Vector z(alpha.size());
        for (Index i = 0; i < alpha.size(); ++i) z(i) = trigamma(alpha(i));
        const Vector h = grad / resp_total;
        double sum_hz = 0.0, sum_1z = 0.0;
        for (Index i = 0; i < alpha.size(); ++i) {
            sum_hz += h(i) / z(i);
            sum_1z += 1.0 / z(i);
        }
        const double denom = 1.0 - c * sum_1z;
        if (denom == 0.0) break;
        const double s = -sum_hz / denom;
        Vector step(alpha.size());
        for (Index i = 0; i < alpha.size(); ++i) step(i) = (c * s - h(i)) / z(i);
        // Newton update is alpha - H^-1 g = alpha - step.

        double beta = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < max_halvings; ++halving) {
            const Vector trial = alpha - beta * step;
            if (trial.minCoeff() > 0.0) {
                const double q_trial = component_q(trial, resp_total, weighted_logs);
                if (q_trial >= q) {
                    alpha = trial;
                    const double gain = q_trial - q;
                    q = q_trial;
                    accepted = true;
                    if (gain < 1e-12 * (1.0 + std::abs(q))) iter = newton_iters; // converged
                    break;
                }
            }
            beta *= 0.5;
        }
        if (!accepted) break; // keep the previous alpha
    }
    return alpha;
}

/// M-step over all components; warm-starts from the current prior.
void m_step(const Matrix& s, const Matrix& log_s, const Matrix& resp, DirichletMixture* prior) {
    const Index k = resp.rows();
    const double t = static_cast<double>(resp.cols());
    Vector weights = resp.rowwise().sum() / t;
    weights = weights.cwiseMax(1e-12);
    weights /= weights.sum();
    prior->weights = weights;
    for (Index c = 0; c < k; ++c) {
        const Vector resp_row = resp.row(c).transpose();
        const double resp_total = resp_row.sum();
        const Vector weighted_logs = log_s * resp_row;
        const Vector alpha = fit_component_alpha(prior->alphas.row(c).transpose(), resp_total,
                                                 weighted_logs);
        prior->alphas.row(c) = alpha.transpose();
    }
}

/// k-means++-style hard seeding of responsibilities.
Matrix seed_responsibilities(const Matrix& s, int n_components, Rng& rng) {
    const Index t = s.cols();
    std::vector<Index> centers;
    centers.push_back(static_cast<Index>(rng.below(static_cast<std::uint64_t>(t))));
    Vector dist2 = (s.colwise() - s.col(centers[0])).colwise().squaredNorm().transpose();
    while (static_cast<int>(centers.size()) < n_components) {
        const double total = dist2.sum();
        Index pick;
        if (total <= 0.0) {
            pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(t)));
        } else {
            double target = rng.uniform() * total;
            pick = t - 1;
            for (Index j = 0; j < t; ++j) {
                target -= dist2(j);
                if (target <= 0.0) {
                    pick = j;
                    break;
                }
            }
        }
        centers.push_back(pick);
        const Vector alt = (s.colwise() - s.col(pick)).colwise().squaredNorm().transpose();
        dist2 = dist2.cwiseMin(alt);
    }

    Matrix resp = Matrix::Zero(n_components, t);
    for (Index j = 0; j < t; ++j) {
        Index best = 0;
        double best_d = kInf;
        for (int c = 0; c < n_components; ++c) {
            const double d = (s.col(j) - s.col(centers[static_cast<std::size_t>(c)])).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        resp(best, j) = 1.0;
    }
    // No component may start empty; hand it the pixel farthest from its owner.
    for (int c = 0; c < n_components; ++c) {
        if (resp.row(c).sum() > 0.0) continue;
        Index far = 0;
        dist2.maxCoeff(&far);
        resp.col(far).setZero();
        resp(c, far) = 1.0;
    }
    return resp;
}

DirichletMixture fresh_prior(const Matrix& s, const Matrix& log_s, const Matrix& resp) {
    const Index k = resp.rows();
    DirichletMixture prior;
    prior.weights = (resp.rowwise().sum() / static_cast<double>(resp.cols())).cwiseMax(1e-12);
    prior.weights /= prior.weights.sum();
    prior.alphas.resize(k, s.rows());
    for (Index c = 0; c < k; ++c) {
        const Vector resp_row = resp.row(c).transpose();
        const Vector init = moment_alpha(s, resp_row);
        prior.alphas.row(c) =
            fit_component_alpha(init, resp_row.sum(), log_s * resp_row).transpose();
    }
    return prior;
}

} // namespace

EmResult em_fit_mixture(const Matrix& abundances, int n_components, int iters, Rng& rng) {
    if (n_components < 1) throw std::invalid_argument("em_fit_mixture: need K >= 1");
    if (iters < 1) throw std::invalid_argument("em_fit_mixture: need iters >= 1");
    if (abundances.cols() < n_components)
        throw std::invalid_argument("em_fit_mixture: fewer pixels than components");

    const Matrix s = clip_to_interior(abundances, 1e-9);
    const Matrix log_s = s.array().log().matrix();

    const Matrix hard = seed_responsibilities(s, n_components, rng);
    EmResult result;
    result.mixture = fresh_prior(s, log_s, hard);

    double previous = -kInf;
    for (int iter = 0; iter < iters; ++iter) {
        const EStep e = e_step(log_s, result.mixture);
        result.loglik_trace.push_back(e.loglik);
        if (iter > 0 && std::abs(e.loglik - previous) < 1e-8 * (1.0 + std::abs(previous))) break;
        previous = e.loglik;
        m_step(s, log_s, e.responsibilities, &result.mixture);
    }
    return result;
}

void DecaConfig::validate() const {
    if (outer_iters < 1 || em_iters < 1 || max_backtracks < 1)
        throw std::invalid_argument("DecaConfig: iteration counts must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("DecaConfig: tol must be positive");
    if (!(clip > 0.0) || clip >= 1e-2)
        throw std::invalid_argument("DecaConfig: clip must lie in (0, 1e-2)");
    if (!(step_init > 0.0)) throw std::invalid_argument("DecaConfig: step_init must be positive");
}

namespace {

/// Shared core of the likelihood and its gradient. Returns false when some
/// column left the support (value is then -inf).
bool interior_abundances(const Matrix& b, const Matrix& reduced_data, double clip, Matrix* s_out,
                         Matrix* raw_out) {
    const Matrix raw = b * reduced_data;
    if ((raw.array() < -clip).any()) return false;
    if (raw_out) *raw_out = raw;
    *s_out = clip_to_interior(raw, clip);
    return true;
}

double logdet_or_nan(const Matrix& b) {
    const double det = b.partialPivLu().determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor)
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(std::abs(det));
}

} // namespace

double loglik_noiseless(const Matrix& b, const Matrix& reduced_data,
                        const DirichletMixture& prior, double clip) {
    prior.validate();
    if (b.rows() != b.cols() || b.rows() != reduced_data.rows())
        throw std::invalid_argument("loglik_noiseless: shape mismatch");
    const double logdet = logdet_or_nan(b);
    if (std::isnan(logdet)) return -kInf;
    Matrix s;
    if (!interior_abundances(b, reduced_data, clip, &s, nullptr)) return -kInf;
    const Matrix log_s = s.array().log().matrix();
    const EStep e = e_step(log_s, prior);
    return logdet + e.loglik / static_cast<double>(reduced_data.cols());
}

Matrix grad_loglik_noiseless(const Matrix& b, const Matrix& reduced_data,
                             const DirichletMixture& prior, double clip) {
    prior.validate();
    const Index t = reduced_data.cols();
    Eigen::PartialPivLU<Matrix> lu(b);
    const double det = lu.determinant();
    if (!std::isfinite(det) || std::abs(det) < kDetFloor)
        throw SingularMatrixError("grad_loglik_noiseless: singular B");
    Matrix s, raw;
    if (!interior_abundances(b, reduced_data, clip, &s, &raw))
        throw std::invalid_argument("grad_loglik_noiseless: data outside the support");

    const Matrix log_s = s.array().log().matrix();
    const EStep e = e_step(log_s, prior);

    // d logpdf / d s, blended over components by responsibility.
    const Matrix g_s =
        (((prior.alphas.array() - 1.0).matrix().transpose() * e.responsibilities).array() /
         s.array())
            .matrix(); // N x T

    // Chain rule through the renormalization s = u / sum(u):
    // g_u = (g_s - (g_s . s) 1) / sum(u); clipped coordinates are constant.
    Matrix g_u(s.rows(), t);
    for (Index j = 0; j < t; ++j) {
        const double sum_u = raw.col(j).cwiseMax(clip).sum();
        const double inner = g_s.col(j).dot(s.col(j));
        g_u.col(j) = (g_s.col(j).array() - inner).matrix() / sum_u;
        for (Index i = 0; i < s.rows(); ++i)
            if (raw(i, j) < clip) g_u(i, j) = 0.0;
    }

    return lu.inverse().transpose() + (g_u * reduced_data.transpose()) / static_cast<double>(t);
}

Matrix deca_default_init(const Matrix& reduced_data, Rng& rng) {
    const Index n = reduced_data.rows();
    const Vector q = equality_vector(reduced_data);

    Matrix vertices = vca(reduced_data, static_cast<int>(n), rng).endmembers;
    {
        const double det = vertices.partialPivLu().determinant();
        if (!std::isfinite(det) || std::abs(det) < kDetFloor) {
            // Degenerate pick; restart from a simplex around the data mean.
            Matrix b = sisal_default_init(reduced_data, rng);
            vertices = b.partialPivLu().inverse();
        }
    }

    const Vector centroid = vertices.rowwise().mean();
    double inflation = 1.0;
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix candidate = centroid.replicate(1, n) + inflation * (vertices.colwise() - centroid);
        Eigen::PartialPivLU<Matrix> lu(candidate);
        const double det = lu.determinant();
        if (std::isfinite(det) && std::abs(det) > kDetFloor) {
            Matrix b = project_equality(lu.inverse(), q);
            if ((b * reduced_data).minCoeff() > 1e-6) return b;
        }
        inflation *= 1.1;
    }
    throw DataError("deca_default_init: could not find an enclosing simplex");
}

DecaState deca(const Matrix& reduced_data, int n_endmembers, int n_components,
               const DecaConfig& config, Rng& rng) {
    config.validate();
    const Index n = reduced_data.rows();
    if (n != n_endmembers)
        throw std::invalid_argument("deca: reduced data must have N rows");
    if (n_components < 1) throw std::invalid_argument("deca: need K >= 1");

    DecaState state;
    state.b = deca_default_init(reduced_data, rng);

    const bool fixed_prior = config.uniform_prior;
    if (fixed_prior) {
        state.prior.weights = Vector::Ones(1);
        state.prior.alphas = Matrix::Ones(1, n);
    } else {
        const Matrix s = clip_to_interior(state.b * reduced_data, config.clip);
        const Matrix log_s = s.array().log().matrix();
        const Matrix hard = seed_responsibilities(s, n_components, rng);
        state.prior = fresh_prior(s, log_s, hard);
    }

    double loglik = loglik_noiseless(state.b, reduced_data, state.prior, config.clip);
    if (!std::isfinite(loglik))
        throw DataError("deca: initial state has non-finite likelihood");
    state.loglik_trace.push_back(loglik);

    double step = config.step_init;
    for (int outer = 0; outer < config.outer_iters; ++outer) {
        // (i) prior refinement with B fixed (EM over the mixture labels).
        if (!fixed_prior) {
            const Matrix s = clip_to_interior(state.b * reduced_data, config.clip);
            const Matrix log_s = s.array().log().matrix();
            for (int pass = 0; pass < config.em_iters; ++pass) {
                const EStep e = e_step(log_s, state.prior);
                m_step(s, log_s, e.responsibilities, &state.prior);
            }
            loglik = loglik_noiseless(state.b, reduced_data, state.prior, config.clip);
        }

        // (ii) ascent on B along the constraint plane B'1 = q.
        Matrix grad = grad_loglik_noiseless(state.b, reduced_data, state.prior, config.clip);
        grad.rowwise() -= (grad.colwise().sum() / static_cast<double>(n)); // zero column sums
        bool moved = false;
        double eta = step;
        for (int bt = 0; bt < config.max_backtracks; ++bt) {
            const Matrix trial = state.b + eta * grad;
            const double value = loglik_noiseless(trial, reduced_data, state.prior, config.clip);
            if (value > loglik) {
                state.b = trial;
                loglik = value;
                moved = true;
                break;
            }
            eta *= 0.5;
        }
        if (moved) step = std::min(eta * 2.0, 1e6);

        const double previous = state.loglik_trace.back();
        state.loglik_trace.push_back(loglik);
        const double gain = loglik - previous;
        if (gain > config.tol * (1.0 + std::abs(previous))) continue;
        // No meaningful progress left. A dead B-step with a visibly nonzero
        // ascent direction is a stall; otherwise this is plain convergence.
        if (!moved) state.stalled = grad.norm() > 1e-6 * (1.0 + std::abs(loglik));
        break;
    }
    return state;
}

// --- Gaussian mass of a simplex ---

namespace {

double log_or_neg_inf(double mass) {
    if (!(mass > 0.0)) return -kInf;
    return std::log(mass);
}

double segment_mass(double lo, double hi, double y, double sigma, const QuadratureConfig& cfg) {
    const double wlo = std::max(lo, y - cfg.window_sigmas * sigma);
    const double whi = std::min(hi, y + cfg.window_sigmas * sigma);
    if (!(whi > wlo)) return 0.0;
    const auto breaks = make_breakpoints(wlo, whi, cfg.panel_width_sigmas * sigma);
    return integrate_panels([&](double x) { return normal_pdf(y - x, sigma); }, breaks,
                            cfg.points);
}

/// Vertical section [ylo, yhi] of a triangle at abscissa x; false when empty.
bool triangle_section(const Matrix& v, double x, double* ylo, double* yhi) {
    double lo = kInf, hi = -kInf;
    for (int e = 0; e < 3; ++e) {
        const Vector p = v.col(e);
        const Vector r = v.col((e + 1) % 3);
        const double x0 = p(0), x1 = r(0);
        if (x0 == x1) {
            if (x0 == x) {
                lo = std::min({lo, p(1), r(1)});
                hi = std::max({hi, p(1), r(1)});
            }
            continue;
        }
        if ((x - x0) * (x - x1) > 0.0) continue; // x outside the edge's span
        const double w = (x - x0) / (x1 - x0);
        const double yi = p(1) + w * (r(1) - p(1));
        lo = std::min(lo, yi);
        hi = std::max(hi, yi);
    }
    if (!(hi >= lo)) return false;
    *ylo = lo;
    *yhi = hi;
    return true;
}

double triangle_mass(const Matrix& v, const Vector& y, double sigma,
                     const QuadratureConfig& cfg) {
    const double xlo = v.row(0).minCoeff();
    const double xhi = v.row(0).maxCoeff();
    const double wlo = std::max(xlo, y(0) - cfg.window_sigmas * sigma);
    const double whi = std::min(xhi, y(0) + cfg.window_sigmas * sigma);
    if (!(whi > wlo)) return 0.0;
    // Split panels at the vertex abscissas, where the section kinks.
    const std::vector<double> kinks = {v(0, 0), v(0, 1), v(0, 2)};
    const auto breaks = make_breakpoints(wlo, whi, cfg.panel_width_sigmas * sigma, kinks);
    const auto integrand = [&](double x) {
        double ylo, yhi;
        if (!triangle_section(v, x, &ylo, &yhi)) return 0.0;
        const double strip = normal_cdf((yhi - y(1)) / sigma) - normal_cdf((ylo - y(1)) / sigma);
        return normal_pdf(y(0) - x, sigma) * strip;
    };
    return integrate_panels(integrand, breaks, cfg.points);
}

RIntegral simplex_mass_mc(const EndmemberSet& simplex, const Vector& y, double sigma,
                          const QuadratureConfig& cfg) {
    const Index d = simplex.bands();
    const Index n = simplex.count();
    const double vol = svol(simplex);
    RIntegral out;
    if (!(vol > 0.0)) {
        out.log_mass = -kInf;
        return out;
    }
    Rng rng(cfg.mc_seed);
    const double norm = std::pow(std::sqrt(2.0 * std::numbers::pi) * sigma,
                                 -static_cast<double>(d));
    const int count = cfg.mc_samples;
    double sum = 0.0, sum_sq = 0.0;
    Vector exponentials(n);
    for (int i = 0; i < count; ++i) {
        // Uniform simplex point via exponential spacings; the first draw is
        // stratified over the sample index.
        const double u0 = (static_cast<double>(i) + rng.uniform()) / count;
        exponentials(0) = -std::log(1.0 - u0);
        for (Index j = 1; j < n; ++j) exponentials(j) = -std::log(rng.uniform_open());
        const Vector s = exponentials / exponentials.sum();
        const Vector x = simplex.matrix * s;
        const double f = norm * std::exp(-(y - x).squaredNorm() / (2.0 * sigma * sigma));
        sum += f;
        sum_sq += f * f;
    }
    const double mean = sum / count;
    out.log_mass = log_or_neg_inf(mean * vol);
    if (mean > 0.0 && count > 1) {
        const double var = std::max(0.0, sum_sq / count - mean * mean);
        out.std_error = std::sqrt(var / count) / mean;
    }
    return out;
}

} // namespace

RIntegral r_integral_detail(const EndmemberSet& simplex, const Vector& point, double sigma,
                            const QuadratureConfig& config) {
    if (!(sigma > 0.0)) throw std::invalid_argument("r_integral: sigma must be positive");
    const Index d = simplex.bands();
    const Index n = simplex.count();
    if (n != d + 1)
        throw std::invalid_argument("r_integral: simplex must be full-dimensional ((N-1) x N)");
    if (point.size() != d) throw std::invalid_argument("r_integral: point dimension mismatch");
    if (config.points < 2 || config.mc_samples < 2)
        throw std::invalid_argument("r_integral: invalid quadrature config");

    RIntegral out;
    if (n == 2) {
        const double lo = std::min(simplex.matrix(0, 0), simplex.matrix(0, 1));
        const double hi = std::max(simplex.matrix(0, 0), simplex.matrix(0, 1));
        out.log_mass = log_or_neg_inf(segment_mass(lo, hi, point(0), sigma, config));
    } else if (n == 3) {
        out.log_mass = log_or_neg_inf(triangle_mass(simplex.matrix, point, sigma, config));
    } else {
        out = simplex_mass_mc(simplex, point, sigma, config);
    }
    return out;
}

double r_integral(const EndmemberSet& simplex, const Vector& point, double sigma,
                  const QuadratureConfig& config) {
    return r_integral_detail(simplex, point, sigma, config).log_mass;
}

double ml_objective(const EndmemberSet& simplex, const Matrix& data, double sigma,
                    const QuadratureConfig& config) {
    if (data.rows() != simplex.bands())
        throw std::invalid_argument("ml_objective: data dimension mismatch");
    if (data.cols() < 1) throw std::invalid_argument("ml_objective: empty data");
    const double vol = svol(simplex);
    if (!(vol > 0.0)) throw RankError("ml_objective: degenerate simplex");
    double mean_r = 0.0;
    for (Index t = 0; t < data.cols(); ++t)
        mean_r += r_integral(simplex, data.col(t), sigma, config);
    mean_r /= static_cast<double>(data.cols());
    return std::log(vol) - mean_r;
}

} // namespace unmix
