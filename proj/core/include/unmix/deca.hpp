#pragma once

#include <cstdint>
#include <vector>

#include "unmix/geometry.hpp"
#include "unmix/rng.hpp"
#include "unmix/types.hpp"

namespace unmix {

/// Dirichlet mixture prior over abundance vectors.
struct DirichletMixture {
    Vector weights; // K, positive, sums to 1
    Matrix alphas;  // K x N, rows are concentration vectors

    Index components() const { return weights.size(); }
    Index dimension() const { return alphas.cols(); }
    void validate() const;
};

/// Log density of Dirichlet(alpha) at an interior simplex point, taken with
/// respect to the (N-1)-dimensional coordinate measure. Returns -inf for
/// boundary points (treated as outside the support).
double dirichlet_logpdf(const Vector& s, const Vector& alpha);

/// log sum_k gamma_k D(s; alpha_k), max-shifted for stability.
double mixture_logpdf(const Vector& s, const DirichletMixture& prior);

struct EmResult {
    DirichletMixture mixture;
    std::vector<double> loglik_trace; // total data log-likelihood per iteration
};

/// Fits a K-component Dirichlet mixture to abundance columns by EM.
/// Columns are clipped to the interior (at 1e-9) and renormalized first.
/// E-step: mixture responsibilities; M-step: responsibility means for the
/// weights and a damped Newton step per concentration vector. The recorded
/// trace is nondecreasing.
EmResult em_fit_mixture(const Matrix& abundances, int n_components, int iters, Rng& rng);

struct DecaConfig {
    int outer_iters = 60;
    int em_iters = 4;   // prior refinement passes per outer round
    double tol = 1e-8;  // relative log-likelihood change stop
    double clip = 1e-9; // interior clipping floor for abundances
    int max_backtracks = 30;
    double step_init = 1.0;
    bool uniform_prior = false; // pin the prior at K = 1, alpha = 1

    void validate() const;
};

struct DecaState {
    Matrix b; // inverse mixing, reduced coordinates
    DirichletMixture prior;
    std::vector<double> loglik_trace;
    bool stalled = false;
};

/// Average per-pixel log-likelihood of the noiseless model:
///   log |det B| + (1/T) sum_t log p(B y_t; prior).
/// Each By column is clipped at `clip`, renormalized to the simplex, and then
/// scored; any entry below -clip means the point left the support and the
/// value is -inf.
double loglik_noiseless(const Matrix& b, const Matrix& reduced_data,
                        const DirichletMixture& prior, double clip = 1e-9);

/// Analytic gradient of loglik_noiseless in B, including the renormalization
/// chain rule; clipped coordinates contribute zero.
Matrix grad_loglik_noiseless(const Matrix& b, const Matrix& reduced_data,
                             const DirichletMixture& prior, double clip = 1e-9);

/// Alternating maximizer: EM refinement of the prior on S = BY, then
/// projected gradient ascent of B along the column-sum constraint B'1 = q
/// with backtracking. The trace is nondecreasing; if every backtrack fails
/// the current state is returned with `stalled` set.
DecaState deca(const Matrix& reduced_data, int n_endmembers, int n_components,
               const DecaConfig& config, Rng& rng);

/// Feasible starting point: the VCA simplex inflated about its centroid until
/// it encloses all pixels, inverted, and projected onto B'1 = q.
Matrix deca_default_init(const Matrix& reduced_data, Rng& rng);

// --- Gaussian-mass evaluation path (the soft-constraint view) ---

struct QuadratureConfig {
    int points = 16;                // Gauss-Legendre points per panel
    double panel_width_sigmas = 2.0; // max panel width in units of sigma
    double window_sigmas = 40.0;     // integration window half-width
    int mc_samples = 100000;         // Monte-Carlo mode sample count (N > 3)
    std::uint64_t mc_seed = 0x51A7EDB811ull;
};

struct RIntegral {
    double log_mass = 0.0;  // log Gaussian mass of the simplex interior
    double std_error = 0.0; // relative standard error (Monte-Carlo mode only)
};

/// r(A, y) = log integral of the N(y, sigma^2 I) density over the interior of
/// conv(A), for a full-dimensional simplex (A is (N-1) x N). Deterministic
/// quadrature for N <= 3, stratified Monte-Carlo above.
RIntegral r_integral_detail(const EndmemberSet& simplex, const Vector& point, double sigma,
                            const QuadratureConfig& config = {});
double r_integral(const EndmemberSet& simplex, const Vector& point, double sigma,
                  const QuadratureConfig& config = {});

/// log svol(A) - (1/T) sum_t r(A, y_t); smaller is better.
double ml_objective(const EndmemberSet& simplex, const Matrix& data, double sigma,
                    const QuadratureConfig& config = {});

} // namespace unmix
