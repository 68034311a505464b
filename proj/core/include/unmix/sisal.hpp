#pragma once

#include <vector>

#include "unmix/rng.hpp"
#include "unmix/types.hpp"

namespace unmix {

struct SisalConfig {
    double lambda = 1.0;   // hinge weight
    double mu = 0.0;       // proximal weight; <= 0 selects auto: ||Y||_F^2 / T
    double admm_rho = 1.0; // augmented-Lagrangian penalty
    int outer_iters = 80;
    int admm_iters = 200;
    double admm_tol = 1e-6; // primal/dual residual stop (normalized)
    double tol = 1e-8;      // relative objective-change stop for the outer loop
    std::vector<double> step_grid = {1.0, 0.5, 0.25, 0.125, 0.0625};

    void validate() const;
    double effective_mu(const Matrix& reduced_data) const;
};

struct SisalState {
    Matrix b; // inverse-mixing estimate, N x N
    std::vector<double> objective_trace;
    Vector q;
    double max_constraint_violation = 0.0; // over accepted iterates
};

/// Sum of negative-part magnitudes, sum_ij max(-x_ij, 0).
double hinge(const Matrix& x);

/// -log |det B|. Throws SingularMatrixError when |det| underflows.
double neg_logdet(const Matrix& b);

/// Gradient of neg_logdet: -(B^-1)'.
Matrix grad_neg_logdet(const Matrix& b);

/// -log|det B| + lambda * hinge(B Y). Returns +inf for singular B.
double sisal_objective(const Matrix& b, const Matrix& reduced_data, double lambda);

/// Proximal map of c * max(-z, 0) at v (elementwise building block of the
/// splitting solver's Z-update).
double prox_hinge(double v, double c);

/// Projection of B onto the equality constraint set {B : B' 1 = q}.
Matrix project_equality(const Matrix& b, const Vector& q);

/// One majorized subproblem: minimize the quadratic expansion of neg_logdet
/// around b_current plus lambda*hinge(BY), subject to B'1 = q. Solved by ADMM
/// on the split Z = BY; the B-block is an equality-constrained quadratic whose
/// normal matrix is factored once per call.
Matrix solve_subproblem(const Matrix& b_current, const Matrix& reduced_data, double lambda,
                        double mu, const Vector& q, const SisalConfig& config);

/// Full solver: successive convex majorization with a limited-minimization
/// step search over config.step_grid; only objective-decreasing steps are
/// accepted, so the recorded trace is nonincreasing.
SisalState sisal(const Matrix& reduced_data, const SisalConfig& config, const Matrix& b_init);

/// VCA-seeded inverse simplex, projected onto the equality constraint. Falls
/// back to a simplex around the data mean if the VCA pick is singular.
Matrix sisal_default_init(const Matrix& reduced_data, Rng& rng);

} // namespace unmix
