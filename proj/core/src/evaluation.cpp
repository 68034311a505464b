#include "unmix/evaluation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace unmix {

double spectral_angle(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("spectral_angle: dimension mismatch");
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("spectral_angle: zero vector");
    const Vector ua = a / na;
    const Vector ub = b / nb;
    return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

std::vector<int> solve_assignment(const Matrix& cost) {
    if (cost.rows() != cost.cols() || cost.rows() < 1)
        throw std::invalid_argument("solve_assignment: cost matrix must be square");
    const int n = static_cast<int>(cost.rows());
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Hungarian algorithm with row/column potentials, O(n^3); 1-based arrays
    // with a dummy column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> way(n + 1, 0), matched_row(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        matched_row[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = matched_row[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (matched_row[j0] != 0);
        do {
            const int j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j)
        if (matched_row[j] > 0) assignment[matched_row[j] - 1] = j - 1;
    return assignment;
}

MatchReport match_endmembers(const Matrix& estimate, const Matrix& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw std::invalid_argument("match_endmembers: shape mismatch");
    const int n = static_cast<int>(truth.cols());

    // cost(i, j) = angle between estimate column i and truth column j.
    Matrix cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost(i, j) = spectral_angle(estimate.col(i), truth.col(j));

    const std::vector<int> est_to_truth = solve_assignment(cost);

    MatchReport report;
    report.permutation.assign(n, -1);
    for (int i = 0; i < n; ++i) report.permutation[est_to_truth[i]] = i;
    report.per_endmember_sam.resize(n);
    Matrix permuted(truth.rows(), n);
    for (int j = 0; j < n; ++j) {
        permuted.col(j) = estimate.col(report.permutation[j]);
        report.per_endmember_sam(j) = cost(report.permutation[j], j);
    }
    report.mean_sam = report.per_endmember_sam.mean();
    report.normalized_mse = (permuted - truth).squaredNorm() / truth.squaredNorm();
    return report;
}

} // namespace unmix
