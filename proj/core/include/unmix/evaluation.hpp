#pragma once

#include <vector>

#include "unmix/types.hpp"

namespace unmix {

/// Ground-truth alignment report for an endmember estimate.
struct MatchReport {
    /// permutation[j] = estimate column assigned to truth column j.
    std::vector<int> permutation;
    Vector per_endmember_sam; // radians, one per truth column
    double mean_sam = 0.0;
    double normalized_mse = 0.0; // ||A_perm - A0||_F^2 / ||A0||_F^2
};

/// Angle between two spectra in [0, pi]. Evaluated in the 2*atan2 form, which
/// stays accurate for nearly parallel vectors where acos of a rounded cosine
/// loses half the digits.
double spectral_angle(const Vector& a, const Vector& b);

/// Minimum-cost assignment on a square cost matrix (Hungarian algorithm).
/// assignment[row] = column matched to that row.
std::vector<int> solve_assignment(const Matrix& cost);

/// Optimal endmember alignment by total spectral angle, then error metrics
/// under that alignment.
MatchReport match_endmembers(const Matrix& estimate, const Matrix& truth);

} // namespace unmix
