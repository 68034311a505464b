#pragma once

#include "unmix/scene.hpp"
#include "unmix/types.hpp"

namespace unmix {

/// A candidate set of endmembers, columns a_1..a_N.
struct EndmemberSet {
    Matrix matrix; // bands x endmembers

    Index bands() const { return matrix.rows(); }
    Index count() const { return matrix.cols(); }

    /// Throws unless the columns are affinely independent.
    void validate() const;
};

/// Difference frame [a_1 - a_N, ..., a_{N-1} - a_N].
Matrix affine_differences(const Matrix& endmembers);

/// True (N-1)-dimensional simplex volume det(Abar' Abar)^(1/2) / (N-1)!.
/// Returns 0 for affinely dependent columns.
double svol(const EndmemberSet& endmembers);

/// |det(A)| for a square endmember set.
double gram_volume(const EndmemberSet& endmembers);

/// Linear dimensionality reduction onto the top-N left singular subspace.
struct AffineReduction {
    Matrix basis;        // bands x N, orthonormal columns
    Matrix reduced_data; // N x pixels
};

/// Throws RankError when the N-th singular value of the data falls below
/// 1e-10 times the first.
AffineReduction reduce(const SpectralImage& image, int n_endmembers);

/// Maps reduced-coordinate endmembers back to band space: basis * reduced.
EndmemberSet lift(const AffineReduction& reduction, const Matrix& reduced_endmembers);

/// Minimum-norm solution q of Y' q = 1 (the pseudo-inverse applied to the
/// all-ones vector). Under the noiseless mixture model the system is
/// consistent and q is its unique solution.
Vector equality_vector(const Matrix& reduced_data);

/// Optimal value of min ||A0 x||^2 subject to x' 1 = 1, via the KKT system.
double min_affine_norm(const Matrix& mixing);

/// Relative residual |det(A'A) - C det(Abar' Abar)| / det(A'A) with
/// C = min_affine_norm(truth_mixing). Requires aff(A) = aff(truth); verified
/// by projection and rejected with std::invalid_argument otherwise.
double verify_gram_ratio(const EndmemberSet& estimate, const Matrix& truth_mixing);

/// The frames F = [I; -1']' (N x N-1) and G = [F, (1/N) 1] (N x N).
/// det(G) = 1 for every N.
struct SimplexFrames {
    Matrix f;
    Matrix g;
};
SimplexFrames simplex_frames(int n);

/// Subspace identities behind the det(A'A) = C det(Abar' Abar) argument,
/// checked on sampled points via mutual projection residuals:
///  (a) aff(A0) = span(Abar0) + d,
///  (b) span(Abar0) = span(A0 U),
///  (c) {x : x' 1 = 1} = span(U) + (1/N) 1.
struct Lemma1Checks {
    bool affine_hull_shift = false;
    bool column_span = false;
    bool sum_one_plane = false;
    bool all() const { return affine_hull_shift && column_span && sum_one_plane; }
};
Lemma1Checks lemma1_checks(const Matrix& mixing, const Matrix& semi_orthogonal,
                           const Vector& affine_point);

} // namespace unmix
