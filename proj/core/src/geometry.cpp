#include "unmix/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "unmix/errors.hpp"
#include "unmix/rng.hpp"

namespace unmix {

namespace {

constexpr double kRankCutoff = 1e-10;

/// Orthonormal basis of the column span, truncated at the relative cutoff.
Matrix orthonormal_span(const Matrix& m, double rel_cutoff = kRankCutoff) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_cutoff * sv(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

double span_residual(const Matrix& basis, const Vector& v) {
    const double norm = v.norm();
    if (norm == 0.0) return 0.0;
    return (v - basis * (basis.transpose() * v)).norm() / norm;
}

} // namespace

Matrix affine_differences(const Matrix& endmembers) {
    const Index n = endmembers.cols();
    if (n < 2) throw std::invalid_argument("affine_differences: need at least 2 columns");
    return endmembers.leftCols(n - 1).colwise() - endmembers.col(n - 1);
}

void EndmemberSet::validate() const {
    if (matrix.rows() < 1 || matrix.cols() < 2)
        throw std::invalid_argument("EndmemberSet: need an M x N matrix with N >= 2");
    const Matrix bar = affine_differences(matrix);
    Eigen::JacobiSVD<Matrix> svd(bar);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kRankCutoff * sv(0))
        throw RankError("EndmemberSet: columns are affinely dependent");
}

double svol(const EndmemberSet& endmembers) {
    const Index n = endmembers.count();
    if (n < 2) throw std::invalid_argument("svol: need at least 2 endmembers");
    const Matrix bar = affine_differences(endmembers.matrix);
    Eigen::JacobiSVD<Matrix> svd(bar);
    double vol = 1.0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        vol *= svd.singularValues()(i);
    for (Index k = 2; k < n; ++k) vol /= static_cast<double>(k);
    return vol;
}

double gram_volume(const EndmemberSet& endmembers) {
    if (endmembers.matrix.rows() != endmembers.matrix.cols())
        throw std::invalid_argument("gram_volume: endmember matrix must be square");
    return std::abs(endmembers.matrix.partialPivLu().determinant());
}

AffineReduction reduce(const SpectralImage& image, int n_endmembers) {
    image.validate();
    if (n_endmembers < 1 || n_endmembers > image.bands() || n_endmembers > image.pixels())
        throw std::invalid_argument("reduce: n_endmembers out of range");
    Eigen::BDCSVD<Matrix> svd(image.data, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(n_endmembers - 1) <= kRankCutoff * sv(0))
        throw RankError("reduce: data rank below the requested subspace dimension");
    AffineReduction red;
    red.basis = svd.matrixU().leftCols(n_endmembers);
    red.reduced_data = red.basis.transpose() * image.data;
    return red;
}

EndmemberSet lift(const AffineReduction& reduction, const Matrix& reduced_endmembers) {
    if (reduction.basis.cols() != reduced_endmembers.rows())
        throw std::invalid_argument("lift: basis/endmember shape mismatch");
    return EndmemberSet{reduction.basis * reduced_endmembers};
}

Vector equality_vector(const Matrix& reduced_data) {
    // q = (Y')^+ 1. With Y = W S V', the pseudo-inverse of Y' is W S^-1 V'.
    Eigen::BDCSVD<Matrix> svd(reduced_data, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kRankCutoff * sv(0))
        throw RankError("equality_vector: reduced data is not full row rank");
    const Vector projected = svd.matrixV().transpose() * Vector::Ones(reduced_data.cols());
    return svd.matrixU() * (projected.array() / sv.array()).matrix();
}

double min_affine_norm(const Matrix& mixing) {
    const Index n = mixing.cols();
    {
        Eigen::JacobiSVD<Matrix> svd(mixing);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= kRankCutoff * sv(0))
            throw RankError("min_affine_norm: mixing matrix is rank deficient");
    }
    // KKT system of min x'(A'A)x s.t. 1'x = 1.
    Matrix kkt = Matrix::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = 2.0 * mixing.transpose() * mixing;
    kkt.topRightCorner(n, 1).setOnes();
    kkt.bottomLeftCorner(1, n).setOnes();
    Vector rhs = Vector::Zero(n + 1);
    rhs(n) = 1.0;
    const Vector sol = kkt.fullPivLu().solve(rhs);
    return (mixing * sol.head(n)).squaredNorm();
}

double verify_gram_ratio(const EndmemberSet& estimate, const Matrix& truth_mixing) {
    const Matrix& a = estimate.matrix;
    if (a.rows() != truth_mixing.rows() || a.cols() != truth_mixing.cols())
        throw std::invalid_argument("verify_gram_ratio: shape mismatch");
    const Index n = a.cols();

    // aff(A) ?= aff(A0): columns of A minus a reference point of aff(A0) must
    // lie in span(Abar0).
    const Matrix span0 = orthonormal_span(affine_differences(truth_mixing));
    const Vector ref = truth_mixing.col(n - 1);
    const double scale = a.norm();
    for (Index j = 0; j < n; ++j) {
        const Vector delta = a.col(j) - ref;
        const double res = (delta - span0 * (span0.transpose() * delta)).norm();
        if (res > 1e-8 * scale)
            throw std::invalid_argument("verify_gram_ratio: affine hulls differ");
    }

    const double lhs = (a.transpose() * a).determinant();
    const Matrix bar = affine_differences(a);
    const double rhs = min_affine_norm(truth_mixing) * (bar.transpose() * bar).determinant();
    return std::abs(lhs - rhs) / lhs;
}

SimplexFrames simplex_frames(int n) {
    if (n < 2) throw std::invalid_argument("simplex_frames: n must be >= 2");
    SimplexFrames frames;
    frames.f = Matrix::Zero(n, n - 1);
    frames.f.topRows(n - 1) = Matrix::Identity(n - 1, n - 1);
    frames.f.row(n - 1).setConstant(-1.0);
    frames.g = Matrix::Zero(n, n);
    frames.g.leftCols(n - 1) = frames.f;
    frames.g.col(n - 1).setConstant(1.0 / n);
    return frames;
}

Lemma1Checks lemma1_checks(const Matrix& mixing, const Matrix& semi_orthogonal,
                           const Vector& affine_point) {
    const Index n = mixing.cols();
    const Matrix& u = semi_orthogonal;
    if (u.rows() != n || u.cols() != n - 1)
        throw std::invalid_argument("lemma1_checks: U must be N x (N-1)");
    if ((u.transpose() * u - Matrix::Identity(n - 1, n - 1)).norm() > 1e-8)
        throw std::invalid_argument("lemma1_checks: U is not semi-orthogonal");
    if ((u.transpose() * Vector::Ones(n)).norm() > 1e-8)
        throw std::invalid_argument("lemma1_checks: U is not orthogonal to the ones vector");
    if (affine_point.size() != mixing.rows())
        throw std::invalid_argument("lemma1_checks: affine point has wrong dimension");

    const Matrix bar = affine_differences(mixing);
    const Matrix span_bar = orthonormal_span(bar);

    // d must itself lie in aff(A0); reuse the shift-by-a_N representation.
    if (span_residual(span_bar, affine_point - mixing.col(n - 1)) > 1e-8)
        throw std::invalid_argument("lemma1_checks: point is not in aff(A0)");

    constexpr double kTol = 1e-8;
    const int samples = 8;
    Rng rng(0x1e3a41u); // fixed stream: the checks are deterministic

    Lemma1Checks out;

    // (a) aff(A0) = span(Abar0) + d, both inclusions on sampled points.
    out.affine_hull_shift = true;
    for (int k = 0; k < samples; ++k) {
        Vector x(n);
        for (Index i = 0; i < n; ++i) x(i) = rng.normal();
        x.array() += (1.0 - x.sum()) / n; // project onto the sum-one plane
        const Vector p = mixing * x;
        if (span_residual(span_bar, p - affine_point) > kTol) out.affine_hull_shift = false;

        Vector z(n - 1);
        for (Index i = 0; i < n - 1; ++i) z(i) = rng.normal();
        const Vector q = bar * z + affine_point;
        // q is in aff(A0) iff (q - a_N) lies in span(Abar0).
        if (span_residual(span_bar, q - mixing.col(n - 1)) > kTol) out.affine_hull_shift = false;
    }

    // (b) span(Abar0) = span(A0 U), mutual column inclusion.
    const Matrix span_au = orthonormal_span(mixing * u);
    out.column_span = true;
    for (Index j = 0; j < bar.cols(); ++j)
        if (span_residual(span_au, bar.col(j)) > kTol) out.column_span = false;
    const Matrix au = mixing * u;
    for (Index j = 0; j < au.cols(); ++j)
        if (span_residual(span_bar, au.col(j)) > kTol) out.column_span = false;

    // (c) {x : x'1 = 1} = span(U) + (1/N) 1.
    out.sum_one_plane = true;
    const Vector center = Vector::Constant(n, 1.0 / n);
    for (int k = 0; k < samples; ++k) {
        Vector x(n);
        for (Index i = 0; i < n; ++i) x(i) = rng.normal();
        x.array() += (1.0 - x.sum()) / n;
        if (span_residual(u, x - center) > kTol) out.sum_one_plane = false;

        Vector z(n - 1);
        for (Index i = 0; i < n - 1; ++i) z(i) = rng.normal();
        const Vector y = u * z + center;
        if (std::abs(y.sum() - 1.0) > kTol * std::max(1.0, y.norm())) out.sum_one_plane = false;
    }
    return out;
}

} // namespace unmix
