#include "unmix/vca.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

#include "unmix/errors.hpp"

namespace unmix {

namespace {

/// argmax over |direction' data| with an optional exclusion mask.
Index masked_select(const Matrix& data, const Vector& direction, const std::vector<bool>* taken,
                    double* peak_out) {
    Index best = -1;
    double best_value = -1.0;
    for (Index t = 0; t < data.cols(); ++t) {
        if (taken && (*taken)[static_cast<std::size_t>(t)]) continue;
        const double value = std::abs(direction.dot(data.col(t)));
        if (value > best_value) {
            best_value = value;
            best = t;
        }
    }
    if (best < 0) throw DataError("vca: no selectable pixel remains");
    if (peak_out) *peak_out = best_value;
    return best;
}

} // namespace

Index ppi_select(const Matrix& data, const Vector& direction) {
    if (data.cols() < 1) throw std::invalid_argument("ppi_select: empty image");
    if (direction.size() != data.rows())
        throw std::invalid_argument("ppi_select: direction dimension mismatch");
    if (direction.norm() == 0.0) throw std::invalid_argument("ppi_select: zero direction");
    return masked_select(data, direction, nullptr, nullptr);
}

Vector orthogonal_direction(const Matrix& identified, Rng& rng) {
    const Index m = identified.rows();
    const Index k = identified.cols();
    if (k >= m)
        throw std::invalid_argument("orthogonal_direction: no orthogonal complement left");

    Matrix basis;
    if (k > 0) {
        Eigen::HouseholderQR<Matrix> qr(identified);
        basis = qr.householderQ() * Matrix::Identity(m, k);
    }
    for (;;) {
        Vector g(m);
        for (Index i = 0; i < m; ++i) g(i) = rng.normal();
        if (k > 0) g -= basis * (basis.transpose() * g);
        const double norm = g.norm();
        if (norm >= 1e-8) return g / norm;
        // Draw landed (numerically) inside the identified span; try again.
    }
}

VcaResult vca(const Matrix& data, int n_endmembers, Rng& rng) {
    const Index m = data.rows();
    const Index t = data.cols();
    if (n_endmembers < 1) throw std::invalid_argument("vca: n_endmembers must be positive");
    if (n_endmembers > m || n_endmembers > t)
        throw std::invalid_argument("vca: n_endmembers exceeds min(bands, pixels)");

    VcaResult result;
    result.endmembers.resize(m, n_endmembers);
    std::vector<bool> taken(static_cast<std::size_t>(t), false);

    for (int k = 0; k < n_endmembers; ++k) {
        const Matrix identified = result.endmembers.leftCols(k);
        const Vector direction = orthogonal_direction(identified, rng);
        double peak = 0.0;
        const Index pick = masked_select(data, direction, &taken, &peak);
        taken[static_cast<std::size_t>(pick)] = true;
        result.indices.push_back(pick);
        result.endmembers.col(k) = data.col(pick);
        result.projection_peaks.push_back(peak);
        ++result.projections_used;
    }
    return result;
}

} // namespace unmix
