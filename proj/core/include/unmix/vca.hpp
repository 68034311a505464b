#pragma once

#include <vector>

#include "unmix/rng.hpp"
#include "unmix/types.hpp"

namespace unmix {

struct VcaResult {
    std::vector<Index> indices;  // selected pixel columns, pairwise distinct
    Matrix endmembers;           // exact copies of the selected columns
    int projections_used = 0;
    // Diagnostic: the winning |<y_t, r_k>| of each projection round. A small
    // gap between rounds hints at near-degenerate data.
    std::vector<double> projection_peaks;
};

/// argmax_t |<y_t, r>|, ties broken to the lowest index.
Index ppi_select(const Matrix& data, const Vector& direction);

/// Unit vector in the orthogonal complement of the columns of `identified`
/// (which may have zero columns), from a projected Gaussian draw.
Vector orthogonal_direction(const Matrix& identified, Rng& rng);

/// Successive pure-pixel search: N rounds of projection onto directions
/// orthogonal to everything already found. Already-selected indices are
/// excluded from later argmax scans.
VcaResult vca(const Matrix& data, int n_endmembers, Rng& rng);

} // namespace unmix
