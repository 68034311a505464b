#pragma once

#include <stdexcept>
#include <string>

namespace unmix {

/// Data-dependent failure (rank deficiency, degenerate geometry, infeasible
/// sampling). The CLI maps these to exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankError : DataError {
    using DataError::DataError;
};

struct SingularMatrixError : DataError {
    using DataError::DataError;
};

struct PurityInfeasibleError : DataError {
    using DataError::DataError;
};

/// File or serialization failure. The CLI maps these to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter violations throw std::invalid_argument (CLI exit code 1).

} // namespace unmix
