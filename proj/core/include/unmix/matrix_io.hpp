#pragma once

#include <filesystem>
#include <string>

#include "unmix/types.hpp"

namespace unmix {

enum class MatrixEncoding {
    Csv,      // numeric rows, comma separated, no header, 17 significant digits
    RawF64Le, // 16-byte header (rows, cols as little-endian u64), then
              // row-major little-endian doubles
};

/// Encoding by extension: ".csv" -> Csv, everything else -> RawF64Le.
MatrixEncoding encoding_for_path(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const Matrix& m, MatrixEncoding encoding);
void write_matrix(const std::filesystem::path& path, const Matrix& m); // by extension

Matrix read_matrix(const std::filesystem::path& path, MatrixEncoding encoding);
Matrix read_matrix(const std::filesystem::path& path); // by extension

} // namespace unmix
