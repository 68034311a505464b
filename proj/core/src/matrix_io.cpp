#include "unmix/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "unmix/errors.hpp"

namespace unmix {

namespace {

void append_u64_le(std::string* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t read_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace

MatrixEncoding encoding_for_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? MatrixEncoding::Csv : MatrixEncoding::RawF64Le;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, MatrixEncoding encoding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_matrix: cannot open " + path.string());
    if (encoding == MatrixEncoding::Csv) {
        char buf[64];
        std::string line;
        for (Index i = 0; i < m.rows(); ++i) {
            line.clear();
            for (Index j = 0; j < m.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
                if (j) line.push_back(',');
                line += buf;
            }
            line.push_back('\n');
            out << line;
        }
    } else {
        std::string blob;
        blob.reserve(16 + static_cast<std::size_t>(m.size()) * 8);
        append_u64_le(&blob, static_cast<std::uint64_t>(m.rows()));
        append_u64_le(&blob, static_cast<std::uint64_t>(m.cols()));
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j)
                append_u64_le(&blob, std::bit_cast<std::uint64_t>(m(i, j)));
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    }
    if (!out) throw IoError("write_matrix: write failed for " + path.string());
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    write_matrix(path, m, encoding_for_path(path));
}

Matrix read_matrix(const std::filesystem::path& path, MatrixEncoding encoding) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_matrix: cannot open " + path.string());

    if (encoding == MatrixEncoding::Csv) {
        std::vector<std::vector<double>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    std::size_t used = 0;
                    row.push_back(std::stod(cell, &used));
                } catch (const std::exception&) {
                    throw IoError("read_matrix: bad number '" + cell + "' in " + path.string());
                }
            }
            if (!rows.empty() && row.size() != rows.front().size())
                throw IoError("read_matrix: ragged rows in " + path.string());
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw IoError("read_matrix: empty file " + path.string());
        Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j)
                m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return m;
    }

    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < 16) throw IoError("read_matrix: truncated header in " + path.string());
    const auto* p = reinterpret_cast<const unsigned char*>(blob.data());
    const std::uint64_t rows = read_u64_le(p);
    const std::uint64_t cols = read_u64_le(p + 8);
    if (rows == 0 || cols == 0 || rows > (1u << 24) || cols > (1u << 24))
        throw IoError("read_matrix: implausible shape in " + path.string());
    if (blob.size() != 16 + rows * cols * 8)
        throw IoError("read_matrix: size mismatch in " + path.string());
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    const unsigned char* cursor = p + 16;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j, cursor += 8)
            m(i, j) = std::bit_cast<double>(read_u64_le(cursor));
    return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
    return read_matrix(path, encoding_for_path(path));
}

} // namespace unmix
