#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "spca/sym_matrix.hpp"

namespace spca {

enum class MatrixFormat { matrix_market, dense_csv };

// Accepts "mm", "matrix-market", "matrixmarket", "csv", "dense-csv".
MatrixFormat parse_matrix_format(const std::string& name);

// Raised when a file exists but its contents cannot be parsed; line is
// 1-based and already baked into what().
struct ParseError : std::runtime_error {
  ParseError(const std::filesystem::path& file, int line_number, const std::string& message);
  int line;
};

// Raised for filesystem-level failures (missing file, unwritable path).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix Market "coordinate real symmetric" or dense CSV (d rows of d
// comma-separated values). File indices are 1-based. Dense input whose
// asymmetry exceeds 1e-12 * max|entry| is rejected with the offending
// indices; smaller drift is averaged away.
SymMatrix read_matrix(const std::filesystem::path& file, MatrixFormat format);

// Writes with 17 significant digits so read_matrix(write_matrix(a)) == a.
// Matrix Market output lists the nonzero lower triangle.
void write_matrix(const SymMatrix& a, const std::filesystem::path& file, MatrixFormat format);

// CSV of raw observations, one row per sample. A first line containing any
// token that does not parse as a number is taken as column names.
DataMatrix read_data_csv(const std::filesystem::path& file);

}  // namespace spca
