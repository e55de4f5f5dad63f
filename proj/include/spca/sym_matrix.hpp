#pragma once

#include <span>
#include <string>
#include <vector>

namespace spca {

// Dense symmetric matrix with value semantics. Storage is row-major with
// both triangles materialized; symmetry is enforced exactly at construction
// and instances are immutable afterwards, so they can be shared freely
// across threads.
class SymMatrix {
 public:
  SymMatrix() = default;

  // entries.size() must equal dim*dim, entries[i*dim+j] == entries[j*dim+i]
  // exactly, and every entry must be finite. labels, when given, names the
  // dim coordinates (carried along by submatrix extraction).
  SymMatrix(int dim, std::vector<double> entries,
            std::vector<std::string> labels = {});

  static SymMatrix zero(int dim);
  static SymMatrix diagonal(const std::vector<double>& diag);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  double operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }

  const std::vector<double>& entries() const { return entries_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  // y' A y for the unit vector with the given sparse pattern: support holds
  // distinct coordinate indices, coeffs the matching values.
  double quadratic_form(std::span<const int> support,
                        std::span<const double> coeffs) const;

 private:
  int dim_ = 0;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

// Leading eigenvalue and a unit eigenvector. The vector's first entry of
// magnitude above 1e-12 is normalized to be positive so repeated runs agree.
struct EigPair {
  double value = 0.0;
  std::vector<double> vector;
};

// max_ij |A_ij|
double inf_norm(const SymMatrix& a);

// Principal submatrix A[S, S] in the order the indices are given.
// Indices must be distinct and in range.
SymMatrix submatrix(const SymMatrix& a, std::span<const int> indices);

// Largest eigenvalue with eigenvector, deterministic for a given input.
EigPair leading_eigpair(const SymMatrix& a);

// Row-major n x d observation matrix for covariance estimation.
struct DataMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
  std::vector<std::string> column_names;

  double operator()(int r, int c) const {
    return values[static_cast<std::size_t>(r) * cols + c];
  }
};

// Unbiased sample covariance (divisor n-1). Requires n >= 2. The result is
// symmetrized exactly before construction to absorb floating-point drift.
SymMatrix sample_covariance(const DataMatrix& x);

}  // namespace spca
