#include "spca/sym_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spca {

namespace {

std::string entry_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

SymMatrix::SymMatrix(int dim, std::vector<double> entries,
                     std::vector<std::string> labels)
    : dim_(dim), entries_(std::move(entries)), labels_(std::move(labels)) {
  if (dim_ <= 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
    throw std::invalid_argument("SymMatrix: entry count does not match dimension");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("SymMatrix: label count does not match dimension");
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double a = (*this)(i, j);
      const double b = (*this)(j, i);
      if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("SymMatrix: non-finite entry at " + entry_name(i, j));
      if (a != b)
        throw std::invalid_argument("SymMatrix: asymmetric entries at " + entry_name(i, j));
    }
  }
}

SymMatrix SymMatrix::zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
  return SymMatrix(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim, 0.0));
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
  const int d = static_cast<int>(diag.size());
  if (d == 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
  std::vector<double> e(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i) * d + i] = diag[i];
  return SymMatrix(d, std::move(e));
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int d = static_cast<int>(rows.size());
  if (d == 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("SymMatrix: ragged rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return SymMatrix(d, std::move(e));
}

double SymMatrix::quadratic_form(std::span<const int> support,
                                 std::span<const double> coeffs) const {
  if (support.size() != coeffs.size())
    throw std::invalid_argument("quadratic_form: support and coeffs differ in length");
  double acc = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = 0; b < support.size(); ++b)
      acc += coeffs[a] * coeffs[b] * (*this)(support[a], support[b]);
  return acc;
}

double inf_norm(const SymMatrix& a) {
  double best = 0.0;
  for (double v : a.entries()) best = std::max(best, std::fabs(v));
  return best;
}

SymMatrix submatrix(const SymMatrix& a, std::span<const int> indices) {
  const int m = static_cast<int>(indices.size());
  if (m == 0) throw std::invalid_argument("submatrix: empty index set");
  std::vector<char> seen(a.dim(), 0);
  for (int idx : indices) {
    if (idx < 0 || idx >= a.dim()) throw std::invalid_argument("submatrix: index out of range");
    if (seen[idx]) throw std::invalid_argument("submatrix: duplicate index");
    seen[idx] = 1;
  }
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      e[static_cast<std::size_t>(i) * m + j] = a(indices[i], indices[j]);
  std::vector<std::string> labels;
  if (a.has_labels()) {
    labels.reserve(m);
    for (int idx : indices) labels.push_back(a.labels()[idx]);
  }
  return SymMatrix(m, std::move(e), std::move(labels));
}

EigPair leading_eigpair(const SymMatrix& a) {
  const int d = a.dim();
  if (d == 0) throw std::invalid_argument("leading_eigpair: empty matrix");
  EigPair out;
  out.vector.assign(d, 0.0);
  if (d == 1) {
    out.value = a(0, 0);
    out.vector[0] = 1.0;
    return out;
  }
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (d <= 3)
    es.computeDirect(m);
  else
    es.compute(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("leading_eigpair: eigensolver failed to converge");
  out.value = es.eigenvalues()(d - 1);
  Eigen::VectorXd v = es.eigenvectors().col(d - 1);
  v.normalize();
  for (int i = 0; i < d; ++i) {
    if (std::fabs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  for (int i = 0; i < d; ++i) out.vector[i] = v(i);
  return out;
}

SymMatrix sample_covariance(const DataMatrix& x) {
  if (x.rows < 2) throw std::invalid_argument("sample_covariance: need at least two rows");
  if (x.cols < 1) throw std::invalid_argument("sample_covariance: need at least one column");
  for (double v : x.values)
    if (!std::isfinite(v)) throw std::invalid_argument("sample_covariance: non-finite observation");

  const int n = x.rows;
  const int d = x.cols;
  std::vector<double> mean(d, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < d; ++c) mean[c] += x(r, c);
  for (int c = 0; c < d; ++c) mean[c] /= n;

  std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < d; ++i) {
      const double di = x(r, i) - mean[i];
      for (int j = 0; j <= i; ++j)
        cov[static_cast<std::size_t>(i) * d + j] += di * (x(r, j) - mean[j]);
    }
  }
  const double denom = n - 1;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = cov[static_cast<std::size_t>(i) * d + j] / denom;
      cov[static_cast<std::size_t>(i) * d + j] = v;
      cov[static_cast<std::size_t>(j) * d + i] = v;
    }
  }
  return SymMatrix(d, std::move(cov), x.column_names);
}

}  // namespace spca
