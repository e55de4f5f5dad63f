#include "spca/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace spca {

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kPruneTol = 1e-12;
constexpr double kCoeffTol = 1e-12;

void check_k(const SymMatrix& a, int k) {
  if (k < 1) throw std::invalid_argument("cardinality k must be at least 1");
  if (k > a.dim()) throw std::invalid_argument("cardinality k exceeds the dimension");
}

Eigen::MatrixXd to_eigen(const SymMatrix& a) {
  const int d = a.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = a(i, j);
  return m;
}

double lambda_max(const Eigen::MatrixXd& m) {
  const int d = static_cast<int>(m.rows());
  if (d == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (d <= 3)
    es.computeDirect(m, Eigen::EigenvaluesOnly);
  else
    es.compute(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(d - 1);
}

double lambda_max_subset(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const int s = static_cast<int>(idx.size());
  if (s == 1) return m(idx[0], idx[0]);
  Eigen::MatrixXd sub(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) sub(i, j) = m(idx[i], idx[j]);
  return lambda_max(sub);
}

// Eigenpair of A[subset, subset] lifted into a SparseSolution. When prune is
// set, coordinates with negligible weight are dropped from the support.
SparseSolution assemble(const SymMatrix& a, std::vector<int> subset, bool prune) {
  std::sort(subset.begin(), subset.end());
  const EigPair pair = leading_eigpair(submatrix(a, subset));
  SparseSolution out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (prune && std::fabs(pair.vector[i]) <= kCoeffTol) continue;
    out.support.push_back(subset[i]);
    out.coeffs.push_back(pair.vector[i]);
  }
  if (out.support.empty()) {
    out.support.push_back(subset[0]);
    out.coeffs.push_back(1.0);
  }
  double norm = 0.0;
  for (double c : out.coeffs) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : out.coeffs) c /= norm;
  for (double& c : out.coeffs) {
    if (std::fabs(c) > kCoeffTol) {
      if (c < 0)
        for (double& f : out.coeffs) f = -f;
      break;
    }
  }
  out.objective = a.quadratic_form(out.support, out.coeffs);
  return out;
}

SparseSolution singleton_solution(const SymMatrix& a, int index) {
  SparseSolution out;
  out.support = {index};
  out.coeffs = {1.0};
  out.objective = a(index, index);
  return out;
}

int best_diagonal_index(const SymMatrix& a) {
  int best = 0;
  for (int i = 1; i < a.dim(); ++i)
    if (a(i, i) > a(best, best)) best = i;
  return best;
}

// Calls fn on every ascending k-subset of {0..n-1} in lexicographic order
// until fn returns false.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(idx))) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Branch-and-bound state. Indices are permuted once so position 0 holds the
// largest diagonal; the search itself never reorders.
class BnbSearch {
 public:
  BnbSearch(const SymMatrix& a, int k, const BranchAndBoundOptions& options)
      : k_(k), options_(options), d_(a.dim()) {
    perm_.resize(d_);
    std::iota(perm_.begin(), perm_.end(), 0);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&](int i, int j) { return a(i, i) > a(j, j); });
    b_.resize(d_, d_);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) b_(i, j) = a(perm_[i], perm_[j]);
    if (d_ > kSuffixThreshold) precompute_suffix_bounds();
  }

  BranchAndBoundResult run(const SymMatrix& a) {
    const auto start = std::chrono::steady_clock::now();
    start_ = start;
    std::vector<int> chosen;
    chosen.reserve(k_);
    dfs(0, chosen);
    BranchAndBoundResult out;
    out.nodes = nodes_;
    out.optimal = !stopped_;
    out.target_reached = target_reached_;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<int> original;
    original.reserve(incumbent_set_.size());
    for (int p : incumbent_set_) original.push_back(perm_[p]);
    out.solution = assemble(a, std::move(original), true);
    return out;
  }

 private:
  static constexpr int kSuffixThreshold = 160;
  static constexpr int kExactBoundLimit = 128;

  void precompute_suffix_bounds() {
    suffix_lb_.assign(d_ + 1, -std::numeric_limits<double>::infinity());
    Eigen::VectorXd prev;
    for (int pos = d_ - 1; pos >= 0; --pos) {
      const int s = d_ - pos;
      Eigen::VectorXd v(s);
      v(0) = 1.0;
      if (s > 1) v.tail(s - 1) = prev;
      v.normalize();
      const auto block = b_.block(pos, pos, s, s);
      for (int it = 0; it < 8; ++it) {
        Eigen::VectorXd w = block * v;
        const double n = w.norm();
        if (n == 0.0) break;
        v = w / n;
      }
      const double rq = v.dot(block * v);
      suffix_lb_[pos] = std::max({rq, suffix_lb_[pos + 1], b_(pos, pos)});
      prev = v;
    }
  }

  bool out_of_time() {
    if (incumbent_set_.empty()) return false;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return elapsed >= options_.time_limit_seconds;
  }

  void record_leaf(const std::vector<int>& subset) {
    const double value = lambda_max_subset(b_, subset);
    if (incumbent_set_.empty() || value > incumbent_) {
      incumbent_ = value;
      incumbent_set_ = subset;
      if (options_.target_objective && incumbent_ >= *options_.target_objective - kPruneTol) {
        target_reached_ = true;
        stopped_ = true;
      }
    }
  }

  // True when lambda_max over R = chosen + [pos..d) provably cannot beat the
  // incumbent. Certified shortcuts keep the outcome identical to always
  // evaluating the eigenvalue bound exactly: a lower bound above the
  // incumbent shows pruning is impossible, and only a certified upper bound
  // at or below the incumbent may prune.
  bool can_prune(int pos, const std::vector<int>& chosen) {
    if (incumbent_set_.empty()) return false;
    const double cutoff = incumbent_ + kPruneTol;
    if (!suffix_lb_.empty() && suffix_lb_[pos] > cutoff) return false;
    std::vector<int> r(chosen);
    for (int p = pos; p < d_; ++p) r.push_back(p);
    if (static_cast<int>(r.size()) <= kExactBoundLimit)
      return lambda_max_subset(b_, r) <= cutoff;
    double gersh = -std::numeric_limits<double>::infinity();
    for (int i : r) {
      double row = b_(i, i);
      for (int j : r)
        if (j != i) row += std::fabs(b_(i, j));
      gersh = std::max(gersh, row);
    }
    return gersh <= cutoff;
  }

  void dfs(int pos, std::vector<int>& chosen) {
    if (stopped_) return;
    ++nodes_;
    if ((nodes_ & 1023) == 0 && out_of_time()) {
      stopped_ = true;
      return;
    }
    const int nc = static_cast<int>(chosen.size());
    if (nc == k_) {
      record_leaf(chosen);
      return;
    }
    const int remaining = d_ - pos;
    if (nc + remaining < k_) return;
    if (nc + remaining == k_) {
      std::vector<int> full(chosen);
      for (int p = pos; p < d_; ++p) full.push_back(p);
      record_leaf(full);
      return;
    }
    if (can_prune(pos, chosen)) return;
    chosen.push_back(pos);
    dfs(pos + 1, chosen);
    chosen.pop_back();
    dfs(pos + 1, chosen);
  }

  int k_;
  BranchAndBoundOptions options_;
  int d_;
  std::vector<int> perm_;
  Eigen::MatrixXd b_;
  std::vector<double> suffix_lb_;
  std::chrono::steady_clock::time_point start_;
  double incumbent_ = -std::numeric_limits<double>::infinity();
  std::vector<int> incumbent_set_;
  std::int64_t nodes_ = 0;
  bool stopped_ = false;
  bool target_reached_ = false;
};

}  // namespace

SparseSolution solve_exhaustive(const SymMatrix& a, int k) {
  check_k(a, k);
  const Eigen::MatrixXd m = to_eigen(a);
  double best = -std::numeric_limits<double>::infinity();
  for_each_subset(a.dim(), k, [&](const std::vector<int>& s) {
    best = std::max(best, lambda_max_subset(m, s));
    return true;
  });
  std::vector<int> winner;
  for_each_subset(a.dim(), k, [&](const std::vector<int>& s) {
    if (lambda_max_subset(m, s) >= best - kTieTol) {
      winner = s;
      return false;
    }
    return true;
  });
  return assemble(a, std::move(winner), true);
}

BranchAndBoundResult solve_branch_and_bound(const SymMatrix& a, int k,
                                            const BranchAndBoundOptions& options) {
  check_k(a, k);
  if (!(options.time_limit_seconds > 0))
    throw std::invalid_argument("branch and bound: time limit must be positive");
  BnbSearch search(a, k, options);
  return search.run(a);
}

SparseSolution solve_greedy(const SymMatrix& a, int k) {
  check_k(a, k);
  const Eigen::MatrixXd m = to_eigen(a);
  std::vector<int> selected = {best_diagonal_index(a)};
  std::vector<char> used(a.dim(), 0);
  used[selected[0]] = 1;
  while (static_cast<int>(selected.size()) < k) {
    int best_j = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<int> trial(selected);
    trial.push_back(-1);
    for (int j = 0; j < a.dim(); ++j) {
      if (used[j]) continue;
      trial.back() = j;
      const double val = lambda_max_subset(m, trial);
      if (val > best_val) {
        best_val = val;
        best_j = j;
      }
    }
    selected.push_back(best_j);
    used[best_j] = 1;
  }
  return assemble(a, std::move(selected), false);
}

SparseSolution solve_truncated_eig(const SymMatrix& a, int k) {
  check_k(a, k);
  const EigPair top = leading_eigpair(a);
  std::vector<int> order(a.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::fabs(top.vector[i]) > std::fabs(top.vector[j]);
  });
  order.resize(k);
  SparseSolution truncated = assemble(a, std::move(order), true);
  SparseSolution diag = singleton_solution(a, best_diagonal_index(a));
  return truncated.objective >= diag.objective ? truncated : diag;
}

SparseSolution solve_dense_pca(const SymMatrix& a) {
  std::vector<int> all(a.dim());
  std::iota(all.begin(), all.end(), 0);
  return assemble(a, std::move(all), false);
}

double guarantee_bound(const SolverDescriptor& descriptor, int k, int d_star, double epsilon,
                       double opt_reference) {
  if (k < 1) throw std::invalid_argument("guarantee_bound: k must be at least 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("guarantee_bound: epsilon must be >= 0");
  const double m = descriptor.multiplicative(k, d_star);
  const double add = descriptor.additive(k, d_star);
  if (!(m > 0.0)) throw std::invalid_argument("guarantee_bound: profile m(k, d) must be positive");
  return opt_reference / m - add - k * epsilon / m;
}

Solver make_solver(const std::string& name, const BranchAndBoundOptions& bb_options) {
  const auto one = [](int, int) { return 1.0; };
  const auto zero = [](int, int) { return 0.0; };
  if (name == "exhaustive")
    return {SolverDescriptor{name, true, one, zero},
            [](const SymMatrix& a, int k) { return solve_exhaustive(a, k); }};
  if (name == "bb")
    return {SolverDescriptor{name, true, one, zero},
            [bb_options](const SymMatrix& a, int k) {
              return solve_branch_and_bound(a, k, bb_options).solution;
            }};
  if (name == "greedy")
    return {SolverDescriptor{name, false, [](int k, int) { return double(k); }, zero},
            [](const SymMatrix& a, int k) { return solve_greedy(a, k); }};
  if (name == "trunc-eig")
    return {SolverDescriptor{name, false, [](int k, int) { return std::sqrt(double(k)); }, zero},
            [](const SymMatrix& a, int k) { return solve_truncated_eig(a, k); }};
  throw std::invalid_argument("unknown solver: " + name);
}

SolverDescriptor approximation_profile(const std::string& name, double delta) {
  const auto zero = [](int, int) { return 0.0; };
  if (name == "exact") return {name, true, [](int, int) { return 1.0; }, zero};
  if (name == "chan")
    return {name, false,
            [](int k, int d) { return std::min(std::sqrt(double(k)), std::cbrt(double(d))); },
            zero};
  if (name == "misdp")
    return {name, false,
            [](int k, int d) { return std::min(double(k), double(d) / double(k)); }, zero};
  if (name == "greedy") return {name, false, [](int k, int) { return double(k); }, zero};
  if (name == "asteris")
    return {name, false, [](int, int) { return 1.0; }, [delta](int, int) { return delta; }};
  throw std::invalid_argument("unknown approximation profile: " + name);
}

}  // namespace spca
