#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spca/sym_matrix.hpp"

namespace spca {

// A feasible point of the cardinality-constrained eigenvalue problem:
// maximize x'Ax over unit vectors with at most k nonzeros. coeffs is the
// unit vector restricted to support; objective is its quadratic form.
struct SparseSolution {
  std::vector<int> support;   // ascending
  std::vector<double> coeffs;  // aligned with support, unit norm
  double objective = 0.0;
};

// Identity and approximation profile of a solver: a solver with profile
// (m, a) promises output >= OPT/m(k,d) - a(k,d) on inputs whose largest
// block size is d.
struct SolverDescriptor {
  std::string name;
  bool exact = false;
  std::function<double(int k, int d)> multiplicative;  // m(k, d) >= 1
  std::function<double(int k, int d)> additive;        // a(k, d) >= 0
};

// Exact solve by enumerating every size-k support (restricting to exactly
// k indices is enough: adding an index never lowers the optimum). Ties
// within 1e-12 of the optimum resolve to the lexicographically smallest
// support. Cost grows as C(d, k); intended for small blocks.
SparseSolution solve_exhaustive(const SymMatrix& a, int k);

struct BranchAndBoundOptions {
  double time_limit_seconds = 60.0;
  // Stop as soon as the incumbent reaches this value (minus 1e-12 slack).
  // Used for time-to-target measurements; the result is flagged non-optimal.
  std::optional<double> target_objective;
};

struct BranchAndBoundResult {
  SparseSolution solution;
  bool optimal = false;        // search space exhausted within the limits
  bool target_reached = false;
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

// Depth-first include/exclude search over indices ordered by descending
// diagonal. A node keeps the index set R = chosen + undecided; lambda_max
// of A[R, R] bounds every completion, and the node is pruned when that
// bound is at most the incumbent + 1e-12. On timeout the incumbent found
// so far is returned with optimal = false.
BranchAndBoundResult solve_branch_and_bound(const SymMatrix& a, int k,
                                            const BranchAndBoundOptions& options = {});

// Forward selection: start from the largest diagonal entry and repeatedly
// add the index that maximizes the grown submatrix's top eigenvalue (ties
// to the smallest index). Returns the eigenpair of the final submatrix;
// the support is the selected set even where coefficients vanish.
SparseSolution solve_greedy(const SymMatrix& a, int k);

// Two candidates: the leading eigenvector truncated to its k largest
// magnitudes (ties to smaller index), and the best diagonal singleton.
// Returns whichever scores higher.
SparseSolution solve_truncated_eig(const SymMatrix& a, int k);

// Unconstrained leading eigenpair; support covers every index.
SparseSolution solve_dense_pca(const SymMatrix& a);

// Lower bound opt_reference/m - a - k*epsilon/m certified for a solver with
// profile (m, a) running on blocks of size d_star after thresholding at
// epsilon.
double guarantee_bound(const SolverDescriptor& descriptor, int k, int d_star, double epsilon,
                       double opt_reference);

// A pluggable solver: descriptor plus the solve callable.
struct Solver {
  SolverDescriptor descriptor;
  std::function<SparseSolution(const SymMatrix&, int)> solve;
};

// Registry: "exhaustive", "bb", "greedy", "trunc-eig". The branch-and-bound
// entry runs under the supplied options.
Solver make_solver(const std::string& name, const BranchAndBoundOptions& bb_options = {});

// Published approximation profiles usable with guarantee_bound:
// "exact" (1, 0), "chan" (min(sqrt(k), d^(1/3)), 0), "misdp" (min(k, d/k), 0),
// "greedy" (k, 0), "asteris" (1, delta).
SolverDescriptor approximation_profile(const std::string& name, double delta = 0.0);

}  // namespace spca
