#include "spca/framework.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "spca/threshold.hpp"

namespace spca {

namespace {

SparseSolution best_diagonal_singleton(const SymMatrix& a) {
  int best = 0;
  for (int i = 1; i < a.dim(); ++i)
    if (a(i, i) > a(best, best)) best = i;
  SparseSolution out;
  out.support = {best};
  out.coeffs = {1.0};
  out.objective = a(best, best);
  return out;
}

}  // namespace

FrameworkResult solve_with_threshold(const SymMatrix& a, int k, double epsilon,
                                     const Solver& solver) {
  if (k < 1) throw std::invalid_argument("solve_with_threshold: k must be at least 1");
  if (k > a.dim()) throw std::invalid_argument("solve_with_threshold: k exceeds the dimension");

  FrameworkResult out;
  out.epsilon = epsilon;
  out.decomposition = decompose(a, denoise(a, epsilon).result);

  const int p = out.decomposition.num_blocks();
  if (p == 0) {
    out.solution = best_diagonal_singleton(a);
  } else {
    // Largest blocks first; records stay keyed by block index.
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return out.decomposition.index_sets[x].size() > out.decomposition.index_sets[y].size();
    });
    for (int b : order) {
      const auto& members = out.decomposition.index_sets[b];
      const SymMatrix& block = out.decomposition.blocks[b];
      const auto t0 = std::chrono::steady_clock::now();
      SparseSolution local = k <= static_cast<int>(members.size()) ? solver.solve(block, k)
                                                                   : solve_dense_pca(block);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      SparseSolution lifted;
      lifted.coeffs = local.coeffs;
      for (int idx : local.support) lifted.support.push_back(members[idx]);
      lifted.objective = a.quadratic_form(lifted.support, lifted.coeffs);
      out.per_block.push_back({b, lifted.objective, seconds});
      if (out.winning_block < 0 || lifted.objective > out.solution.objective) {
        out.solution = std::move(lifted);
        out.winning_block = b;
      }
    }
    std::sort(out.per_block.begin(), out.per_block.end(),
              [](const BlockSolveRecord& x, const BlockSolveRecord& y) { return x.block < y.block; });
  }

  const int d_star = std::max(1, out.decomposition.largest_block);
  out.guarantee =
      guarantee_bound(solver.descriptor, k, d_star, epsilon, out.solution.objective);
  return out;
}

GapReport verify_gap(const SymMatrix& a, int k, double epsilon) {
  if (a.dim() > 14)
    throw std::invalid_argument("verify_gap: guarded to dimension <= 14 (double enumeration)");
  if (k < 1 || k > a.dim()) throw std::invalid_argument("verify_gap: bad cardinality");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("verify_gap: epsilon must be >= 0");

  GapReport report;
  report.opt_original = solve_exhaustive(a, k).objective;
  const SparseSolution thresholded = solve_exhaustive(denoise(a, epsilon).result, k);
  report.opt_thresholded_on_original =
      a.quadratic_form(thresholded.support, thresholded.coeffs);
  report.gap = std::fabs(report.opt_original - report.opt_thresholded_on_original);
  if (report.gap > 2.0 * k * epsilon + 1e-8)
    throw std::logic_error("verify_gap: threshold perturbation bound violated");
  return report;
}

}  // namespace spca
