#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "spca/framework.hpp"

namespace spca {

struct NoiseModelParams {
  double c = 1.0;      // structure-size constant, > 0
  double alpha = 0.7;  // structure-size exponent, in (0, 1)
  double u = 1.0;      // sub-Gaussian tail constant, >= 1
};

struct NoiseEstimate {
  double sigma_bar_sq = 0.0;
  double eps_bar = 0.0;  // 2 * u * sqrt(sigma_bar_sq) * sqrt(3 * ln d)
  std::int64_t m_subsets = 0;
  NoiseModelParams params;
  std::uint64_t seed = 0;
};

// Median-of-means estimate of the squared noise scale: the upper-triangle
// index pairs (diagonal included) are shuffled by the seed and dealt
// round-robin into m = floor((2c+2) * d^(1+alpha)) subsets, capped so every
// subset holds at least two pairs (a single squared Gaussian's median sits
// well below its mean, so uncapped subset counts at small d would bias the
// estimate low). sigma_bar_sq is the median of the subset means of A_ij^2.
NoiseEstimate estimate_noise(const SymMatrix& a, const NoiseModelParams& params,
                             std::uint64_t seed = 42);

struct ModelBasedResult {
  FrameworkResult framework;
  NoiseEstimate estimate;
  // objective/m - a - (1 + 2/m) * k * eps_bar for the solver profile at the
  // decomposition's largest block size; the estimated threshold carries an
  // extra 2/m * k * eps_bar of slack compared with a known threshold.
  double guarantee = 0.0;
};

// estimate_noise followed by solve_with_threshold at the estimated eps_bar.
ModelBasedResult solve_model_based(const SymMatrix& a, int k, const NoiseModelParams& params,
                                   const Solver& solver, std::uint64_t seed = 42);

enum class SearchAction {
  solved,            // ran the solver and improved the incumbent
  tightened_upper,   // ran the solver, no improvement, upper bound lowered
  skipped_memo,      // a run with at least this block size already happened
  skipped_too_big,   // largest block exceeded d0, lower bound raised
};

const char* to_string(SearchAction action);

struct SearchIteration {
  double lower = 0.0;   // interval before the update
  double upper = 0.0;
  double epsilon = 0.0;
  int d_star = 0;
  SearchAction action = SearchAction::solved;
  std::optional<double> objective;
};

struct SearchOptions {
  double delta = 0.0;  // interval width at which the search stops, > 0
  int d0 = 30;         // largest block size the solver is allowed to see
  bool early_stop = true;  // stop once a run with largest block == d0 happened
  std::optional<std::pair<double, double>> range;  // custom [L, U), default [0, max|A_ij|)
};

struct SearchResult {
  std::vector<SearchIteration> iterations;  // [0] is the initial solve at U
  std::set<int> solved_sizes;
  double epsilon_star = 0.0;
  FrameworkResult best;
  // The ratio-style certificate behind the search presumes a nonnegative
  // optimum; false flags a best objective below zero (indefinite input).
  bool bound_applicable = true;
};

// Binary search on the threshold: solve once at the upper end, then bisect.
// Midpoints whose largest block size was already covered by an earlier run
// tighten the upper bound; midpoints whose largest block exceeds d0 raise
// the lower bound; everything else is solved, and the upper bound drops
// either way so the interval halves every iteration. The memo guarantees no
// block size is solved twice.
SearchResult search_threshold(const SymMatrix& a, int k, const Solver& solver,
                              const SearchOptions& options);

}  // namespace spca
