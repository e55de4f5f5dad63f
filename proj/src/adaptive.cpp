#include "spca/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spca/threshold.hpp"

namespace spca {

namespace {

void check_params(const NoiseModelParams& p) {
  if (!(p.c > 0.0)) throw std::invalid_argument("noise model: c must be positive");
  if (!(p.alpha > 0.0 && p.alpha < 1.0))
    throw std::invalid_argument("noise model: alpha must lie strictly between 0 and 1");
  if (!(p.u >= 1.0)) throw std::invalid_argument("noise model: u must be at least 1");
}

}  // namespace

NoiseEstimate estimate_noise(const SymMatrix& a, const NoiseModelParams& params,
                             std::uint64_t seed) {
  check_params(params);
  const int d = a.dim();
  if (d < 2)
    throw std::invalid_argument("estimate_noise: dimension too small to partition index pairs");

  const std::int64_t total_pairs = static_cast<std::int64_t>(d) * (d + 1) / 2;
  const double m_raw = std::floor((2.0 * params.c + 2.0) * std::pow(double(d), 1.0 + params.alpha));
  std::int64_t m = static_cast<std::int64_t>(std::min(m_raw, 9.0e15));
  m = std::min(m, total_pairs / 2);
  if (m < 1)
    throw std::invalid_argument("estimate_noise: d too small for the chosen c and alpha");

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(total_pairs);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) pairs.emplace_back(i, j);

  std::mt19937_64 rng(seed);
  for (std::int64_t i = total_pairs - 1; i > 0; --i) {
    std::uniform_int_distribution<std::int64_t> pick(0, i);
    std::swap(pairs[i], pairs[pick(rng)]);
  }

  std::vector<double> sums(m, 0.0);
  std::vector<std::int64_t> counts(m, 0);
  for (std::int64_t t = 0; t < total_pairs; ++t) {
    const double v = a(pairs[t].first, pairs[t].second);
    sums[t % m] += v * v;
    ++counts[t % m];
  }
  std::vector<double> means(m);
  for (std::int64_t i = 0; i < m; ++i) means[i] = sums[i] / counts[i];
  std::sort(means.begin(), means.end());
  const double median = m % 2 == 1 ? means[m / 2] : 0.5 * (means[m / 2 - 1] + means[m / 2]);

  NoiseEstimate out;
  out.sigma_bar_sq = median;
  out.eps_bar = 2.0 * params.u * std::sqrt(median) * std::sqrt(3.0 * std::log(double(d)));
  out.m_subsets = m;
  out.params = params;
  out.seed = seed;
  return out;
}

ModelBasedResult solve_model_based(const SymMatrix& a, int k, const NoiseModelParams& params,
                                   const Solver& solver, std::uint64_t seed) {
  ModelBasedResult out;
  out.estimate = estimate_noise(a, params, seed);
  out.framework = solve_with_threshold(a, k, out.estimate.eps_bar, solver);
  const int d_star = std::max(1, out.framework.decomposition.largest_block);
  const double m = solver.descriptor.multiplicative(k, d_star);
  const double add = solver.descriptor.additive(k, d_star);
  out.guarantee = out.framework.solution.objective / m - add -
                  (1.0 + 2.0 / m) * k * out.estimate.eps_bar / m;
  return out;
}

const char* to_string(SearchAction action) {
  switch (action) {
    case SearchAction::solved: return "solved";
    case SearchAction::tightened_upper: return "tightened-upper";
    case SearchAction::skipped_memo: return "skipped-memo";
    case SearchAction::skipped_too_big: return "skipped-too-big";
  }
  return "unknown";
}

SearchResult search_threshold(const SymMatrix& a, int k, const Solver& solver,
                              const SearchOptions& options) {
  if (!(options.delta > 0.0))
    throw std::invalid_argument("search_threshold: delta must be positive");
  if (options.d0 < 1) throw std::invalid_argument("search_threshold: d0 must be at least 1");

  double lower = 0.0;
  double upper = inf_norm(a);
  if (options.range) {
    lower = options.range->first;
    upper = options.range->second;
    if (!(lower >= 0.0) || !(upper > lower))
      throw std::invalid_argument("search_threshold: range must satisfy 0 <= L < U");
  }

  SearchResult out;
  {
    FrameworkResult fr = solve_with_threshold(a, k, upper, solver);
    const int d_star = fr.decomposition.largest_block;
    out.solved_sizes.insert(d_star);
    out.iterations.push_back(
        {lower, upper, upper, d_star, SearchAction::solved, fr.solution.objective});
    out.epsilon_star = upper;
    out.best = std::move(fr);
  }

  while (upper - lower > options.delta) {
    const double eps = 0.5 * (lower + upper);
    const int d_star = decompose(a, denoise(a, eps).result).largest_block;
    if (!out.solved_sizes.empty() && *out.solved_sizes.rbegin() >= d_star) {
      out.iterations.push_back(
          {lower, upper, eps, d_star, SearchAction::skipped_memo, std::nullopt});
      upper = eps;
      continue;
    }
    if (d_star > options.d0) {
      out.iterations.push_back(
          {lower, upper, eps, d_star, SearchAction::skipped_too_big, std::nullopt});
      lower = eps;
      continue;
    }
    FrameworkResult fr = solve_with_threshold(a, k, eps, solver);
    out.solved_sizes.insert(d_star);
    const bool improved = fr.solution.objective > out.best.solution.objective + 1e-9;
    out.iterations.push_back({lower, upper, eps, d_star,
                              improved ? SearchAction::solved : SearchAction::tightened_upper,
                              fr.solution.objective});
    if (improved) {
      out.best = std::move(fr);
      out.epsilon_star = eps;
    }
    upper = eps;
    if (options.early_stop && d_star == options.d0) break;
  }

  out.bound_applicable = out.best.solution.objective >= 0.0;
  return out;
}

}  // namespace spca
