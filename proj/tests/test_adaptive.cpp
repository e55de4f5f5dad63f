#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "spca/adaptive.hpp"
#include "spca/synth.hpp"

using spca::NoiseEstimate;
using spca::NoiseModelParams;
using spca::SearchAction;
using spca::SearchOptions;
using spca::SearchResult;
using spca::Solver;
using spca::SymMatrix;

TEST_CASE("noise estimate of a constant matrix is exact") {
  // Every squared entry is c^2, so every subset mean and their median is c^2.
  const double c = 0.25;
  const int d = 12;
  const SymMatrix a(d, std::vector<double>(static_cast<std::size_t>(d) * d, c));
  const NoiseEstimate est = spca::estimate_noise(a, {}, 9);
  CHECK(est.sigma_bar_sq == doctest::Approx(c * c).epsilon(1e-14));
  CHECK(est.eps_bar ==
        doctest::Approx(2.0 * c * std::sqrt(3.0 * std::log(double(d)))).epsilon(1e-12));
}

TEST_CASE("noise estimate of a sparse signal without noise is zero") {
  spca::Model1Spec spec;
  spec.num_blocks = 10;
  spec.block_size = 6;
  spec.sigma = 0.0;
  spec.seed = 3;
  const SymMatrix a = spca::generate_model1(spec).noisy;
  const NoiseEstimate est = spca::estimate_noise(a, {}, 17);
  CHECK(est.sigma_bar_sq == 0.0);
  CHECK(est.eps_bar == 0.0);
}

TEST_CASE("subset count follows the capped formula") {
  const NoiseModelParams p{1.0, 0.7, 1.0};
  const int d = 12;
  const SymMatrix a = oracle::random_symmetric(d, 8);
  const NoiseEstimate est = spca::estimate_noise(a, p, 1);
  const std::int64_t pairs = static_cast<std::int64_t>(d) * (d + 1) / 2;
  const std::int64_t raw =
      static_cast<std::int64_t>(std::floor((2.0 * p.c + 2.0) * std::pow(double(d), 1.7)));
  CHECK(est.m_subsets == std::min(raw, pairs / 2));

  // Small enough c and alpha leave the formula below the cap.
  const NoiseModelParams tiny{0.01, 0.1, 1.0};
  const SymMatrix big = oracle::random_symmetric(40, 8);
  const NoiseEstimate est2 = spca::estimate_noise(big, tiny, 1);
  const std::int64_t raw2 =
      static_cast<std::int64_t>(std::floor((2.0 * tiny.c + 2.0) * std::pow(40.0, 1.1)));
  CHECK(est2.m_subsets == raw2);
}

TEST_CASE("noise estimate is deterministic per seed") {
  const SymMatrix a = oracle::random_symmetric(15, 77);
  const NoiseEstimate e1 = spca::estimate_noise(a, {}, 5);
  const NoiseEstimate e2 = spca::estimate_noise(a, {}, 5);
  CHECK(e1.sigma_bar_sq == e2.sigma_bar_sq);
  CHECK(e1.eps_bar == e2.eps_bar);
  CHECK(e1.m_subsets == e2.m_subsets);
}

TEST_CASE("noise model parameters are validated") {
  const SymMatrix a = oracle::random_symmetric(5, 1);
  CHECK_THROWS_AS(spca::estimate_noise(a, {0.0, 0.7, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(spca::estimate_noise(a, {1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(spca::estimate_noise(a, {1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(spca::estimate_noise(a, {1.0, 0.7, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(spca::estimate_noise(SymMatrix::zero(1), {}), std::invalid_argument);
  CHECK_NOTHROW(spca::estimate_noise(a, {1.0, 0.7, 1.0}));
}

TEST_CASE("model-based pipeline wires the estimate into the framework") {
  spca::Model1Spec spec;
  spec.num_blocks = 6;
  spec.block_size = 5;
  spec.sigma = 0.05;
  spec.seed = 21;
  const SymMatrix a = spca::generate_model1(spec).noisy;
  const Solver solver = spca::make_solver("exhaustive");
  const spca::ModelBasedResult res = spca::solve_model_based(a, 2, {}, solver, 4);
  CHECK(res.framework.epsilon == res.estimate.eps_bar);
  // Exact profile: guarantee == objective - 3 k eps_bar.
  CHECK(res.guarantee ==
        doctest::Approx(res.framework.solution.objective - 3.0 * 2 * res.estimate.eps_bar));
}

TEST_CASE("threshold search reproduces the diagonal hand trace") {
  const SymMatrix a = SymMatrix::diagonal({3.0, 2.0, 1.0});
  SearchOptions opts;
  opts.delta = 0.5;
  opts.d0 = 3;
  const SearchResult res = spca::search_threshold(a, 1, spca::make_solver("exhaustive"), opts);

  CHECK(res.epsilon_star == 3.0);
  CHECK(res.best.solution.objective == doctest::Approx(3.0));
  REQUIRE(res.iterations.size() == 4);
  CHECK(res.iterations[0].action == SearchAction::solved);
  CHECK(res.iterations[0].epsilon == 3.0);
  CHECK(res.iterations[0].d_star == 0);
  CHECK(res.iterations[1].action == SearchAction::tightened_upper);
  CHECK(res.iterations[1].epsilon == doctest::Approx(1.5));
  CHECK(res.iterations[1].d_star == 1);
  CHECK(res.iterations[2].action == SearchAction::skipped_memo);
  CHECK(res.iterations[3].action == SearchAction::skipped_memo);
  CHECK(res.bound_applicable);
}

TEST_CASE("each search iteration halves the interval") {
  const SymMatrix a = oracle::random_psd(10, 33);
  SearchOptions opts;
  opts.delta = 0.01 * spca::inf_norm(a);
  opts.d0 = 5;
  opts.early_stop = false;
  const SearchResult res = spca::search_threshold(a, 2, spca::make_solver("exhaustive"), opts);
  for (std::size_t t = 2; t < res.iterations.size(); ++t) {
    const double prev = res.iterations[t - 1].upper - res.iterations[t - 1].lower;
    const double cur = res.iterations[t].upper - res.iterations[t].lower;
    CHECK(cur == doctest::Approx(prev / 2).epsilon(1e-9));
  }
  const double width = spca::inf_norm(a);
  const int bound = static_cast<int>(std::ceil(std::log2(width / opts.delta))) + 1;
  CHECK(static_cast<int>(res.iterations.size()) <= bound);
}

TEST_CASE("no block size is ever solved twice") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SymMatrix a = oracle::random_psd(12, seed + 200);
    SearchOptions opts;
    opts.delta = 0.01 * spca::inf_norm(a);
    opts.d0 = 6;
    const SearchResult res = spca::search_threshold(a, 2, spca::make_solver("exhaustive"), opts);
    std::multiset<int> solved;
    for (const auto& it : res.iterations)
      if (it.action == SearchAction::solved || it.action == SearchAction::tightened_upper)
        solved.insert(it.d_star);
    for (int size : res.solved_sizes) CHECK(solved.count(size) == 1);
    CHECK(solved.size() == res.solved_sizes.size());
  }
}

TEST_CASE("solved iterations never exceed the block-size budget") {
  const SymMatrix a = oracle::random_psd(12, 9);
  SearchOptions opts;
  opts.delta = 0.005 * spca::inf_norm(a);
  opts.d0 = 4;
  const SearchResult res = spca::search_threshold(a, 2, spca::make_solver("exhaustive"), opts);
  for (std::size_t t = 1; t < res.iterations.size(); ++t) {
    const auto& it = res.iterations[t];
    if (it.action == SearchAction::solved || it.action == SearchAction::tightened_upper)
      CHECK(it.d_star <= opts.d0);
    if (it.action == SearchAction::skipped_too_big) CHECK(it.d_star > opts.d0);
  }
}

TEST_CASE("early stop ends the search once d0 is solved") {
  const SymMatrix a = oracle::random_psd(12, 57);
  SearchOptions opts;
  opts.delta = 1e-6 * spca::inf_norm(a);
  opts.d0 = 6;
  opts.early_stop = true;
  const SearchResult stopped = spca::search_threshold(a, 2, spca::make_solver("exhaustive"), opts);
  opts.early_stop = false;
  const SearchResult full = spca::search_threshold(a, 2, spca::make_solver("exhaustive"), opts);

  if (!stopped.iterations.empty() && stopped.iterations.back().d_star == opts.d0 &&
      stopped.iterations.size() < full.iterations.size()) {
    // The early-stopped run ends exactly at the first d0-sized solve.
    const auto& last = stopped.iterations.back();
    CHECK((last.action == SearchAction::solved ||
           last.action == SearchAction::tightened_upper));
  }
  CHECK(full.iterations.size() >= stopped.iterations.size());
  // Both runs agree on everything up to the stop point.
  for (std::size_t t = 0; t < stopped.iterations.size(); ++t) {
    CHECK(full.iterations[t].epsilon == stopped.iterations[t].epsilon);
    CHECK(full.iterations[t].action == stopped.iterations[t].action);
  }
}

TEST_CASE("the reported best matches the best solved objective") {
  const SymMatrix a = oracle::random_psd(11, 91);
  SearchOptions opts;
  opts.delta = 0.01 * spca::inf_norm(a);
  opts.d0 = 5;
  opts.early_stop = false;
  const SearchResult res = spca::search_threshold(a, 3, spca::make_solver("exhaustive"), opts);
  double best = -1e300;
  double best_eps = 0.0;
  for (const auto& it : res.iterations) {
    if (it.objective && *it.objective > best + 1e-9) {
      best = *it.objective;
      best_eps = it.epsilon;
    }
  }
  CHECK(res.best.solution.objective == doctest::Approx(best));
  CHECK(res.epsilon_star == best_eps);
}

TEST_CASE("custom ranges and validation") {
  const SymMatrix a = oracle::random_psd(8, 13);
  const Solver solver = spca::make_solver("exhaustive");
  SearchOptions opts;
  opts.delta = 0.05;
  opts.d0 = 4;
  opts.range = std::make_pair(0.1, 0.4);
  const SearchResult res = spca::search_threshold(a, 2, solver, opts);
  CHECK(res.iterations[0].epsilon == 0.4);
  for (const auto& it : res.iterations) {
    CHECK(it.epsilon >= 0.1);
    CHECK(it.epsilon <= 0.4);
  }

  SearchOptions bad;
  bad.delta = 0.0;
  CHECK_THROWS_AS(spca::search_threshold(a, 2, solver, bad), std::invalid_argument);
  bad.delta = 0.1;
  bad.d0 = 0;
  CHECK_THROWS_AS(spca::search_threshold(a, 2, solver, bad), std::invalid_argument);
  bad.d0 = 4;
  bad.range = std::make_pair(0.5, 0.2);
  CHECK_THROWS_AS(spca::search_threshold(a, 2, solver, bad), std::invalid_argument);
  bad.range = std::make_pair(-0.1, 0.2);
  CHECK_THROWS_AS(spca::search_threshold(a, 2, solver, bad), std::invalid_argument);
}

TEST_CASE("a negative best objective is flagged as outside the bound's reach") {
  const SymMatrix neg = SymMatrix::diagonal({-1.0, -2.0, -3.0});
  SearchOptions opts;
  opts.delta = 0.2;
  opts.d0 = 3;
  const SearchResult res = spca::search_threshold(neg, 1, spca::make_solver("exhaustive"), opts);
  CHECK(res.best.solution.objective == doctest::Approx(-1.0));
  CHECK(!res.bound_applicable);
}

TEST_CASE("search action names render for reports") {
  CHECK(std::string(spca::to_string(SearchAction::solved)) == "solved");
  CHECK(std::string(spca::to_string(SearchAction::tightened_upper)) == "tightened-upper");
  CHECK(std::string(spca::to_string(SearchAction::skipped_memo)) == "skipped-memo");
  CHECK(std::string(spca::to_string(SearchAction::skipped_too_big)) == "skipped-too-big");
}
