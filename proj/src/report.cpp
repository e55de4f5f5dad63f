#include "spca/report.hpp"

#include <stdexcept>

namespace spca {

nlohmann::json to_json(const SparseSolution& s) {
  nlohmann::json j;
  j["objective"] = s.objective;
  nlohmann::json support = nlohmann::json::array();
  for (int idx : s.support) support.push_back(idx + 1);
  j["support"] = std::move(support);
  j["coefficients"] = s.coeffs;
  return j;
}

SparseSolution solution_from_json(const nlohmann::json& j) {
  SparseSolution s;
  s.objective = j.at("objective").get<double>();
  for (const auto& v : j.at("support")) {
    const int idx = v.get<int>();
    if (idx < 1) throw std::invalid_argument("solution support indices are 1-based");
    s.support.push_back(idx - 1);
  }
  s.coeffs = j.at("coefficients").get<std::vector<double>>();
  if (s.coeffs.size() != s.support.size())
    throw std::invalid_argument("solution support and coefficients differ in length");
  return s;
}

nlohmann::json to_json(const NoiseEstimate& e) {
  nlohmann::json j;
  j["sigma_bar_sq"] = e.sigma_bar_sq;
  j["eps_bar"] = e.eps_bar;
  j["m_subsets"] = e.m_subsets;
  j["c"] = e.params.c;
  j["alpha"] = e.params.alpha;
  j["u"] = e.params.u;
  j["seed"] = e.seed;
  return j;
}

nlohmann::json to_json(const FrameworkResult& r) {
  nlohmann::json j;
  j["epsilon"] = r.epsilon;
  j["objective"] = r.solution.objective;
  j["solution"] = to_json(r.solution);
  j["d_star"] = r.decomposition.largest_block;
  j["num_blocks"] = r.decomposition.num_blocks();
  j["num_isolated"] = static_cast<int>(r.decomposition.isolated.size());
  j["winning_block"] = r.winning_block + 1;
  j["guarantee"] = r.guarantee;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& rec : r.per_block) {
    nlohmann::json b;
    b["block"] = rec.block + 1;
    b["size"] = static_cast<int>(r.decomposition.index_sets[rec.block].size());
    b["objective"] = rec.objective;
    b["seconds"] = rec.seconds;
    blocks.push_back(std::move(b));
  }
  j["per_block"] = std::move(blocks);
  return j;
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json j;
  j["epsilon_star"] = r.epsilon_star;
  j["objective"] = r.best.solution.objective;
  j["bound_applicable"] = r.bound_applicable;
  j["solved_sizes"] = std::vector<int>(r.solved_sizes.begin(), r.solved_sizes.end());
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& it : r.iterations) {
    nlohmann::json e;
    e["lower"] = it.lower;
    e["upper"] = it.upper;
    e["epsilon"] = it.epsilon;
    e["d_star"] = it.d_star;
    e["action"] = to_string(it.action);
    if (it.objective) e["objective"] = *it.objective;
    iters.push_back(std::move(e));
  }
  j["iterations"] = std::move(iters);
  j["best"] = to_json(r.best);
  return j;
}

}  // namespace spca
