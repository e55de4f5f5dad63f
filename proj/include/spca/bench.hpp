#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "spca/sym_matrix.hpp"

namespace spca {

// |intersection| / |union| of two index sets; 1 when both are empty.
double jaccard_index(const std::vector<int>& a, const std::vector<int>& b);

struct ErrorPct {
  double value = 0.0;
  // When the baseline objective is not positive the relative form is
  // meaningless, so value holds the plain difference instead.
  bool absolute = false;
};

// (baseline - ours) / baseline * 100 for a positive baseline objective.
ErrorPct approximation_error_pct(double baseline_objective, double ours_objective);

// Percentage of exactly-zero entries.
double zeros_percentage(const SymMatrix& a);

struct BenchRecord {
  std::string dataset;
  int d = 0;
  int k = 0;
  std::string baseline_solver;
  double baseline_seconds = 0.0;
  double baseline_objective = 0.0;
  bool baseline_optimal = true;
  std::vector<int> baseline_support;  // 0-based internally
  std::string mode;
  double ours_seconds = 0.0;
  double ours_objective = 0.0;
  std::vector<int> ours_support;
  double epsilon_star = 0.0;
  int d_star = 0;
  double error_pct = 0.0;
  bool error_absolute = false;
  double speedup = 0.0;
  double jaccard = 0.0;
  double eps_over_infnorm = 0.0;
  double zeros_pct = 0.0;
};

// Runs the experiments described by a JSON descriptor:
//
// {
//   "seed": 42,
//   "k": [2, 3],
//   "baseline": {"solver": "bb", "time_limit": 60.0},
//   "framework": {
//     "mode": "search" | "fixed" | "model",
//     "solver": "bb", "time_limit": 60.0,
//     "d0": 30, "delta_fraction": 0.01, "early_stop": true,   (search)
//     "epsilon": 0.5 | "epsilon_fraction": 0.1,               (fixed)
//     "c": 1.0, "alpha": 0.7, "u": 1.0                        (model)
//   },
//   "instances": [
//     {"name": "...", "file": "m.csv", "format": "csv"},
//     {"name": "...", "model1": {"num_blocks": 30, "block_size": 20,
//       "factor_rows": 100, "sigma": 0.1, "seed": 42, "permute": false}}
//   ]
// }
//
// Relative instance paths resolve against base_dir. Validation failures
// throw std::invalid_argument naming the offending field. Timers wrap only
// the solve calls. With parallel set, instances run concurrently.
std::vector<BenchRecord> run_bench(const nlohmann::json& descriptor,
                                   const std::filesystem::path& base_dir, bool parallel = false);

nlohmann::json to_json(const BenchRecord& r);
nlohmann::json bench_report(const std::vector<BenchRecord>& records);
void write_bench_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& file);

}  // namespace spca
