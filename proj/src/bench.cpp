#include "spca/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include "spca/adaptive.hpp"
#include "spca/framework.hpp"
#include "spca/matrix_io.hpp"
#include "spca/synth.hpp"
#include "spca/threshold.hpp"

namespace spca {

namespace {

using nlohmann::json;

double now_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("bench descriptor: " + where + ": " + what);
}

const json& require(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail(where, std::string("missing '") + key + "'");
  return j.at(key);
}

double get_number(const json& j, const std::string& where, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(where + "." + key, "expected a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& where, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) fail(where + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& where, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(where + "." + key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::string get_string(const json& j, const std::string& where, const char* key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) fail(where + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

struct InstanceSpec {
  std::string name;
  bool from_file = false;
  std::filesystem::path path;
  MatrixFormat format = MatrixFormat::dense_csv;
  Model1Spec model;
};

struct FrameworkSpec {
  std::string mode = "search";
  std::string solver = "bb";
  double time_limit = 60.0;
  int d0 = 30;
  double delta_fraction = 0.01;
  bool early_stop = true;
  double epsilon = -1.0;
  double epsilon_fraction = -1.0;
  NoiseModelParams noise;
};

struct BenchPlan {
  std::uint64_t seed = 42;
  std::vector<int> ks;
  std::string baseline_solver = "bb";
  double baseline_time_limit = 60.0;
  FrameworkSpec framework;
  std::vector<InstanceSpec> instances;
};

Model1Spec parse_model1(const json& j, const std::string& where, std::uint64_t default_seed) {
  Model1Spec spec;
  spec.num_blocks = get_int(j, where, "num_blocks", 0);
  spec.block_size = get_int(j, where, "block_size", 0);
  if (spec.num_blocks < 1) fail(where + ".num_blocks", "expected a positive integer");
  if (spec.block_size < 1) fail(where + ".block_size", "expected a positive integer");
  spec.factor_rows = get_int(j, where, "factor_rows", 100);
  if (spec.factor_rows < 1) fail(where + ".factor_rows", "expected a positive integer");
  spec.sigma = get_number(j, where, "sigma", 0.1);
  if (!(spec.sigma >= 0.0)) fail(where + ".sigma", "expected a nonnegative number");
  spec.seed = static_cast<std::uint64_t>(get_number(j, where, "seed", double(default_seed)));
  spec.permute = get_bool(j, where, "permute", false);
  const std::string noise = get_string(j, where, "noise", "gaussian");
  if (noise == "gaussian")
    spec.noise = NoiseKind::gaussian;
  else if (noise == "bounded-uniform")
    spec.noise = NoiseKind::bounded_uniform;
  else
    fail(where + ".noise", "expected 'gaussian' or 'bounded-uniform'");
  return spec;
}

BenchPlan parse_plan(const json& descriptor) {
  if (!descriptor.is_object()) throw std::invalid_argument("bench descriptor: expected an object");
  BenchPlan plan;
  plan.seed = static_cast<std::uint64_t>(get_number(descriptor, "", "seed", 42.0));

  const json& ks = require(descriptor, "descriptor", "k");
  if (!ks.is_array() || ks.empty()) fail("k", "expected a non-empty array of integers");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!ks[i].is_number_integer() || ks[i].get<int>() < 1)
      fail("k[" + std::to_string(i) + "]", "expected a positive integer");
    plan.ks.push_back(ks[i].get<int>());
  }

  if (descriptor.contains("baseline")) {
    const json& b = descriptor.at("baseline");
    if (!b.is_object()) fail("baseline", "expected an object");
    plan.baseline_solver = get_string(b, "baseline", "solver", "bb");
    plan.baseline_time_limit = get_number(b, "baseline", "time_limit", 60.0);
    if (!(plan.baseline_time_limit > 0)) fail("baseline.time_limit", "expected a positive number");
  }

  if (descriptor.contains("framework")) {
    const json& f = descriptor.at("framework");
    if (!f.is_object()) fail("framework", "expected an object");
    FrameworkSpec& fw = plan.framework;
    fw.mode = get_string(f, "framework", "mode", "search");
    if (fw.mode != "search" && fw.mode != "fixed" && fw.mode != "model")
      fail("framework.mode", "expected 'search', 'fixed' or 'model'");
    fw.solver = get_string(f, "framework", "solver", "bb");
    fw.time_limit = get_number(f, "framework", "time_limit", 60.0);
    fw.d0 = get_int(f, "framework", "d0", 30);
    if (fw.d0 < 1) fail("framework.d0", "expected a positive integer");
    fw.delta_fraction = get_number(f, "framework", "delta_fraction", 0.01);
    if (!(fw.delta_fraction > 0)) fail("framework.delta_fraction", "expected a positive number");
    fw.early_stop = get_bool(f, "framework", "early_stop", true);
    fw.epsilon = get_number(f, "framework", "epsilon", -1.0);
    fw.epsilon_fraction = get_number(f, "framework", "epsilon_fraction", -1.0);
    if (fw.mode == "fixed" && fw.epsilon < 0 && fw.epsilon_fraction < 0)
      fail("framework", "fixed mode needs 'epsilon' or 'epsilon_fraction'");
    fw.noise.c = get_number(f, "framework", "c", 1.0);
    fw.noise.alpha = get_number(f, "framework", "alpha", 0.7);
    fw.noise.u = get_number(f, "framework", "u", 1.0);
  }

  const json& instances = require(descriptor, "descriptor", "instances");
  if (!instances.is_array() || instances.empty())
    fail("instances", "expected a non-empty array");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string where = "instances[" + std::to_string(i) + "]";
    const json& inst = instances[i];
    if (!inst.is_object()) fail(where, "expected an object");
    InstanceSpec spec;
    spec.name = get_string(inst, where, "name", "");
    if (spec.name.empty()) fail(where + ".name", "expected a non-empty string");
    const bool has_file = inst.contains("file");
    const bool has_model = inst.contains("model1");
    if (has_file == has_model) fail(where, "need exactly one of 'file' or 'model1'");
    if (has_file) {
      spec.from_file = true;
      spec.path = get_string(inst, where, "file", "");
      try {
        spec.format = parse_matrix_format(get_string(inst, where, "format", "csv"));
      } catch (const std::invalid_argument& e) {
        fail(where + ".format", e.what());
      }
    } else {
      spec.model = parse_model1(inst.at("model1"), where + ".model1", plan.seed);
    }
    plan.instances.push_back(std::move(spec));
  }
  return plan;
}

BenchRecord run_one(const BenchPlan& plan, const SymMatrix& a, const std::string& name, int k) {
  BenchRecord rec;
  rec.dataset = name;
  rec.d = a.dim();
  rec.k = k;
  rec.mode = plan.framework.mode;
  rec.baseline_solver = plan.baseline_solver;

  const double norm = inf_norm(a);

  {
    const auto t0 = std::chrono::steady_clock::now();
    if (plan.baseline_solver == "bb") {
      BranchAndBoundOptions opts;
      opts.time_limit_seconds = plan.baseline_time_limit;
      const BranchAndBoundResult res = solve_branch_and_bound(a, k, opts);
      rec.baseline_seconds = now_seconds(t0);
      rec.baseline_objective = res.solution.objective;
      rec.baseline_support = res.solution.support;
      rec.baseline_optimal = res.optimal;
    } else {
      const Solver baseline = make_solver(plan.baseline_solver);
      const SparseSolution sol = baseline.solve(a, k);
      rec.baseline_seconds = now_seconds(t0);
      rec.baseline_objective = sol.objective;
      rec.baseline_support = sol.support;
      rec.baseline_optimal = baseline.descriptor.exact;
    }
  }

  {
    BranchAndBoundOptions block_opts;
    block_opts.time_limit_seconds = plan.framework.time_limit;
    const Solver solver = make_solver(plan.framework.solver, block_opts);
    const auto t0 = std::chrono::steady_clock::now();
    if (plan.framework.mode == "search") {
      SearchOptions opts;
      opts.delta = plan.framework.delta_fraction * norm;
      if (!(opts.delta > 0)) opts.delta = plan.framework.delta_fraction;
      opts.d0 = plan.framework.d0;
      opts.early_stop = plan.framework.early_stop;
      const SearchResult res = search_threshold(a, k, solver, opts);
      rec.ours_seconds = now_seconds(t0);
      rec.ours_objective = res.best.solution.objective;
      rec.ours_support = res.best.solution.support;
      rec.epsilon_star = res.epsilon_star;
    } else if (plan.framework.mode == "fixed") {
      const double eps = plan.framework.epsilon >= 0 ? plan.framework.epsilon
                                                     : plan.framework.epsilon_fraction * norm;
      const FrameworkResult res = solve_with_threshold(a, k, eps, solver);
      rec.ours_seconds = now_seconds(t0);
      rec.ours_objective = res.solution.objective;
      rec.ours_support = res.solution.support;
      rec.epsilon_star = eps;
    } else {
      const ModelBasedResult res = solve_model_based(a, k, plan.framework.noise, solver, plan.seed);
      rec.ours_seconds = now_seconds(t0);
      rec.ours_objective = res.framework.solution.objective;
      rec.ours_support = res.framework.solution.support;
      rec.epsilon_star = res.estimate.eps_bar;
    }
  }

  const SymMatrix thresholded = denoise(a, rec.epsilon_star).result;
  rec.d_star = decompose(a, thresholded).largest_block;
  rec.zeros_pct = zeros_percentage(thresholded);
  rec.eps_over_infnorm = norm > 0 ? rec.epsilon_star / norm : 0.0;
  const ErrorPct err = approximation_error_pct(rec.baseline_objective, rec.ours_objective);
  rec.error_pct = err.value;
  rec.error_absolute = err.absolute;
  rec.speedup = rec.ours_seconds > 0 ? rec.baseline_seconds / rec.ours_seconds : 0.0;
  rec.jaccard = jaccard_index(rec.baseline_support, rec.ours_support);
  return rec;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_support(const std::vector<int>& support) {
  std::string out;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(support[i] + 1);
  }
  return out;
}

}  // namespace

double jaccard_index(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<int> inter, uni;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
  if (uni.empty()) return 1.0;
  return double(inter.size()) / double(uni.size());
}

ErrorPct approximation_error_pct(double baseline_objective, double ours_objective) {
  if (baseline_objective > 0.0)
    return {(baseline_objective - ours_objective) / baseline_objective * 100.0, false};
  return {baseline_objective - ours_objective, true};
}

double zeros_percentage(const SymMatrix& a) {
  std::int64_t zeros = 0;
  for (double v : a.entries())
    if (v == 0.0) ++zeros;
  return 100.0 * double(zeros) / double(a.entries().size());
}

std::vector<BenchRecord> run_bench(const nlohmann::json& descriptor,
                                   const std::filesystem::path& base_dir, bool parallel) {
  const BenchPlan plan = parse_plan(descriptor);

  std::vector<std::pair<const InstanceSpec*, int>> tasks;
  for (const auto& inst : plan.instances)
    for (int k : plan.ks) tasks.emplace_back(&inst, k);

  const auto run_task = [&](const std::pair<const InstanceSpec*, int>& task) {
    const InstanceSpec& inst = *task.first;
    SymMatrix a;
    if (inst.from_file) {
      std::filesystem::path p = inst.path;
      if (p.is_relative()) p = base_dir / p;
      a = read_matrix(p, inst.format);
    } else {
      a = generate_model1(inst.model).noisy;
    }
    return run_one(plan, a, inst.name, task.second);
  };

  std::vector<BenchRecord> records;
  if (parallel) {
    std::vector<std::future<BenchRecord>> futures;
    futures.reserve(tasks.size());
    for (const auto& t : tasks)
      futures.push_back(std::async(std::launch::async, run_task, t));
    for (auto& f : futures) records.push_back(f.get());
  } else {
    for (const auto& t : tasks) records.push_back(run_task(t));
  }
  return records;
}

nlohmann::json to_json(const BenchRecord& r) {
  nlohmann::json j;
  j["dataset"] = r.dataset;
  j["d"] = r.d;
  j["k"] = r.k;
  j["baseline_solver"] = r.baseline_solver;
  j["baseline_seconds"] = r.baseline_seconds;
  j["baseline_objective"] = r.baseline_objective;
  j["baseline_optimal"] = r.baseline_optimal;
  nlohmann::json bs = nlohmann::json::array();
  for (int idx : r.baseline_support) bs.push_back(idx + 1);
  j["baseline_support"] = std::move(bs);
  j["mode"] = r.mode;
  j["ours_seconds"] = r.ours_seconds;
  j["ours_objective"] = r.ours_objective;
  nlohmann::json os = nlohmann::json::array();
  for (int idx : r.ours_support) os.push_back(idx + 1);
  j["ours_support"] = std::move(os);
  j["epsilon_star"] = r.epsilon_star;
  j["d_star"] = r.d_star;
  j["error_pct"] = r.error_pct;
  j["error_absolute"] = r.error_absolute;
  j["speedup"] = r.speedup;
  j["jaccard"] = r.jaccard;
  j["eps_over_infnorm"] = r.eps_over_infnorm;
  j["zeros_pct"] = r.zeros_pct;
  return j;
}

nlohmann::json bench_report(const std::vector<BenchRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  nlohmann::json j;
  j["records"] = std::move(arr);
  return j;
}

void write_bench_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open file for writing: " + file.string());
  out << "dataset,d,k,baseline_solver,baseline_seconds,baseline_objective,baseline_optimal,"
         "baseline_support,mode,ours_seconds,ours_objective,ours_support,epsilon_star,d_star,"
         "error_pct,error_absolute,speedup,jaccard,eps_over_infnorm,zeros_pct\n";
  for (const auto& r : records) {
    out << r.dataset << ',' << r.d << ',' << r.k << ',' << r.baseline_solver << ','
        << format_double(r.baseline_seconds) << ',' << format_double(r.baseline_objective) << ','
        << (r.baseline_optimal ? "true" : "false") << ',' << join_support(r.baseline_support)
        << ',' << r.mode << ',' << format_double(r.ours_seconds) << ','
        << format_double(r.ours_objective) << ',' << join_support(r.ours_support) << ','
        << format_double(r.epsilon_star) << ',' << r.d_star << ','
        << format_double(r.error_pct) << ',' << (r.error_absolute ? "true" : "false") << ','
        << format_double(r.speedup) << ',' << format_double(r.jaccard) << ','
        << format_double(r.eps_over_infnorm) << ',' << format_double(r.zeros_pct) << '\n';
  }
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace spca
