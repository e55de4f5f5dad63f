// Command-line front end: solve a single instance, run a benchmark
// descriptor, profile thresholds, generate synthetic instances, or estimate
// the noise level. Results are JSON (CSV for tables); failures print
// {"error": {"code", "message"}} and exit nonzero.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spca/adaptive.hpp"
#include "spca/bench.hpp"
#include "spca/blocks.hpp"
#include "spca/framework.hpp"
#include "spca/matrix_io.hpp"
#include "spca/report.hpp"
#include "spca/solvers.hpp"
#include "spca/synth.hpp"

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
  CliError(std::string code_, const std::string& message)
      : std::runtime_error(message), code(std::move(code_)) {}
  std::string code;
};

// "data-csv" reads raw observations and takes their sample covariance; the
// other names are forwarded to the matrix readers.
spca::SymMatrix load_matrix(const std::string& file, const std::string& format) {
  if (format == "data-csv") return spca::sample_covariance(spca::read_data_csv(file));
  return spca::read_matrix(file, spca::parse_matrix_format(format));
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw spca::IoError("cannot open file for writing: " + out_path);
  out << text;
  if (!out) throw spca::IoError("write failed: " + out_path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SolveArgs {
  std::string matrix;
  std::string format = "csv";
  int k = 1;
  std::string mode = "search";
  std::string solver = "bb";
  double time_limit = 60.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double delta_fraction = 0.01;
  int d0 = 30;
  bool early_stop = true;
  std::vector<double> range;
  double c = 1.0;
  double alpha = 0.7;
  double u = 1.0;
  std::uint64_t seed = 42;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  const spca::SymMatrix a = load_matrix(args.matrix, args.format);
  spca::BranchAndBoundOptions bb;
  bb.time_limit_seconds = args.time_limit;
  const spca::Solver solver = spca::make_solver(args.solver, bb);

  json report;
  report["matrix"] = args.matrix;
  report["d"] = a.dim();
  report["k"] = args.k;
  report["mode"] = args.mode;
  report["solver"] = args.solver;

  if (args.mode == "fixed") {
    const spca::FrameworkResult res = spca::solve_with_threshold(a, args.k, args.epsilon, solver);
    report.update(spca::to_json(res));
  } else if (args.mode == "search") {
    spca::SearchOptions opts;
    opts.delta = args.delta > 0 ? args.delta : args.delta_fraction * spca::inf_norm(a);
    if (!(opts.delta > 0)) opts.delta = args.delta_fraction;
    opts.d0 = args.d0;
    opts.early_stop = args.early_stop;
    if (!args.range.empty()) opts.range = std::make_pair(args.range[0], args.range[1]);
    const spca::SearchResult res = spca::search_threshold(a, args.k, solver, opts);
    report.update(spca::to_json(res));
    report["solution"] = spca::to_json(res.best.solution);
  } else if (args.mode == "model") {
    spca::NoiseModelParams params{args.c, args.alpha, args.u};
    const spca::ModelBasedResult res =
        spca::solve_model_based(a, args.k, params, solver, args.seed);
    report.update(spca::to_json(res.framework));
    report["estimate"] = spca::to_json(res.estimate);
    report["pipeline_guarantee"] = res.guarantee;
  } else {
    throw CliError("invalid-argument", "unknown mode: " + args.mode);
  }
  emit(report, args.out);
  return 0;
}

struct BenchArgs {
  std::string descriptor;
  std::string out_csv;
  std::string out_json;
  bool parallel = false;
};

int run_bench_cmd(const BenchArgs& args) {
  std::ifstream in(args.descriptor);
  if (!in) throw spca::IoError("cannot open file: " + args.descriptor);
  json descriptor;
  try {
    in >> descriptor;
  } catch (const json::parse_error& e) {
    throw CliError("parse", std::string("descriptor is not valid JSON: ") + e.what());
  }
  const auto base_dir = std::filesystem::path(args.descriptor).parent_path();
  const std::vector<spca::BenchRecord> records =
      spca::run_bench(descriptor, base_dir, args.parallel);
  if (!args.out_csv.empty()) spca::write_bench_csv(records, args.out_csv);
  if (!args.out_json.empty()) emit(spca::bench_report(records), args.out_json);
  if (args.out_csv.empty() && args.out_json.empty()) emit(spca::bench_report(records), "");
  return 0;
}

struct ProfileArgs {
  std::string matrix;
  std::string format = "csv";
  std::vector<double> grid;
  std::string out;
};

int run_profile(const ProfileArgs& args) {
  const spca::SymMatrix a = load_matrix(args.matrix, args.format);
  const std::vector<spca::IntdimPoint> points = spca::intdim_profile(a, args.grid);
  std::string csv = "epsilon,intdim,num_blocks,largest_block\n";
  for (const auto& p : points) {
    csv += format_double(p.epsilon);
    csv += ',' + std::to_string(p.intdim);
    csv += ',' + std::to_string(p.num_blocks);
    csv += ',' + std::to_string(p.largest_block);
    csv += '\n';
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.out);
    if (!out) throw spca::IoError("cannot open file for writing: " + args.out);
    out << csv;
    if (!out) throw spca::IoError("write failed: " + args.out);
  }
  return 0;
}

struct SynthArgs {
  std::string kind = "model1";
  int num_blocks = 30;
  int block_size = 20;
  int factor_rows = 100;
  double sigma = 0.1;
  bool permute = false;
  std::string noise = "gaussian";
  int d = 10;
  std::uint64_t seed = 42;
  std::string out;
  std::string clean_out;
  std::string format = "csv";
};

int run_synth(const SynthArgs& args) {
  const spca::MatrixFormat format = spca::parse_matrix_format(args.format);
  json summary;
  summary["kind"] = args.kind;
  summary["file"] = args.out;
  if (args.kind == "model1") {
    spca::Model1Spec spec;
    spec.num_blocks = args.num_blocks;
    spec.block_size = args.block_size;
    spec.factor_rows = args.factor_rows;
    spec.sigma = args.sigma;
    spec.seed = args.seed;
    spec.permute = args.permute;
    if (args.noise == "gaussian")
      spec.noise = spca::NoiseKind::gaussian;
    else if (args.noise == "bounded-uniform")
      spec.noise = spca::NoiseKind::bounded_uniform;
    else
      throw CliError("invalid-argument", "unknown noise kind: " + args.noise);
    const spca::Model1Instance inst = spca::generate_model1(spec);
    spca::write_matrix(inst.noisy, args.out, format);
    if (!args.clean_out.empty()) {
      spca::write_matrix(inst.clean, args.clean_out, format);
      summary["clean_file"] = args.clean_out;
    }
    summary["d"] = inst.noisy.dim();
  } else if (args.kind == "psd") {
    const spca::SymMatrix a = spca::generate_random_psd(args.d, args.seed);
    spca::write_matrix(a, args.out, format);
    summary["d"] = a.dim();
  } else if (args.kind == "sym") {
    const spca::SymMatrix a = spca::generate_random_symmetric(args.d, args.seed);
    spca::write_matrix(a, args.out, format);
    summary["d"] = a.dim();
  } else {
    throw CliError("invalid-argument", "unknown instance kind: " + args.kind);
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct EstimateArgs {
  std::string matrix;
  std::string format = "csv";
  double c = 1.0;
  double alpha = 0.7;
  double u = 1.0;
  std::uint64_t seed = 42;
  std::string out;
};

int run_estimate(const EstimateArgs& args) {
  const spca::SymMatrix a = load_matrix(args.matrix, args.format);
  spca::NoiseModelParams params{args.c, args.alpha, args.u};
  const spca::NoiseEstimate est = spca::estimate_noise(a, params, args.seed);
  emit(spca::to_json(est), args.out);
  return 0;
}

int report_error(const std::string& code, const std::string& message) {
  json err;
  err["error"]["code"] = code;
  err["error"]["message"] = message;
  std::cerr << err.dump(2) << "\n";
  return 1;
}

void add_matrix_options(CLI::App* cmd, std::string& matrix, std::string& format) {
  cmd->add_option("--matrix", matrix, "Input matrix file")->required();
  cmd->add_option("--format", format,
                  "Input format: mm, csv, or data-csv (raw observations, one row per sample)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse PCA through covariance thresholding and block decomposition"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance and print a JSON report");
  add_matrix_options(solve, solve_args.matrix, solve_args.format);
  solve->add_option("--k", solve_args.k, "Cardinality bound")->required()->check(CLI::PositiveNumber);
  solve->add_option("--mode", solve_args.mode, "fixed, model, or search (default search)")
      ->check(CLI::IsMember({"fixed", "model", "search"}));
  solve->add_option("--solver", solve_args.solver, "exhaustive, bb, greedy, or trunc-eig");
  solve->add_option("--time-limit", solve_args.time_limit, "Per-solve time limit in seconds (bb)");
  solve->add_option("--epsilon", solve_args.epsilon, "Threshold (fixed mode)");
  solve->add_option("--delta", solve_args.delta, "Interval width at which the search stops");
  solve->add_option("--delta-fraction", solve_args.delta_fraction,
                    "delta as a fraction of max|A_ij| (default 0.01, used when --delta is unset)");
  solve->add_option("--d0", solve_args.d0, "Largest block size the search may solve");
  solve->add_flag("--early-stop,!--no-early-stop", solve_args.early_stop,
                  "Stop the search once a run hits block size d0 (default on)");
  solve->add_option("--range", solve_args.range, "Search interval: lower upper")->expected(2);
  solve->add_option("--c", solve_args.c, "Structure-size constant (model mode)");
  solve->add_option("--alpha", solve_args.alpha, "Structure-size exponent (model mode)");
  solve->add_option("--u", solve_args.u, "Sub-Gaussian tail constant (model mode)");
  solve->add_option("--seed", solve_args.seed, "Seed for the noise estimator");
  solve->add_option("--out", solve_args.out, "Report file (stdout when unset)");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Run a JSON experiment descriptor");
  bench->add_option("--descriptor", bench_args.descriptor, "Experiment descriptor JSON file")
      ->required();
  bench->add_option("--out-csv", bench_args.out_csv, "Write the record table as CSV");
  bench->add_option("--out-json", bench_args.out_json, "Write the record table as JSON");
  bench->add_flag("--parallel", bench_args.parallel,
                  "Run instances concurrently (timings stay per-solve)");

  ProfileArgs profile_args;
  CLI::App* profile =
      app.add_subcommand("profile", "Largest-block profile over a threshold grid (CSV)");
  add_matrix_options(profile, profile_args.matrix, profile_args.format);
  profile->add_option("--grid", profile_args.grid, "Ascending thresholds")
      ->required()
      ->delimiter(',');
  profile->add_option("--out", profile_args.out, "CSV file (stdout when unset)");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic instance file");
  synth->add_option("--kind", synth_args.kind, "model1, psd, or sym")
      ->check(CLI::IsMember({"model1", "psd", "sym"}));
  synth->add_option("--blocks", synth_args.num_blocks, "Number of diagonal blocks (model1)");
  synth->add_option("--block-size", synth_args.block_size, "Rows per block (model1)");
  synth->add_option("--factor-rows", synth_args.factor_rows, "Factor rows per block (model1)");
  synth->add_option("--sigma", synth_args.sigma, "Noise standard deviation (model1)");
  synth->add_flag("--permute", synth_args.permute, "Relabel coordinates randomly (model1)");
  synth->add_option("--noise", synth_args.noise, "gaussian or bounded-uniform (model1)");
  synth->add_option("--d", synth_args.d, "Dimension (psd, sym)");
  synth->add_option("--seed", synth_args.seed, "Generator seed");
  synth->add_option("--out", synth_args.out, "Output matrix file")->required();
  synth->add_option("--clean-out", synth_args.clean_out, "Also write the noiseless matrix here");
  synth->add_option("--format", synth_args.format, "Output format: mm or csv");

  EstimateArgs estimate_args;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the noise level of a matrix");
  add_matrix_options(estimate, estimate_args.matrix, estimate_args.format);
  estimate->add_option("--c", estimate_args.c, "Structure-size constant");
  estimate->add_option("--alpha", estimate_args.alpha, "Structure-size exponent");
  estimate->add_option("--u", estimate_args.u, "Sub-Gaussian tail constant");
  estimate->add_option("--seed", estimate_args.seed, "Subset shuffle seed");
  estimate->add_option("--out", estimate_args.out, "Report file (stdout when unset)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (bench->parsed()) return run_bench_cmd(bench_args);
    if (profile->parsed()) return run_profile(profile_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (estimate->parsed()) return run_estimate(estimate_args);
  } catch (const CliError& e) {
    return report_error(e.code, e.what());
  } catch (const spca::ParseError& e) {
    return report_error("parse", e.what());
  } catch (const spca::IoError& e) {
    return report_error("io", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error("invalid-argument", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return report_error("internal", "no subcommand dispatched");
}
