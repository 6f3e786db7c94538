// Command-line driver: end-to-end optimization, standalone error/timing
// evaluation, and benchmark generation.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "als/bench_io.hpp"
#include "als/dcgwo.hpp"
#include "als/gen.hpp"
#include "als/postopt.hpp"
#include "als/rng.hpp"

namespace {

using namespace als;

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

std::string stem_of(const std::string& path) {
  std::string s = path;
  if (auto p = s.find_last_of('.'); p != std::string::npos && p > 0)
    s = s.substr(0, p);
  return s;
}

struct CommonEvalOpts {
  bool exhaustive = false;
  std::size_t vectors = 100000;
  std::uint64_t seed = 1;
};

VectorSet make_vectors(int m, const CommonEvalOpts& opts) {
  if (opts.exhaustive || m <= 16) return gen_vectors_exhaustive(m);
  return gen_vectors_mc(m, opts.vectors, opts.seed);
}

struct OptimizeOpts {
  std::string netlist_path;
  std::string metric = "er";
  double bound = 0.05;
  double area_con = -1.0;
  std::string lib_path;
  std::string out_path, report_path, trace_path;
  OptimizerConfig cfg;
};

int cmd_optimize(const OptimizeOpts& opts) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(opts.netlist_path);
  Netlist accurate = parse_bench(text, opts.netlist_path);

  OptimizerConfig cfg = opts.cfg;
  cfg.metric = opts.metric == "nmed" ? ErrorMetric::Nmed
                                     : ErrorMetric::ErrorRate;
  cfg.error_bound = opts.bound;
  if (cfg.error_bound < 0) {
    std::cerr << "error: negative error bound is infeasible\n";
    return 2;
  }

  CellLibrary lib = opts.lib_path.empty()
                        ? (cfg.unit_delay ? CellLibrary::unit_delay()
                                          : CellLibrary::defaults())
                        : CellLibrary::from_file(opts.lib_path);
  ReferenceContext ctx = make_context(std::move(accurate), cfg, std::move(lib));
  double area_con = opts.area_con >= 0 ? opts.area_con : ctx.area_ori;

  RunResult result = run(ctx, cfg);
  PostOptResult post =
      post_optimize(result.best.netlist, ctx, area_con,
                    derive_seed(cfg.seed, 0xF0E57ULL), cfg.num_vectors);

  auto t1 = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double>(t1 - t0).count();

  std::string stem = stem_of(opts.netlist_path);
  std::string out_path =
      opts.out_path.empty() ? stem + ".approx.bench" : opts.out_path;
  write_bench_file(post.final, out_path);

  std::ostringstream rep;
  char buf[64];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    rep << key << " = " << buf << "\n";
  };
  rep << "schema_version = 1\n";
  rep << "input = " << opts.netlist_path << "\n";
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  rep << "input_hash = " << buf << "\n";
  rep << "metric = " << opts.metric << "\n";
  put("bound", cfg.error_bound);
  put("area_con", area_con);
  rep << "seed = " << cfg.seed << "\n";
  rep << "population = " << cfg.population_size << "\n";
  rep << "iterations = " << cfg.max_iterations << "\n";
  put("depth_weight", cfg.depth_weight);
  rep << "vectors = " << ctx.vectors.num_vectors << "\n";
  rep << "vector_mode = " << (ctx.vectors.exhaustive ? "exhaustive" : "mc")
      << "\n";
  put("cpd_ori", ctx.cpd_ori);
  put("area_ori", ctx.area_ori);
  put("dcgwo_depth", result.best.depth_app);
  put("dcgwo_area", result.best.area_app);
  put("dcgwo_error", error_value(result.best.err, cfg.metric));
  put("cpd_fac", post.cpd_fac);
  put("ratio_cpd", post.ratio_cpd);
  put("final_area", post.final_area);
  put("final_er", post.final_error.er);
  put("final_nmed", post.final_error.nmed);
  rep << "area_infeasible = " << (post.area_infeasible ? 1 : 0) << "\n";
  rep << "feasibility_failed = " << (result.feasibility_failed ? 1 : 0)
      << "\n";
  rep << "output = " << out_path << "\n";
  put("wall_seconds", wall);

  std::string report_path =
      opts.report_path.empty() ? stem + ".report.txt" : opts.report_path;
  write_file(report_path, rep.str());
  std::string trace_path =
      opts.trace_path.empty() ? stem + ".trace.csv" : opts.trace_path;
  write_file(trace_path, trace_csv(result.trace));
  std::cout << rep.str();
  return 0;
}

int cmd_eval(const std::string& acc_path, const std::string& app_path,
             const CommonEvalOpts& opts) {
  Netlist accurate = read_bench_file(acc_path);
  Netlist approx = read_bench_file(app_path);
  if (accurate.primary_inputs.size() != approx.primary_inputs.size() ||
      accurate.primary_outputs.size() != approx.primary_outputs.size()) {
    std::cerr << "error: netlist interfaces do not match\n";
    return 1;
  }
  VectorSet v =
      make_vectors(static_cast<int>(accurate.primary_inputs.size()), opts);
  ErrorReport rep = error_report(accurate, approx, v);
  std::printf("vectors = %zu (%s)\n", rep.num_vectors,
              v.exhaustive ? "exhaustive" : "monte-carlo");
  std::printf("er = %.6f\n", rep.er);
  std::printf("nmed = %.6f\n", rep.nmed);
  for (std::size_t i = 0; i < rep.per_po_error.size(); ++i)
    std::printf("po%zu_error = %.6f\n", i, rep.per_po_error[i]);
  return 0;
}

int cmd_sta(const std::string& path, bool unit_delay,
            const std::string& lib_path, int max_paths) {
  Netlist n = read_bench_file(path);
  CellLibrary lib = lib_path.empty()
                        ? (unit_delay ? CellLibrary::unit_delay()
                                      : CellLibrary::defaults())
                        : CellLibrary::from_file(lib_path);
  TimingReport rep = analyze(n, lib, {}, max_paths);
  std::printf("cpd = %.6f\n", rep.cpd);
  std::printf("area = %.6f\n", area(n, lib));
  for (std::size_t i = 0; i < rep.po_arrival.size(); ++i)
    std::printf("po%zu_arrival = %.6f\n", i, rep.po_arrival[i]);
  for (std::size_t p = 0; p < rep.critical_paths.size(); ++p) {
    std::printf("path%zu =", p);
    for (GateId g : rep.critical_paths[p]) {
      const Gate& gate = n.gate(g);
      std::printf(" %s",
                  gate.name.empty() ? std::to_string(g).c_str()
                                    : gate.name.c_str());
    }
    std::printf("\n");
  }
  return 0;
}

int emit_generated(const Netlist& n, const std::string& out_path) {
  if (out_path.empty())
    std::cout << emit_bench(n);
  else
    write_bench_file(n, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timing-driven approximate logic synthesis toolkit"};
  app.require_subcommand(1);

  // optimize
  OptimizeOpts opt;
  auto* optimize = app.add_subcommand(
      "optimize", "End-to-end approximate synthesis with post-optimization");
  optimize->set_config("--config");
  optimize->add_option("--netlist", opt.netlist_path, "Input .bench netlist")
      ->required();
  optimize->add_option("--metric", opt.metric, "Error metric")
      ->check(CLI::IsMember({"er", "nmed"}));
  optimize->add_option("--bound", opt.bound, "Maximum error")->required();
  optimize->add_option("--area-con", opt.area_con,
                       "Area constraint (default: accurate circuit area)");
  optimize->add_option("--seed", opt.cfg.seed, "Master seed");
  optimize->add_option("--iters", opt.cfg.max_iterations, "Iteration cap");
  optimize->add_option("--pop", opt.cfg.population_size, "Population size");
  optimize->add_option("--jobs", opt.cfg.jobs, "Parallel evaluation threads");
  optimize->add_flag("--unit-delay", opt.cfg.unit_delay,
                     "Unit-delay timing model");
  optimize->add_option("--lib", opt.lib_path, "Cell library file");
  optimize->add_option("--out", opt.out_path, "Output netlist path");
  optimize->add_option("--report", opt.report_path, "Run report path");
  optimize->add_option("--trace", opt.trace_path, "Convergence trace CSV");
  bool opt_exhaustive = false;
  optimize->add_flag("--exhaustive", opt_exhaustive,
                     "Force exhaustive input vectors (m <= 24)");
  optimize->add_option("--vectors", opt.cfg.num_vectors,
                       "Monte Carlo sample count");
  optimize->add_option("--wd", opt.cfg.depth_weight, "Depth weight");
  optimize->add_option("--wt", opt.cfg.level_time_weight,
                       "Arrival-time weight of the PO ranking");
  optimize->add_option("--we", opt.cfg.level_error_weight,
                       "Error weight of the PO ranking");
  optimize->add_option("--se", opt.cfg.elite_threshold, "Elite threshold");
  optimize->add_option("--somega", opt.cfg.omega_threshold, "Omega threshold");
  optimize->add_option("--init-lacs", opt.cfg.init_lacs_max,
                       "Max changes per initial individual");

  // eval
  std::string eval_acc, eval_app;
  CommonEvalOpts eval_opts;
  auto* eval = app.add_subcommand(
      "eval", "ER / NMED / per-PO error of an approximate circuit");
  eval->add_option("accurate", eval_acc, "Accurate .bench")->required();
  eval->add_option("approx", eval_app, "Approximate .bench")->required();
  eval->add_flag("--exhaustive", eval_opts.exhaustive, "Exhaustive vectors");
  eval->add_option("--vectors", eval_opts.vectors, "Monte Carlo samples");
  eval->add_option("--seed", eval_opts.seed, "Sampling seed");

  // sta
  std::string sta_path, sta_lib;
  bool sta_unit = false;
  int sta_paths = kMaxCriticalPaths;
  auto* sta = app.add_subcommand("sta", "Timing and area report");
  sta->add_option("netlist", sta_path, "Input .bench")->required();
  sta->add_flag("--unit-delay", sta_unit, "Unit-delay timing model");
  sta->add_option("--lib", sta_lib, "Cell library file");
  sta->add_option("--paths", sta_paths, "Critical paths to extract");

  // gen
  auto* gen = app.add_subcommand("gen", "Benchmark circuit generation");
  gen->require_subcommand(1);
  std::string gen_out;
  gen->add_option("--out", gen_out, "Output path (default: stdout)");
  int rca_width = 16;
  auto* gen_rca_cmd = gen->add_subcommand("rca", "Ripple-carry adder");
  gen_rca_cmd->add_option("width", rca_width, "Bit width")->required();
  int mux_levels = 3;
  auto* gen_mux_cmd = gen->add_subcommand("mux-tree", "Mux tree");
  gen_mux_cmd->add_option("levels", mux_levels, "Select levels")->required();
  int rnd_gates = 100, rnd_pis = 16;
  std::uint64_t rnd_seed = 1;
  auto* gen_rnd_cmd = gen->add_subcommand("random", "Random DAG");
  gen_rnd_cmd->add_option("--gates", rnd_gates, "Gate count");
  gen_rnd_cmd->add_option("--pis", rnd_pis, "Primary input count");
  gen_rnd_cmd->add_option("--seed", rnd_seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (optimize->parsed()) {
      opt.cfg.force_exhaustive = opt_exhaustive;
      return cmd_optimize(opt);
    }
    if (eval->parsed()) return cmd_eval(eval_acc, eval_app, eval_opts);
    if (sta->parsed()) return cmd_sta(sta_path, sta_unit, sta_lib, sta_paths);
    if (gen->parsed()) {
      if (gen_rca_cmd->parsed()) return emit_generated(gen_rca(rca_width), gen_out);
      if (gen_mux_cmd->parsed())
        return emit_generated(gen_mux_tree(mux_levels), gen_out);
      return emit_generated(gen_random(rnd_gates, rnd_pis, rnd_seed), gen_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
