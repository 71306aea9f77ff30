#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netlsd/bench.hpp"
#include "netlsd/compare.hpp"
#include "netlsd/errors.hpp"
#include "netlsd/generators.hpp"
#include "netlsd/graph.hpp"
#include "netlsd/io.hpp"
#include "netlsd/parallel.hpp"
#include "netlsd/rng.hpp"
#include "netlsd/signature.hpp"

namespace {

using namespace netlsd;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string kernel = "heat";
  std::string norm = "empty";
  std::string grid;  // "count,min,max,log|lin"; empty = kernel default
  std::string strategy = "auto";
  int k = 300;
  double tol = kDefaultSolverTol;
  NodeId dense_threshold = kDefaultDenseThreshold;
  std::uint64_t seed = 42;
  int threads = 0;

  KernelKind kernel_kind() const { return kernel_from_string(kernel); }
  Normalization norm_kind() const { return normalization_from_string(norm); }

  TimeGrid make_grid() const {
    if (grid.empty())
      return kernel_kind() == KernelKind::Heat ? default_heat_grid() : default_wave_grid();
    std::istringstream in(grid);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ArgumentError("--grid expects count,min,max,log|lin");
    try {
      return make_time_grid(std::stoi(cells[0]), std::stod(cells[1]), std::stod(cells[2]),
                            grid_spacing_from_string(cells[3]));
    } catch (const std::invalid_argument&) {
      throw ArgumentError("--grid expects numeric count,min,max");
    } catch (const std::out_of_range&) {
      throw ArgumentError("--grid bounds out of range");
    }
  }

  Strategy make_strategy() const {
    if (strategy == "full") return Strategy::full();
    if (strategy == "taylor") return Strategy::taylor();
    if (k < 1) throw ArgumentError("--k must be at least 1");
    if (strategy == "approx") return Strategy::approx(k);
    if (strategy == "auto") {
      Strategy s = Strategy::automatic();
      s.k_lo = k / 2;
      s.k_hi = k - k / 2;
      return s;
    }
    throw ArgumentError("unknown strategy '" + strategy + "' (full|approx|taylor|auto)");
  }

  ComputeOptions make_options() const {
    if (tol <= 0) throw ArgumentError("--tol must be positive");
    if (dense_threshold < 1) throw ArgumentError("--dense-threshold must be positive");
    ComputeOptions o;
    o.dense_threshold = dense_threshold;
    o.tol = tol;
    o.seed = seed;
    return o;
  }

  MethodConfig make_method() const {
    MethodConfig m;
    m.kernel = kernel_kind();
    m.normalization = norm_kind();
    m.grid = make_grid();
    m.strategy = make_strategy();
    m.options = make_options();
    m.threads = threads;
    return m;
  }

  std::string provenance() const {
    const TimeGrid g = make_grid();
    std::ostringstream out;
    out << "config kernel=" << kernel << " norm=" << norm << " grid=" << g.count << ','
        << format_value(g.t_min) << ',' << format_value(g.t_max) << ',' << to_string(g.spacing)
        << " strategy=" << strategy << " k=" << k << " dense-threshold=" << dense_threshold
        << " tol=" << format_value(tol) << " seed=" << seed << " threads=" << threads;
    return out.str();
  }
};

void add_config_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--kernel", cfg.kernel, "Trace kernel: heat or wave")
      ->envname("NETLSD_KERNEL");
  cmd->add_option("--norm", cfg.norm, "Size normalization: none, empty, or complete")
      ->envname("NETLSD_NORM");
  cmd->add_option("--grid", cfg.grid, "Scale grid as count,min,max,log|lin")
      ->envname("NETLSD_GRID");
  cmd->add_option("--strategy", cfg.strategy, "Spectrum strategy: full, approx, taylor, or auto")
      ->envname("NETLSD_STRATEGY");
  cmd->add_option("--k", cfg.k, "Eigenvalue budget for the approximate strategy")
      ->envname("NETLSD_K");
  cmd->add_option("--tol", cfg.tol, "Iterative eigensolver residual tolerance")
      ->envname("NETLSD_TOL");
  cmd->add_option("--dense-threshold", cfg.dense_threshold,
                  "Largest node count solved by dense eigendecomposition")
      ->envname("NETLSD_DENSE_THRESHOLD");
  cmd->add_option("--seed", cfg.seed, "Random seed")->envname("NETLSD_SEED");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->envname("NETLSD_THREADS");
}

// Writes an edge list to the given path, or to standard output when the
// path is empty.
void emit_graph(const Graph& g, const std::string& out_path) {
  if (out_path.empty())
    write_edge_list(std::cout, g);
  else
    write_edge_list_file(out_path, g);
}

void print_report(const EvalReport& report, bool per_trial) {
  std::cout << "metric,value,trials,seed\n"
            << to_string(report.metric) << ',' << format_value(report.value) << ','
            << report.trials << ',' << report.seed << '\n';
  if (per_trial)
    for (std::size_t i = 0; i < report.per_trial.size(); ++i)
      std::cout << "trial," << i << ',' << format_value(report.per_trial[i]) << '\n';
}

int run_embed(const RunConfig& cfg, const std::string& manifest_path,
              const std::string& out_path) {
  const auto entries = read_manifest_file(manifest_path);
  if (entries.empty()) throw ArgumentError("manifest '" + manifest_path + "' lists no graphs");

  const TimeGrid grid = cfg.make_grid();
  const KernelKind kernel = cfg.kernel_kind();
  const Normalization norm = cfg.norm_kind();
  const Strategy strategy = cfg.make_strategy();
  const ComputeOptions base_opts = cfg.make_options();

  std::vector<Eigen::ArrayXd> rows(entries.size());
  std::vector<std::string> failures(entries.size());
  std::mutex log_mutex;

  parallel_for(entries.size(), cfg.threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      const LoadResult loaded = load_edge_list_file(entries[i].path, IdPolicy::RemapArbitrary);
      ComputeOptions opts = base_opts;
      opts.seed = mix_seed(cfg.seed, i);
      rows[i] = compute_signature(loaded.graph, kernel, grid, norm, strategy, opts).values;
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::scoped_lock lock(log_mutex);
    if (error.empty())
      std::cerr << entries[i].id << ",ok," << ms << '\n';
    else
      std::cerr << entries[i].id << ",failed," << ms << '\n';
    if (!error.empty()) failures[i] = error;
  });

  SignatureCollection coll;
  coll.meta = {kernel, norm, grid};
  std::vector<std::pair<std::string, std::string>> errors;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!failures[i].empty())
      errors.emplace_back(entries[i].id, failures[i]);
    else
      add_signature(coll, entries[i].id, std::move(rows[i]));
  }
  write_signature_file(out_path, coll, {cfg.provenance()});

  const std::string sidecar = out_path + ".errors";
  if (errors.empty()) {
    std::remove(sidecar.c_str());
    return kExitOk;
  }
  std::ofstream err_out(sidecar);
  if (!err_out) throw IoError("cannot open '" + sidecar + "' for writing");
  for (const auto& [id, message] : errors) err_out << id << ',' << message << '\n';
  std::cerr << errors.size() << " of " << entries.size() << " graphs failed; see " << sidecar
            << '\n';
  return kExitPartial;
}

Signature row_as_signature(const SignatureCollection& coll, const std::string& id) {
  const auto it = coll.index.find(id);
  if (it == coll.index.end()) throw ArgumentError("id '" + id + "' not found in signature file");
  Signature s;
  s.kernel = coll.meta.kernel;
  s.normalization = coll.meta.normalization;
  s.grid = coll.meta.grid;
  s.values = coll.rows[it->second];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-scale spectral signatures for graph comparison"};
  app.require_subcommand(1);
  RunConfig cfg;

  // embed
  std::string manifest_path, out_path;
  auto* embed = app.add_subcommand("embed", "Compute signatures for every graph in a manifest");
  embed->add_option("manifest", manifest_path, "Manifest: <graph-id> <edge-list-path> [label]")
      ->required();
  embed->add_option("out", out_path, "Signature CSV to write")->required();
  add_config_options(embed, cfg);

  // dist
  std::string sig_path, id_a, id_b;
  auto* dist = app.add_subcommand("dist", "Distance between two stored signatures");
  dist->add_option("signatures", sig_path, "Signature CSV")->required();
  dist->add_option("id-a", id_a)->required();
  dist->add_option("id-b", id_b)->required();

  // knn
  std::string query_id;
  int knn_k = 1;
  auto* knn = app.add_subcommand("knn", "Nearest neighbors of a stored signature");
  knn->add_option("signatures", sig_path, "Signature CSV")->required();
  knn->add_option("query-id", query_id)->required();
  knn->add_option("k", knn_k, "Neighbor count")->required();

  // gen
  std::string family;
  NodeId gen_n = 0;
  double gen_degree = 10.0, gen_mixing = 0.1;
  double gen_p_in = -1.0, gen_p_out = -1.0;
  int gen_blocks = 10;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a graph and write its edge list");
  gen->add_option("family", family, "ring|wheel|complete|empty|path|er|sbm")->required();
  gen->add_option("n", gen_n, "Node count")->required();
  gen->add_option("--degree", gen_degree, "Mean degree (er, sbm)");
  gen->add_option("--blocks", gen_blocks, "Block count (sbm)");
  gen->add_option("--mixing", gen_mixing, "Inter-block edge fraction (sbm)");
  gen->add_option("--p-in", gen_p_in, "Explicit intra-block probability (sbm)");
  gen->add_option("--p-out", gen_p_out, "Explicit inter-block probability (sbm)");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");
  gen->add_option("--seed", cfg.seed, "Random seed")->envname("NETLSD_SEED");

  // rewire
  std::string rewire_in, rewire_out;
  int sweeps = 10;
  auto* rewire = app.add_subcommand("rewire", "Degree-preserving edge shuffling");
  rewire->add_option("edges", rewire_in, "Edge list to shuffle")->required();
  rewire->add_option("--sweeps", sweeps, "Swap sweeps (edge-count attempts each)");
  rewire->add_option("--out", rewire_out, "Output path (default: stdout)");
  rewire->add_option("--seed", cfg.seed, "Random seed")->envname("NETLSD_SEED");

  // bench
  auto* bench = app.add_subcommand("bench", "Classification benchmarks");
  bench->require_subcommand(1);

  BenchConfig bench_cfg;
  std::string method_token, metric_token;
  bool per_trial = false;
  NodeId fixed_n = 0;
  double poisson_lambda = 0.0, uniform_lambda = 0.0;

  auto* communities = bench->add_subcommand(
      "communities", "Erdos-Renyi vs stochastic block model, 1-NN classification");
  auto* comm_n = communities->add_option("--n", fixed_n, "Fixed node count");
  auto* comm_poisson =
      communities->add_option("--poisson", poisson_lambda, "Poisson-distributed node count");
  auto* comm_uniform =
      communities->add_option("--uniform", uniform_lambda, "Node count uniform over [10, X]");
  comm_n->excludes(comm_poisson)->excludes(comm_uniform);
  comm_poisson->excludes(comm_uniform);
  communities->add_option("--per-class", bench_cfg.graphs_per_class, "Graphs per class");
  communities->add_option("--trials", bench_cfg.trials, "Evaluation trials");
  communities->add_option("--degree", bench_cfg.mean_degree, "Mean degree of both classes");
  communities->add_option("--blocks", bench_cfg.blocks, "Block count");
  communities->add_option("--mixing", bench_cfg.mixing_ratio, "Inter-block edge fraction");
  communities->add_option("--train-fraction", bench_cfg.train_fraction, "Training split");
  communities->add_option("--method", method_token, "Kernel-normalization pair, e.g. heat-empty");
  communities->add_option("--metric", metric_token, "accuracy or roc_auc");
  communities->add_flag("--per-trial", per_trial, "Also print one line per trial");
  add_config_options(communities, cfg);

  std::string rewired_manifest;
  auto* rewired =
      bench->add_subcommand("rewired", "Original vs degree-preserving rewired copies");
  rewired->add_option("manifest", rewired_manifest, "Manifest of input graphs")->required();
  rewired->add_option("--sweeps", sweeps, "Swap sweeps per graph");
  rewired->add_option("--per-class", bench_cfg.graphs_per_class)->group("");  // unused; hidden
  rewired->add_option("--trials", bench_cfg.trials, "Evaluation trials");
  rewired->add_option("--train-fraction", bench_cfg.train_fraction, "Training split");
  rewired->add_option("--method", method_token, "Kernel-normalization pair, e.g. heat-empty");
  rewired->add_option("--metric", metric_token, "accuracy or roc_auc (default)");
  rewired->add_flag("--per-trial", per_trial, "Also print one line per trial");
  add_config_options(rewired, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (embed->parsed()) return run_embed(cfg, manifest_path, out_path);

    if (dist->parsed()) {
      const SignatureCollection coll = read_signature_file(sig_path);
      const double d =
          signature_distance(row_as_signature(coll, id_a), row_as_signature(coll, id_b));
      std::printf("%.12g\n", d);
      return kExitOk;
    }

    if (knn->parsed()) {
      if (knn_k < 1) throw ArgumentError("k must be at least 1");
      const SignatureCollection coll = read_signature_file(sig_path);
      const auto neighbors =
          knn_query(coll, row_as_signature(coll, query_id), static_cast<std::size_t>(knn_k));
      std::cout << "rank,id,distance\n";
      for (std::size_t i = 0; i < neighbors.size(); ++i)
        std::cout << i + 1 << ',' << neighbors[i].id << ',' << format_value(neighbors[i].distance)
                  << '\n';
      return kExitOk;
    }

    if (gen->parsed()) {
      Graph g = [&] {
        if (family == "er") return gen_erdos_renyi(gen_n, gen_degree, cfg.seed);
        if (family == "sbm") {
          double p_in = gen_p_in, p_out = gen_p_out;
          if ((p_in < 0) != (p_out < 0))
            throw ArgumentError("--p-in and --p-out must be given together");
          if (p_in < 0) {
            const SbmRates rates =
                sbm_rates_for_mean_degree(gen_n, gen_blocks, gen_degree, gen_mixing);
            p_in = rates.p_in;
            p_out = rates.p_out;
          }
          return gen_sbm(gen_n, gen_blocks, p_in, p_out, cfg.seed);
        }
        return gen_named(named_graph_from_string(family), gen_n);
      }();
      emit_graph(g, gen_out);
      return kExitOk;
    }

    if (rewire->parsed()) {
      const LoadResult loaded = load_edge_list_file(rewire_in, IdPolicy::RemapArbitrary);
      emit_graph(rewire_degree_preserving(loaded.graph, sweeps, cfg.seed), rewire_out);
      return kExitOk;
    }

    if (communities->parsed()) {
      SizeLaw law = SizeLaw::fixed(1024);
      if (*comm_n) law = SizeLaw::fixed(fixed_n);
      if (*comm_poisson) law = SizeLaw::poisson(poisson_lambda);
      if (*comm_uniform) law = SizeLaw::uniform(uniform_lambda);
      if (!method_token.empty()) {
        const auto dash = method_token.find('-');
        if (dash == std::string::npos)
          throw ArgumentError("--method expects <kernel>-<norm>, e.g. heat-empty");
        cfg.kernel = method_token.substr(0, dash);
        cfg.norm = method_token.substr(dash + 1);
      }
      if (!metric_token.empty()) bench_cfg.metric = metric_from_string(metric_token);
      print_report(bench_communities(law, bench_cfg, cfg.make_method(), cfg.seed), per_trial);
      return kExitOk;
    }

    if (rewired->parsed()) {
      if (!method_token.empty()) {
        const auto dash = method_token.find('-');
        if (dash == std::string::npos)
          throw ArgumentError("--method expects <kernel>-<norm>, e.g. heat-empty");
        cfg.kernel = method_token.substr(0, dash);
        cfg.norm = method_token.substr(dash + 1);
      }
      bench_cfg.metric =
          metric_token.empty() ? Metric::RocAuc : metric_from_string(metric_token);
      std::vector<Graph> graphs;
      for (const ManifestEntry& entry : read_manifest_file(rewired_manifest))
        graphs.push_back(load_edge_list_file(entry.path, IdPolicy::RemapArbitrary).graph);
      print_report(bench_real_vs_rewired(graphs, sweeps, bench_cfg, cfg.make_method(), cfg.seed),
                   per_trial);
      return kExitOk;
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
