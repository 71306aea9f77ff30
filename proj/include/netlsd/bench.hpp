#pragma once

#include <cstdint>
#include <vector>

#include "netlsd/compare.hpp"
#include "netlsd/generators.hpp"
#include "netlsd/signature.hpp"

namespace netlsd {

/// How benchmark graph sizes are drawn: a fixed n, Poisson(lambda), or
/// uniform over [10, lambda].
struct SizeLaw {
  enum class Kind { Fixed, Poisson, Uniform };
  Kind kind = Kind::Fixed;
  double param = 1024.0;

  static SizeLaw fixed(NodeId n) { return {Kind::Fixed, static_cast<double>(n)}; }
  static SizeLaw poisson(double lambda) { return {Kind::Poisson, lambda}; }
  static SizeLaw uniform(double lambda) { return {Kind::Uniform, lambda}; }
};

/// Signature settings shared by every graph in a benchmark run.
struct MethodConfig {
  KernelKind kernel = KernelKind::Heat;
  Normalization normalization = Normalization::Empty;
  TimeGrid grid;  // empty grid = kernel default
  Strategy strategy = Strategy::automatic();
  ComputeOptions options;
  int threads = 0;  // 0 = hardware concurrency

  TimeGrid effective_grid() const;
};

struct BenchConfig {
  int graphs_per_class = 200;
  double mean_degree = 10.0;
  int blocks = 10;
  double mixing_ratio = 0.1;  // fraction of expected edges between blocks
  double train_fraction = 0.8;
  int trials = 100;
  Metric metric = Metric::Accuracy;
};

/// Two-class benchmark: Erdos-Renyi vs stochastic block model at matched
/// expected degree, sizes drawn per graph from `sizes`. The planted
/// intra-block degree is additionally capped near the spectral detection
/// threshold so task difficulty decreases gradually with size instead of
/// collapsing to trivial. When the requested mixing leaves no density
/// contrast (p_in <= p_out) the "block model" class degenerates to
/// Erdos-Renyi, making the classes indistinguishable by construction.
EvalReport bench_communities(const SizeLaw& sizes, const BenchConfig& bench,
                             const MethodConfig& method, std::uint64_t seed);

/// Each input graph contributes itself (label 1) and a degree-preserving
/// rewired copy (label 0); bench.metric picks the score (ROC AUC for the
/// usual real-vs-shuffled experiment).
EvalReport bench_real_vs_rewired(const std::vector<Graph>& graphs, int sweeps,
                                 const BenchConfig& bench, const MethodConfig& method,
                                 std::uint64_t seed);

}  // namespace netlsd
