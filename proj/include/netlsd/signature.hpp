#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string_view>

#include "netlsd/graph.hpp"
#include "netlsd/laplacian.hpp"
#include "netlsd/spectrum.hpp"
#include "netlsd/time_grid.hpp"

namespace netlsd {

enum class KernelKind { Heat, Wave };
enum class Normalization { None, Empty, Complete };

KernelKind kernel_from_string(std::string_view s);
Normalization normalization_from_string(std::string_view s);
std::string_view to_string(KernelKind k);
std::string_view to_string(Normalization n);

/// A graph's trace signature: one value per grid scale.
struct Signature {
  KernelKind kernel = KernelKind::Heat;
  Normalization normalization = Normalization::None;
  TimeGrid grid;
  Eigen::ArrayXd values;
  NodeId n = 0;
};

/// Heat trace sum_j exp(-t * lambda_j). Expects t >= 0.
double heat_trace(const Spectrum& spectrum, double t);

/// Real part of the wave trace, sum_j cos(t * lambda_j).
double wave_trace(const Spectrum& spectrum, double t);

/// Second-order expansion of the heat trace around t = 0:
/// n - t*tr(L) + (t^2/2)*tr(L^2). Cheap (the traces are cached on the
/// Laplacian) but only accurate for scales up to about 1.
double taylor_heat_trace(const NormalizedLaplacian& L, double t);

/// Trace of the reference graph used for size normalization: the edgeless
/// graph contributes n for either kernel; the complete graph uses its exact
/// nonzero eigenvalue n/(n-1). Normalization::None returns 1.
double normalization_trace(Normalization kind, KernelKind kernel, NodeId n, double t);

/// How compute_signature obtains the spectrum.
struct Strategy {
  enum class Kind { Full, Approx, Taylor, Auto };
  Kind kind = Kind::Auto;
  int k_lo = 150;
  int k_hi = 150;

  static Strategy full() { return {Kind::Full, 0, 0}; }
  static Strategy taylor() { return {Kind::Taylor, 0, 0}; }
  static Strategy approx(int k) { return {Kind::Approx, k / 2, k - k / 2}; }
  static Strategy approx(int k_lo, int k_hi) { return {Kind::Approx, k_lo, k_hi}; }
  static Strategy automatic() { return {}; }
};

struct ComputeOptions {
  NodeId dense_threshold = kDefaultDenseThreshold;
  double tol = kDefaultSolverTol;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Evaluates the chosen kernel over the grid and divides by the reference
/// trace when a normalization is set. Auto strategy solves densely up to the
/// threshold and falls back to the 150+150 two-sided approximation beyond
/// it; an approx request covering the whole spectrum is upgraded to full.
Signature compute_signature(const Graph& g, KernelKind kernel, const TimeGrid& grid,
                            Normalization normalization, Strategy strategy = {},
                            const ComputeOptions& opts = {});

}  // namespace netlsd
