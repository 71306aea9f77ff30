#include "netlsd/signature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "netlsd/errors.hpp"

namespace netlsd {

KernelKind kernel_from_string(std::string_view s) {
  if (s == "heat") return KernelKind::Heat;
  if (s == "wave") return KernelKind::Wave;
  throw ArgumentError("unknown kernel '" + std::string(s) + "' (expected heat or wave)");
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "none") return Normalization::None;
  if (s == "empty") return Normalization::Empty;
  if (s == "complete") return Normalization::Complete;
  throw ArgumentError("unknown normalization '" + std::string(s) +
                      "' (expected none, empty, or complete)");
}

std::string_view to_string(KernelKind k) { return k == KernelKind::Heat ? "heat" : "wave"; }

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::None: return "none";
    case Normalization::Empty: return "empty";
    default: return "complete";
  }
}

double heat_trace(const Spectrum& spectrum, double t) {
  return (-t * spectrum.eigenvalues).exp().sum();
}

double wave_trace(const Spectrum& spectrum, double t) {
  return (t * spectrum.eigenvalues).cos().sum();
}

double taylor_heat_trace(const NormalizedLaplacian& L, double t) {
  return static_cast<double>(L.n) - t * L.trace + 0.5 * t * t * L.trace_sq;
}

double normalization_trace(Normalization kind, KernelKind kernel, NodeId n, double t) {
  if (n < 1) throw ArgumentError("normalization needs at least one node");
  switch (kind) {
    case Normalization::None:
      return 1.0;
    case Normalization::Empty:
      return static_cast<double>(n);
    case Normalization::Complete: {
      if (n == 1) return 1.0;
      const double lambda = static_cast<double>(n) / static_cast<double>(n - 1);
      return kernel == KernelKind::Heat ? 1.0 + (n - 1) * std::exp(-t * lambda)
                                        : 1.0 + (n - 1) * std::cos(t * lambda);
    }
  }
  throw ArgumentError("unknown normalization kind");
}

Signature compute_signature(const Graph& g, KernelKind kernel, const TimeGrid& grid,
                            Normalization normalization, Strategy strategy,
                            const ComputeOptions& opts) {
  if (grid.values.empty()) throw ArgumentError("time grid is empty");
  if (kernel == KernelKind::Wave) {
    for (double t : grid.values)
      if (t < 0.0 || t >= 2.0 * std::numbers::pi)
        throw ArgumentError("wave kernel scales must lie in [0, 2*pi)");
  }

  Strategy::Kind kind = strategy.kind;
  if (kind == Strategy::Kind::Taylor && kernel == KernelKind::Wave)
    throw ArgumentError("the Taylor strategy supports the heat kernel only");
  if (kind == Strategy::Kind::Auto) {
    if (g.node_count() <= opts.dense_threshold) {
      kind = Strategy::Kind::Full;
    } else {
      kind = Strategy::Kind::Approx;
      strategy.k_lo = 150;
      strategy.k_hi = 150;
    }
  }
  bool upgraded = false;
  if (kind == Strategy::Kind::Approx) {
    if (strategy.k_lo < 0 || strategy.k_hi < 0 || strategy.k_lo + strategy.k_hi <= 0)
      throw ArgumentError("approximation needs a positive eigenvalue budget");
    if (static_cast<std::int64_t>(strategy.k_lo) + strategy.k_hi >= g.node_count()) {
      kind = Strategy::Kind::Full;
      upgraded = true;
    }
  }

  const NormalizedLaplacian L = build_laplacian(g);

  Signature sig;
  sig.kernel = kernel;
  sig.normalization = normalization;
  sig.grid = grid;
  sig.n = g.node_count();
  sig.values.resize(static_cast<Eigen::Index>(grid.values.size()));

  if (kind == Strategy::Kind::Taylor) {
    for (std::size_t i = 0; i < grid.values.size(); ++i)
      sig.values[static_cast<Eigen::Index>(i)] = taylor_heat_trace(L, grid.values[i]);
  } else {
    Spectrum spectrum;
    if (kind == Strategy::Kind::Full) {
      // An upgraded approx request already asked for every eigenvalue, so
      // the dense guard would only get in its way.
      const NodeId threshold = upgraded ? std::max(opts.dense_threshold, L.n) : opts.dense_threshold;
      spectrum = full_spectrum(L, threshold);
    } else {
      const ExtremeEigenvalues ends =
          extreme_eigenvalues(L, strategy.k_lo, strategy.k_hi, opts.tol, opts.seed);
      spectrum = approximate_spectrum(ends.lo, ends.hi, L.n, L.components.count);
    }
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      const double t = grid.values[i];
      sig.values[static_cast<Eigen::Index>(i)] =
          kernel == KernelKind::Heat ? heat_trace(spectrum, t) : wave_trace(spectrum, t);
    }
  }

  if (normalization != Normalization::None) {
    for (std::size_t i = 0; i < grid.values.size(); ++i)
      sig.values[static_cast<Eigen::Index>(i)] /=
          normalization_trace(normalization, kernel, sig.n, grid.values[i]);
  }
  return sig;
}

}  // namespace netlsd
