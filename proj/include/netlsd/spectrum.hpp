#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "netlsd/laplacian.hpp"

namespace netlsd {

inline constexpr NodeId kDefaultDenseThreshold = 4096;
inline constexpr double kDefaultSolverTol = 1e-8;

struct SpectrumProvenance {
  enum class Kind { Full, Approximated };
  Kind kind = Kind::Full;
  int k_lo = 0;
  int k_hi = 0;
  NodeId interpolated = 0;
};

/// Eigenvalues of a normalized Laplacian, ascending, all within [0, 2].
/// The first `component_count` entries are exactly zero.
struct Spectrum {
  Eigen::ArrayXd eigenvalues;
  NodeId n = 0;
  NodeId component_count = 0;
  SpectrumProvenance provenance;
};

/// Dense eigendecomposition of the whole Laplacian. Guarded by a node-count
/// threshold because the O(n^3) cost and O(n^2) memory get out of hand fast.
Spectrum full_spectrum(const NormalizedLaplacian& L,
                       NodeId dense_threshold = kDefaultDenseThreshold);

struct ExtremeEigenvalues {
  std::vector<double> lo;  // k_lo smallest, ascending
  std::vector<double> hi;  // k_hi largest, ascending
};

/// The k_lo smallest and k_hi largest eigenvalues. Zero eigenvalues are
/// known analytically from the component structure and are not iterated on;
/// the solver runs on the orthogonal complement of the kernel. Requires
/// k_lo + k_hi < n.
ExtremeEigenvalues extreme_eigenvalues(const NormalizedLaplacian& L, int k_lo, int k_hi,
                                       double tol = kDefaultSolverTol,
                                       std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Builds an n-point surrogate spectrum from the two exact ends: the gap
/// between max(lo) and min(hi) is filled with an evenly spaced open grid
/// (endpoints excluded). An empty end anchors at the spectral bound, 0 or 2.
/// `component_count` defaults to the number of exact zeros in `lo`.
Spectrum approximate_spectrum(std::span<const double> lo, std::span<const double> hi,
                              NodeId n, NodeId component_count = -1);

}  // namespace netlsd
