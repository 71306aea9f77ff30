#include "netlsd/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "netlsd/errors.hpp"
#include "netlsd/lanczos.hpp"

namespace netlsd {

namespace {

constexpr double kSnapTol = 1e-9;

double snap_to_range(double x) {
  if (std::abs(x) <= kSnapTol) return 0.0;
  if (std::abs(x - 2.0) <= kSnapTol) return 2.0;
  return std::clamp(x, 0.0, 2.0);
}

// Maps the Laplacian onto its non-isolated rows/columns and builds the
// orthonormal kernel basis there: one sqrt-degree indicator per component
// that carries edges. Isolated nodes contribute exact zeros and are handled
// by the caller without touching the solver.
struct ReducedProblem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::MatrixXd kernel;
  Eigen::Index n_free = 0;
};

ReducedProblem reduce_to_non_isolated(const NormalizedLaplacian& L) {
  ReducedProblem red;
  std::vector<Eigen::Index> to_reduced(static_cast<std::size_t>(L.n), -1);
  std::vector<NodeId> free_nodes;
  for (NodeId u = 0; u < L.n; ++u) {
    if (L.sqrt_degrees[u] > 0.0) {
      to_reduced[static_cast<std::size_t>(u)] = static_cast<Eigen::Index>(free_nodes.size());
      free_nodes.push_back(u);
    }
  }
  red.n_free = static_cast<Eigen::Index>(free_nodes.size());
  if (red.n_free == 0) return red;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(L.matrix.nonZeros()));
  for (int col = 0; col < L.matrix.outerSize(); ++col) {
    const Eigen::Index rc = to_reduced[static_cast<std::size_t>(col)];
    if (rc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(L.matrix, col); it; ++it) {
      const Eigen::Index rr = to_reduced[static_cast<std::size_t>(it.row())];
      if (rr >= 0) triplets.emplace_back(rr, rc, it.value());
    }
  }
  red.matrix.resize(red.n_free, red.n_free);
  red.matrix.setFromTriplets(triplets.begin(), triplets.end());
  red.matrix.makeCompressed();

  // Components with edges, their local kernel vector v_i = sqrt(d_i).
  std::vector<int> comp_column(static_cast<std::size_t>(L.components.count), -1);
  int kernel_cols = 0;
  for (NodeId u : free_nodes) {
    int& col = comp_column[static_cast<std::size_t>(L.components.labels[static_cast<std::size_t>(u)])];
    if (col < 0) col = kernel_cols++;
  }
  red.kernel = Eigen::MatrixXd::Zero(red.n_free, kernel_cols);
  for (Eigen::Index i = 0; i < red.n_free; ++i) {
    const NodeId u = free_nodes[static_cast<std::size_t>(i)];
    const int col = comp_column[static_cast<std::size_t>(L.components.labels[static_cast<std::size_t>(u)])];
    red.kernel(i, col) = L.sqrt_degrees[u];
  }
  for (int c = 0; c < kernel_cols; ++c) red.kernel.col(c).normalize();
  return red;
}

}  // namespace

Spectrum full_spectrum(const NormalizedLaplacian& L, NodeId dense_threshold) {
  if (L.n > dense_threshold)
    throw SizeError("full spectrum of " + std::to_string(L.n) +
                    " nodes exceeds the dense threshold of " + std::to_string(dense_threshold) +
                    "; use the approximate strategy");
  Spectrum s;
  s.n = L.n;
  s.component_count = L.components.count;
  s.provenance = {SpectrumProvenance::Kind::Full, 0, 0, 0};
  if (L.n == 0) {
    s.eigenvalues.resize(0);
    return s;
  }
  Eigen::MatrixXd dense(L.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("dense eigendecomposition failed", 0, 0.0);
  s.eigenvalues = es.eigenvalues().array();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    s.eigenvalues[i] = snap_to_range(s.eigenvalues[i]);
  return s;
}

ExtremeEigenvalues extreme_eigenvalues(const NormalizedLaplacian& L, int k_lo, int k_hi,
                                       double tol, std::uint64_t seed) {
  if (k_lo < 0 || k_hi < 0) throw ArgumentError("eigenvalue counts must be non-negative");
  if (static_cast<std::int64_t>(k_lo) + k_hi >= L.n)
    throw ArgumentError("k_lo + k_hi must be smaller than the node count");
  if (tol <= 0.0) throw ArgumentError("solver tolerance must be positive");

  ExtremeEigenvalues out;
  const NodeId zeros = L.components.count;
  const ReducedProblem red = reduce_to_non_isolated(L);
  const Eigen::Index positive = red.n_free - red.kernel.cols();  // non-kernel eigenvalue count

  const int lo_zeros = std::min<int>(k_lo, zeros);
  const int nev_lo = k_lo - lo_zeros;
  const int hi_zeros = static_cast<int>(std::max<std::int64_t>(0, k_hi - positive));
  const int nev_hi = k_hi - hi_zeros;

  std::vector<double> solved_lo, solved_hi;
  const int nev_max = std::max(nev_lo, nev_hi);
  if (nev_max > 0) {
    // Small complements go straight to the dense solver; the Krylov loop
    // needs room beyond nev to make progress.
    const Eigen::Index subspace = std::min<Eigen::Index>(positive, std::max(2 * nev_max + 16, 64));
    if (red.n_free <= 64 || subspace < nev_max + 2) {
      Eigen::MatrixXd dense(red.matrix);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success)
        throw ConvergenceError("dense eigendecomposition failed", 0, 0.0);
      const Eigen::VectorXd all = es.eigenvalues();
      // Ascending; the first kernel.cols() entries are the (numerical) zeros.
      const Eigen::Index base = red.kernel.cols();
      for (int i = 0; i < nev_lo; ++i) solved_lo.push_back(all[base + i]);
      for (int i = 0; i < nev_hi; ++i) solved_hi.push_back(all[all.size() - nev_hi + i]);
    } else {
      LanczosOptions opt;
      opt.tol = tol;
      if (nev_lo > 0) {
        opt.seed = seed;
        solved_lo = lanczos_extreme(red.matrix, nev_lo, WhichEnd::Smallest, red.kernel, opt);
      }
      if (nev_hi > 0) {
        opt.seed = seed ^ 0x5851f42d4c957f2dULL;
        solved_hi = lanczos_extreme(red.matrix, nev_hi, WhichEnd::Largest, red.kernel, opt);
      }
    }
  }

  out.lo.assign(static_cast<std::size_t>(lo_zeros), 0.0);
  for (double v : solved_lo) out.lo.push_back(snap_to_range(v));
  out.hi.assign(static_cast<std::size_t>(hi_zeros), 0.0);
  for (double v : solved_hi) out.hi.push_back(snap_to_range(v));
  return out;
}

Spectrum approximate_spectrum(std::span<const double> lo, std::span<const double> hi,
                              NodeId n, NodeId component_count) {
  if (n <= 0) throw ArgumentError("node count must be positive");
  const std::int64_t interior =
      static_cast<std::int64_t>(n) - static_cast<std::int64_t>(lo.size()) -
      static_cast<std::int64_t>(hi.size());
  if (interior < 0) throw ArgumentError("ends hold more eigenvalues than the node count");
  if (!std::is_sorted(lo.begin(), lo.end()) || !std::is_sorted(hi.begin(), hi.end()))
    throw ArgumentError("end eigenvalues must be ascending");
  const double a = lo.empty() ? 0.0 : lo.back();
  const double b = hi.empty() ? 2.0 : hi.front();
  if (a > b) throw ArgumentError("inconsistent ends: max(lo) exceeds min(hi)");

  Spectrum s;
  s.n = n;
  s.eigenvalues.resize(n);
  Eigen::Index pos = 0;
  for (double v : lo) s.eigenvalues[pos++] = v;
  // Open grid over (a, b): endpoints already belong to the exact ends.
  const double step = (b - a) / static_cast<double>(interior + 1);
  for (std::int64_t i = 1; i <= interior; ++i) s.eigenvalues[pos++] = a + step * static_cast<double>(i);
  for (double v : hi) s.eigenvalues[pos++] = v;

  if (component_count < 0) {
    component_count = 0;
    for (double v : lo) component_count += (v == 0.0) ? 1 : 0;
  }
  s.component_count = component_count;
  s.provenance = {SpectrumProvenance::Kind::Approximated, static_cast<int>(lo.size()),
                  static_cast<int>(hi.size()), static_cast<NodeId>(interior)};
  return s;
}

}  // namespace netlsd
