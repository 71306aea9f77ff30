#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

namespace netlsd {

enum class WhichEnd { Smallest, Largest };

struct LanczosOptions {
  double tol = 1e-8;        // residual bound relative to the operator norm
  int max_subspace = 0;     // 0 = auto: max(2*nev + 16, 64)
  long max_restarts = 0;    // 0 = auto: 40 * nev + 200
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
};

/// Thick-restart Lanczos with locking and full reorthogonalization.
/// Computes the `nev` extreme eigenvalues of the symmetric matrix `A`
/// restricted to the orthogonal complement of span(deflation); the columns
/// of `deflation` must be orthonormal. Returns eigenvalues in ascending
/// order, each with residual norm at most tol * max(1, |lambda|_max).
/// Repeated eigenvalues are counted with multiplicity: a single Krylov
/// sequence carries one direction per eigenspace, so the answer is only
/// accepted once a lineage seeded by a random vector drawn after the last
/// improvement converges one more eigenvalue that does not belong in it.
/// Throws ConvergenceError when the restart budget runs out first.
std::vector<double> lanczos_extreme(const Eigen::SparseMatrix<double>& A, int nev,
                                    WhichEnd which, const Eigen::MatrixXd& deflation,
                                    const LanczosOptions& opt = {});

}  // namespace netlsd
