#include "netlsd/lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>

#include "netlsd/errors.hpp"

namespace netlsd {

namespace {

constexpr double kBreakdownTol = 1e-10;
// In exact arithmetic each chain step couples only to its two predecessors:
// everything else in the basis is an eigenvector or an exact invariant
// subspace of the operator. Full cleanup sweeps therefore exist only to
// contain rounding drift, and they are scheduled by a running estimate of
// that drift, which restarts at the rounding floor after every sweep and
// fires the next sweep before the loss can touch the accuracy that locking
// relies on. On benign spectra sweeps stay rare; on tightly clustered ones
// the estimate escalates them to every step.
constexpr double kDriftFloor = 1e-14;
constexpr double kDriftTol = 1e-11;
// Fresh rounding debris deposited along every existing direction by one
// cheap step, as a fraction of the operator norm. The normalization divides
// it by beta, so the working floor for the drift estimates is this over the
// current beta: near an invariant subspace, where beta collapses, the debris
// dominates everything the recurrence propagates.
constexpr double kDriftNoise = 1e-15;
// Restart cycles that converge nothing, in a row, before the retained block
// is declared poisoned (formed from a basis whose precision loss slipped
// past the estimates) and the search restarts from a random vector. Healthy
// windows lock something every few cycles even on clustered spectra.
constexpr int kStallLimit = 40;
// Wide requests are solved in waves this big, each wave deflating the ones
// before it. Small waves keep the working basis narrow enough to stay cache
// resident on large problems and keep the per-restart dense algebra cheap.
constexpr int kWave = 48;

void fill_gaussian(Eigen::VectorXd& v, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
}

struct WindowResult {
  std::vector<double> values;   // every verified eigenvalue, lock order
  Eigen::MatrixXd vectors;      // matching eigenvectors
};

// Converges the `nev` most extreme eigenpairs of A restricted to the
// orthogonal complement of `hard_defl` and `eig_vecs`, locking verified
// pairs as it goes. May return more than nev pairs when repeated eigenvalues
// surface while the completeness of the set is being established.
//
// The two excluded sets are handled differently. `hard_defl` holds caller
// directions with no structure to exploit, so the chain is projected against
// them on every step. `eig_vecs` holds verified eigenpairs (earlier waves)
// whose eigenvalues `eig_vals` are known: the chain's overlap with an
// eigenvector follows the same three-term recurrence as the chain itself,
// so it is tracked in scalar arithmetic and scrubbed only when the estimate
// says it is about to matter. The pairs locked by this window join the
// tracked set as they appear. Without the tracking the overlaps grow
// geometrically -- the excluded directions are the most extreme ones, which
// the iteration amplifies hardest -- and once they reach the square root of
// the working precision the basis columns stop being orthogonal to each
// other (their mutual inner products are products of those overlaps) and no
// sweep against a non-orthogonal basis can repair the new column.
WindowResult solve_window(const Eigen::SparseMatrix<double>& A, int nev, WhichEnd which,
                          const Eigen::MatrixXd& hard_defl, const Eigen::MatrixXd& eig_vecs,
                          const Eigen::VectorXd& eig_vals, const LanczosOptions& opt,
                          std::uint64_t seed) {
  const Eigen::Index n = A.rows();
  const int hard = static_cast<int>(hard_defl.cols());
  const int soft0 = static_cast<int>(eig_vecs.cols());
  const Eigen::Index space = n - hard - soft0;

  int m = opt.max_subspace > 0 ? opt.max_subspace : std::max(2 * nev + 16, 64);
  m = static_cast<int>(std::min<Eigen::Index>(m, space));
  if (m < nev)
    throw ArgumentError("lanczos: subspace smaller than the requested eigenvalue count");
  const long max_restarts = opt.max_restarts > 0 ? opt.max_restarts : 40L * nev + 200;

  std::mt19937_64 rng(seed);

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m + 1);
  // Verified eigenpairs. May temporarily exceed nev: repeated eigenvalues are
  // only discovered by locking one copy, restarting against it, and finding
  // the next.
  Eigen::MatrixXd locked_vecs(n, std::min<Eigen::Index>(space, nev + 8));
  std::vector<double> locked_vals;
  int locked = 0;

  auto more_extreme = [&](double a, double b) {
    return which == WhichEnd::Smallest ? a < b : a > b;
  };

  auto result = [&] {
    WindowResult res;
    res.values = locked_vals;
    res.vectors = locked_vecs.leftCols(locked);
    return res;
  };
  // What a new eigenvalue has to beat to belong among the best nev found.
  auto entry_bar = [&]() -> double {
    std::vector<double> vals = locked_vals;
    std::sort(vals.begin(), vals.end());
    return which == WhichEnd::Smallest ? vals[static_cast<std::size_t>(nev) - 1]
                                       : vals[vals.size() - static_cast<std::size_t>(nev)];
  };

  // Rolling estimates of the chain's inner products with the tracked
  // eigenvector set: eig_vecs first, then the locked vectors in lock order.
  Eigen::VectorXd soft_prev = Eigen::VectorXd::Zero(soft0 + locked_vecs.cols());
  Eigen::VectorXd soft_cur = Eigen::VectorXd::Zero(soft0 + locked_vecs.cols());
  Eigen::VectorXd soft_next = Eigen::VectorXd::Zero(soft0 + locked_vecs.cols());
  auto soft_val = [&](int e) {
    return e < soft0 ? eig_vals[e] : locked_vals[static_cast<std::size_t>(e - soft0)];
  };

  auto push_lock = [&](const Eigen::VectorXd& u, double value) {
    if (locked == locked_vecs.cols()) {
      locked_vecs.conservativeResize(Eigen::NoChange,
                                     std::min<Eigen::Index>(space, locked_vecs.cols() + 8));
      soft_prev.conservativeResize(soft0 + locked_vecs.cols());
      soft_cur.conservativeResize(soft0 + locked_vecs.cols());
      soft_next.conservativeResize(soft0 + locked_vecs.cols());
    }
    locked_vecs.col(locked) = u;
    locked_vals.push_back(value);
    ++locked;
  };

  // Removes components along both excluded sets, the locked eigenvectors,
  // and the first `cols` columns of V. Two classical Gram-Schmidt passes.
  auto project_out = [&](Eigen::VectorXd& w, int cols) {
    for (int pass = 0; pass < 2; ++pass) {
      if (hard > 0) w.noalias() -= hard_defl * (hard_defl.transpose() * w);
      if (soft0 > 0) w.noalias() -= eig_vecs * (eig_vecs.transpose() * w);
      if (locked > 0)
        w.noalias() -= locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * w);
      if (cols > 0) w.noalias() -= V.leftCols(cols) * (V.leftCols(cols).transpose() * w);
    }
  };

  // Produces a unit vector in the orthogonal complement of everything seen
  // so far, or returns false when that complement is (numerically) empty.
  auto fresh_direction = [&](Eigen::VectorXd& w, int cols) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      fill_gaussian(w, rng);
      project_out(w, cols);
      const double nrm = w.norm();
      if (nrm > 1e-8) {
        w /= nrm;
        return true;
      }
    }
    return false;
  };

  Eigen::VectorXd v(n), w(n);
  if (!fresh_direction(v, 0)) throw ArgumentError("lanczos: deflated space is empty");
  V.col(0) = v;

  // Rolling estimates of the inner products between the two newest basis
  // columns and every older one, advanced by the same three-term recurrence
  // the basis itself follows. They decide when a cleanup sweep is due.
  Eigen::VectorXd drift_prev = Eigen::VectorXd::Zero(m + 2);
  Eigen::VectorXd drift_cur = Eigen::VectorXd::Zero(m + 2);
  Eigen::VectorXd drift_next = Eigen::VectorXd::Zero(m + 2);
  // Running Gershgorin-style bound on the operator norm, grown from the
  // tridiagonal entries as they appear; it scales the per-step noise floor.
  double norm_scale = 1.0;
  int stall = 0;

  long matvecs = 0;
  double worst_residual = std::numeric_limits<double>::infinity();
  int ell = 0;           // retained Ritz vectors occupying the front of V
  // True while the working subspace carries a random direction drawn after
  // the last change to the best-nev set. Completion is only declared once
  // such a subspace converges an eigenvalue that fails to improve the set;
  // without the freshness requirement a repeated eigenvalue could hide from
  // every Krylov space grown out of the original starting vector.
  bool lineage_fresh = true;

  for (long restart = 0; restart <= max_restarts; ++restart) {
    // Once most of the answer is locked, long expansions stop paying for
    // themselves: the basis sweeps dominate the runtime while only a few
    // stragglers are still converging. Shorten the cycle accordingly.
    const int room = std::max(4 * std::max(0, nev - locked) + 32, 64);
    const int jmax = std::min(m, ell + room);
    int used = ell;
    bool exhausted = false;
    int chain_start = ell;
    int dbg_sweeps = 0;
    int dbg_scrubs = 0;
    double dbg_worst_drift = 0.0;
    drift_prev.setZero();
    drift_cur.setZero();
    drift_cur.head(ell).setConstant(kDriftFloor);
    drift_cur(ell) = 1.0;
    const int soft_n = soft0 + locked;
    soft_prev.head(soft_n).setZero();
    soft_cur.head(soft_n).setConstant(kDriftFloor);
    for (int j = ell; j < jmax; ++j) {
      w.noalias() = A * V.col(j);
      ++matvecs;
      if (j > 0) w.noalias() -= H(j, j - 1) * V.col(j - 1);
      const double alpha = V.col(j).dot(w);
      w.noalias() -= alpha * V.col(j);
      H(j, j) = alpha;
      // The kept Ritz vectors are not exact eigenvectors, so unlike the rest
      // of the basis their coupling to the chain is not bounded by rounding
      // alone: left alone it re-enters in proportion to the error of the
      // cycle that formed them and compounds restart over restart. The block
      // is narrow, so scrubbing it on every step is cheap insurance.
      if (j > chain_start && ell > 0) {
        Eigen::VectorXd hk = V.leftCols(ell).transpose() * w;
        w.noalias() -= V.leftCols(ell) * hk;
        H.col(j).head(ell) += hk;
        H.row(j).head(ell) += hk.transpose();
      }
      // Caller-excluded directions are arbitrary, so nothing predicts how
      // fast the chain drifts toward them; they are few, so they are simply
      // removed on every step.
      if (hard > 0) w.noalias() -= hard_defl * (hard_defl.transpose() * w);

      // The chain's first column couples to everything (it is a restart
      // border or an injected random vector, not the product of a previous
      // step), so it always gets the full sweep. Later columns sweep when
      // the drift estimate or a suspiciously small remainder says the cheap
      // step can no longer be trusted.
      bool do_sweep = j == chain_start;
      bool scrub_soft = false;
      double step_noise = kDriftFloor;
      if (!do_sweep) {
        const double beta_try = w.norm();
        if (beta_try <= kBreakdownTol) {
          do_sweep = true;
        } else {
          const double beta_prev = j > 0 ? std::abs(H(j, j - 1)) : 0.0;
          norm_scale = std::max(norm_scale, std::abs(alpha) + beta_prev + beta_try);
          const double noise = std::max(kDriftFloor, kDriftNoise * norm_scale / beta_try);
          step_noise = noise;
          double worst = 0.0;
          for (int k = 0; k < j; ++k) {
            const int top = std::min(k + 1, j);
            double num = 0.0;
            for (int i = 0; i <= top; ++i) num += H(i, k) * drift_cur(i);
            num -= H(j - 1, j) * drift_prev(k);
            num -= alpha * drift_cur(k);
            const double est = num / beta_try;
            drift_next(k) = est + (est >= 0.0 ? noise : -noise);
            worst = std::max(worst, std::abs(est));
          }
          double soft_worst = 0.0;
          for (int e = 0; e < soft_n; ++e) {
            const double est =
                ((soft_val(e) - alpha) * soft_cur(e) - H(j - 1, j) * soft_prev(e)) / beta_try;
            soft_next(e) = est + (est >= 0.0 ? noise : -noise);
            soft_worst = std::max(soft_worst, std::abs(est));
          }
          // Sweep when the tracked drift crosses the line, or when this
          // step's own noise floor would: waiting one more step would bake
          // the debris into a normalized basis column that no later sweep
          // can clean.
          do_sweep = worst > kDriftTol || noise > kDriftTol;
          scrub_soft = soft_worst > kDriftTol;
          dbg_worst_drift = std::max(dbg_worst_drift, std::max(worst, soft_worst));
        }
      }
      if (do_sweep) {
        ++dbg_sweeps;
        const double pre = w.norm();
        // Full Gram projection: the corrections join the entries already in
        // H so the projected matrix stays the exact Rayleigh quotient.
        Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
        w.noalias() -= V.leftCols(j + 1) * h;
        if (hard > 0) w.noalias() -= hard_defl * (hard_defl.transpose() * w);
        if (soft0 > 0) w.noalias() -= eig_vecs * (eig_vecs.transpose() * w);
        if (locked > 0)
          w.noalias() -=
              locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * w);
        // A second pass is only needed when the first one cancelled most of
        // the vector; otherwise one pass already left it orthogonal to
        // working precision.
        if (w.norm() < 0.707 * pre) {
          Eigen::VectorXd h2 = V.leftCols(j + 1).transpose() * w;
          w.noalias() -= V.leftCols(j + 1) * h2;
          if (hard > 0) w.noalias() -= hard_defl * (hard_defl.transpose() * w);
          if (soft0 > 0) w.noalias() -= eig_vecs * (eig_vecs.transpose() * w);
          if (locked > 0)
            w.noalias() -=
                locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * w);
          h += h2;
        }
        H.col(j).head(j + 1) += h;
        H.row(j).head(j) += h.head(j).transpose();
        drift_next.head(j).setConstant(kDriftFloor);
        soft_next.head(soft_n).setConstant(kDriftFloor);
        step_noise = kDriftFloor;
      } else if (scrub_soft) {
        // Only the tracked eigenvector overlaps crossed the line; remove
        // them without paying for the full basis sweep. They are tiny, so
        // one pass leaves nothing behind, and they live outside the
        // projected operator, so H needs no correction.
        ++dbg_scrubs;
        if (soft0 > 0) w.noalias() -= eig_vecs * (eig_vecs.transpose() * w);
        if (locked > 0)
          w.noalias() -=
              locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * w);
        soft_next.head(soft_n).setConstant(kDriftFloor);
      }
      drift_next(j) = step_noise;
      drift_next(j + 1) = 1.0;
      drift_prev.swap(drift_cur);
      drift_cur.swap(drift_next);
      soft_prev.swap(soft_cur);
      soft_cur.swap(soft_next);
      used = j + 1;

      const double beta = w.norm();
      if (beta > kBreakdownTol) {
        V.col(j + 1) = w / beta;
        H(j + 1, j) = H(j, j + 1) = beta;
        if (std::getenv("LZSTEP")) {
          const double t = (V.leftCols(j + 1).transpose() * V.col(j + 1)).cwiseAbs().maxCoeff();
          const double p = drift_cur.head(j + 1).cwiseAbs().maxCoeff();
          double ts = 0.0;
          if (soft0 > 0) ts = (eig_vecs.transpose() * V.col(j + 1)).cwiseAbs().maxCoeff();
          if (locked > 0)
            ts = std::max(
                ts, (locked_vecs.leftCols(locked).transpose() * V.col(j + 1)).cwiseAbs().maxCoeff());
          double th = 0.0;
          if (hard > 0) th = (hard_defl.transpose() * V.col(j + 1)).cwiseAbs().maxCoeff();
          std::fprintf(stderr,
                       "[st] j=%d beta=%.2e pred=%.2e true=%.2e soft=%.2e hard=%.2e swept=%d\n", j,
                       beta, p, t, ts, th, static_cast<int>(do_sweep));
        }
      } else {
        // Invariant subspace hit: continue in a fresh direction if any is
        // left, otherwise the current basis spans the whole complement. The
        // injected vector does not mark the lineage fresh: this late in the
        // cycle it may get no polynomial development before the Ritz values
        // are examined, so it cannot vouch for completeness yet.
        H(j + 1, j) = H(j, j + 1) = 0.0;
        if (!fresh_direction(w, j + 1)) {
          exhausted = true;
          break;
        }
        V.col(j + 1) = w;
        chain_start = j + 1;
      }
    }

    if (std::getenv("LZSTATS")) {
      Eigen::MatrixXd G = V.leftCols(used).transpose() * V.leftCols(used);
      G.diagonal().array() -= 1.0;
      std::fprintf(
          stderr,
          "[lz] r=%ld ell=%d used=%d sweeps=%d scrubs=%d pred_drift=%.2e true_orth=%.2e locked=%d\n",
          restart, ell, used, dbg_sweeps, dbg_scrubs, dbg_worst_drift, G.cwiseAbs().maxCoeff(),
          locked);
    }
    const double beta_last = exhausted ? 0.0 : H(used, used - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(used, used));
    if (es.info() != Eigen::Success)
      throw ConvergenceError("lanczos: projected eigensolve failed", matvecs, worst_residual);
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXd Y = es.eigenvectors();

    double normest = 1.0;
    normest = std::max(normest, std::max(std::abs(theta[0]), std::abs(theta[used - 1])));
    for (double lv : locked_vals) normest = std::max(normest, std::abs(lv));
    for (int e = 0; e < soft0; ++e) normest = std::max(normest, std::abs(eig_vals[e]));

    // A locked vector re-enters every later cheap step in proportion to its
    // own residual, and the drift tracking assumes the tracked directions
    // are eigenvectors to better than the drift tolerance. Demanding two
    // extra orders of magnitude at lock time keeps both leaks far below the
    // accuracy the caller asked for.
    const double lock_tol = 0.01 * opt.tol;

    // Desired-end Ritz indices, nearest end first.
    std::vector<int> order(used);
    for (int i = 0; i < used; ++i)
      order[i] = (which == WhichEnd::Smallest) ? i : used - 1 - i;

    const int need = std::max(0, nev - locked);
    const int keep_cap = std::min(need + 8, m - 1);
    const int locked_before = locked;
    worst_residual = 0.0;
    bool confirmed = false;
    bool retry_fresh = false;
    std::vector<int> kept;
    for (int rank = 0; rank < used && rank < need + 8; ++rank) {
      const int idx = order[rank];
      const bool wanted = rank < need;
      // With the set full, the single most extreme remaining candidate still
      // gets converged: if it cannot displace anything the answer is proven
      // complete, and if it can it was a repeated eigenvalue we were missing.
      const bool sentinel = need == 0 && rank == 0;
      const double estimate = std::abs(beta_last * Y(used - 1, idx));
      if (wanted || sentinel) worst_residual = std::max(worst_residual, estimate);

      // Any converged pair in the window may lock, wanted or not: locking is
      // always sound and the extra deflation widens the gap the remaining
      // candidates see.
      bool lock_now = false;
      if (locked < space && estimate <= lock_tol * normest) {
        // Estimate says converged; verify with an explicit residual before
        // committing the pair to the locked set.
        Eigen::VectorXd u = V.leftCols(used) * Y.col(idx);
        if (hard > 0) u.noalias() -= hard_defl * (hard_defl.transpose() * u);
        if (soft0 > 0) u.noalias() -= eig_vecs * (eig_vecs.transpose() * u);
        if (locked > 0)
          u.noalias() -= locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * u);
        const double unorm = u.norm();
        if (std::getenv("LZSTATS"))
          std::fprintf(stderr,
                       "[lz] try r=%ld rank=%d theta=%.3e est=%.3e unorm=%.3e locked=%d\n",
                       restart, rank, theta[idx], estimate, unorm, locked);
        if (unorm >= 0.1) {
          u /= unorm;
          Eigen::VectorXd r = A * u - theta[idx] * u;
          ++matvecs;
          if (std::getenv("LZSTATS"))
            std::fprintf(stderr, "[lz]   verify rnorm=%.3e gate=%.3e\n", r.norm(),
                         lock_tol * normest);
          if (r.norm() <= lock_tol * normest) {
            const bool improving = locked < nev || more_extreme(theta[idx], entry_bar());
            push_lock(u, theta[idx]);
            lock_now = true;
            if (improving) {
              // The answer set changed, so this lineage can no longer vouch
              // for completeness: a further copy of the value just locked is
              // invisible to every Krylov space grown from it.
              lineage_fresh = false;
            } else if (sentinel) {
              if (lineage_fresh)
                confirmed = true;
              else
                retry_fresh = true;
            }
          }
        }
      }
      if (!lock_now && static_cast<int>(kept.size()) < keep_cap) kept.push_back(idx);
    }
    if (locked > locked_before) {
      stall = 0;
    } else if (++stall >= kStallLimit) {
      stall = 0;
      retry_fresh = true;
    }

    if (std::getenv("LZSTATS") && (confirmed || locked == space))
      std::fprintf(stderr, "[lz] window nev=%d restarts=%ld matvecs=%ld locked=%d\n", nev,
                   restart, matvecs, locked);
    if (confirmed || locked == space) return result();
    if (exhausted) {
      // The whole complement was enumerated, so every remaining eigenvalue
      // appeared as an exact Ritz pair; anything still missing is a genuine
      // failure.
      if (locked >= nev) return result();
      break;
    }
    if (restart == max_restarts) break;

    // Thick restart: carry the best unconverged Ritz vectors into the next
    // cycle with the Krylov residual as the tail. Keeping that exact tail is
    // what makes the cheap residual estimates above trustworthy, so it is
    // used even after locking. Only a completeness check that failed because
    // the lineage predates the last improvement is rerun from scratch on a
    // fresh random vector.
    if (retry_fresh && std::getenv("LZSTATS"))
      std::fprintf(stderr, "[lz] retry at restart=%ld matvecs=%ld locked=%d\n", restart, matvecs,
                   locked);
    if (retry_fresh) kept.clear();
    int keep = static_cast<int>(kept.size());
    Eigen::MatrixXd Ykept(used, keep);
    for (int i = 0; i < keep; ++i) Ykept.col(i) = Y.col(kept[i]);
    Eigen::MatrixXd kept_vecs = V.leftCols(used) * Ykept;
    if (keep > 0) {
      // The block inherits whatever orthogonality error the basis had built
      // up, and carrying that into the next cycle compounds restart over
      // restart. It sits within rounding of orthonormal, so one Cholesky QR
      // pass restores it to working precision. The Ritz values stay put: the
      // correction factor is within rounding of the identity.
      if (hard > 0) kept_vecs.noalias() -= hard_defl * (hard_defl.transpose() * kept_vecs);
      if (soft0 > 0) kept_vecs.noalias() -= eig_vecs * (eig_vecs.transpose() * kept_vecs);
      if (locked > 0)
        kept_vecs.noalias() -=
            locked_vecs.leftCols(locked) * (locked_vecs.leftCols(locked).transpose() * kept_vecs);
      Eigen::LLT<Eigen::MatrixXd> llt(kept_vecs.transpose() * kept_vecs);
      if (llt.info() == Eigen::Success) {
        llt.matrixU().solveInPlace<Eigen::OnTheRight>(kept_vecs);
      } else {
        // Degenerate block: drop it and let the cycle rebuild from the tail.
        keep = 0;
        kept.clear();
      }
    }
    Eigen::VectorXd tail = V.col(used);
    V.leftCols(keep) = kept_vecs.leftCols(keep);
    H.setZero();
    for (int i = 0; i < keep; ++i) H(i, i) = theta[kept[i]];

    bool tail_ok = false;
    if (!retry_fresh && keep > 0 && beta_last > kBreakdownTol) {
      project_out(tail, keep);
      const double tn = tail.norm();
      if (tn > 1e-8) {
        tail /= tn;
        tail_ok = true;
      }
    }
    if (!tail_ok) {
      // Losing the tail severs the kept vectors' residual directions from
      // the basis; the cheap steps would never see those couplings again,
      // so the cycle starts clean instead.
      if (keep > 0) {
        keep = 0;
        H.setZero();
      }
      if (!fresh_direction(tail, keep)) {
        // Nothing orthogonal is left to explore.
        if (locked >= nev) return result();
        break;
      }
      lineage_fresh = true;
    }
    V.col(keep) = tail;
    ell = keep;
  }

  throw ConvergenceError("lanczos: eigenvalues did not converge", matvecs, worst_residual);
}

}  // namespace

std::vector<double> lanczos_extreme(const Eigen::SparseMatrix<double>& A, int nev,
                                    WhichEnd which, const Eigen::MatrixXd& deflation,
                                    const LanczosOptions& opt) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw ArgumentError("lanczos: matrix is not square");
  if (nev <= 0) return {};

  const int defl = static_cast<int>(deflation.cols());
  if (nev > n - defl)
    throw ArgumentError("lanczos: requested more eigenvalues than the deflated space holds");

  // Each wave resolves the most extreme remaining eigenvalues and then joins
  // the tracked eigenpair set of the next, so later waves work strictly
  // further from the end of the spectrum. Every wave certifies its own
  // completeness, which makes the concatenation, sorted and trimmed, the
  // true answer.
  Eigen::MatrixXd eig_vecs(n, 0);
  Eigen::VectorXd eig_vals(0);
  std::vector<double> all_vals;
  int wave = 0;
  while (static_cast<int>(all_vals.size()) < nev) {
    const int nev_w = std::min(kWave, nev - static_cast<int>(all_vals.size()));
    const std::uint64_t seed = opt.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(++wave);
    WindowResult res = solve_window(A, nev_w, which, deflation, eig_vecs, eig_vals, opt, seed);
    const Eigen::Index old = eig_vecs.cols();
    eig_vecs.conservativeResize(Eigen::NoChange, old + res.vectors.cols());
    eig_vecs.rightCols(res.vectors.cols()) = res.vectors;
    eig_vals.conservativeResize(old + res.vectors.cols());
    for (Eigen::Index i = 0; i < res.vectors.cols(); ++i)
      eig_vals[old + i] = res.values[static_cast<std::size_t>(i)];
    all_vals.insert(all_vals.end(), res.values.begin(), res.values.end());
  }

  std::sort(all_vals.begin(), all_vals.end());
  if (static_cast<int>(all_vals.size()) > nev) {
    if (which == WhichEnd::Smallest)
      all_vals.resize(static_cast<std::size_t>(nev));
    else
      all_vals.erase(all_vals.begin(), all_vals.end() - nev);
  }
  return all_vals;
}

}  // namespace netlsd
