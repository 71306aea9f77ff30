#include "netlsd/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "netlsd/errors.hpp"
#include "netlsd/rng.hpp"

namespace netlsd {

bool compatible(const SignatureMeta& a, const SignatureMeta& b) {
  return a.kernel == b.kernel && a.normalization == b.normalization &&
         a.grid.count == b.grid.count && a.grid.t_min == b.grid.t_min &&
         a.grid.t_max == b.grid.t_max && a.grid.spacing == b.grid.spacing;
}

SignatureMeta meta_of(const Signature& s) { return {s.kernel, s.normalization, s.grid}; }

namespace {

void require_compatible(const SignatureMeta& a, const SignatureMeta& b) {
  if (!compatible(a, b))
    throw IncompatibilityError(
        "signatures were computed with different settings (kernel/normalization/grid) "
        "and cannot be compared");
}

}  // namespace

void add_signature(SignatureCollection& coll, std::string id, Eigen::ArrayXd values,
                   std::optional<int> label) {
  if (id.empty()) throw ArgumentError("signature id must not be empty");
  if (coll.index.contains(id)) throw ArgumentError("duplicate signature id '" + id + "'");
  if (values.size() != coll.meta.grid.count)
    throw ArgumentError("signature for '" + id + "' has " + std::to_string(values.size()) +
                        " values, grid expects " + std::to_string(coll.meta.grid.count));
  if (!coll.ids.empty() && coll.labeled() != label.has_value())
    throw ArgumentError("cannot mix labeled and unlabeled entries in one collection");

  coll.index.emplace(id, coll.ids.size());
  coll.ids.push_back(std::move(id));
  coll.rows.push_back(std::move(values));
  if (label) coll.labels.push_back(*label);
}

void add_signature(SignatureCollection& coll, std::string id, const Signature& sig,
                   std::optional<int> label) {
  require_compatible(coll.meta, meta_of(sig));
  add_signature(coll, std::move(id), sig.values, label);
}

double signature_distance(const Signature& a, const Signature& b) {
  require_compatible(meta_of(a), meta_of(b));
  return (a.values - b.values).matrix().norm();
}

double linf_distance(const Signature& a, const Signature& b) {
  require_compatible(meta_of(a), meta_of(b));
  return (a.values - b.values).abs().maxCoeff();
}

std::vector<Neighbor> knn_query(const SignatureCollection& coll, const Signature& query,
                                std::size_t k) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (coll.size() == 0) throw ArgumentError("cannot query an empty collection");
  require_compatible(coll.meta, meta_of(query));

  std::vector<std::size_t> order(coll.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> dist(coll.size());
  for (std::size_t i = 0; i < coll.size(); ++i)
    dist[i] = (coll.rows[i] - query.values).matrix().norm();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return coll.ids[a] < coll.ids[b];
  });

  const std::size_t take = std::min(k, coll.size());
  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({coll.ids[order[i]], dist[order[i]]});
  return out;
}

double rank_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ArgumentError("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (int l : labels) positives += (l != 0) ? 1 : 0;
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0)
    throw ArgumentError("AUC needs at least one positive and one negative label");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mean rank over each tie run (1-based), Mann-Whitney form.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t r = i; r < j; ++r)
      if (labels[order[r]] != 0) positive_rank_sum += mean_rank;
    i = j;
  }
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

Metric metric_from_string(std::string_view s) {
  if (s == "accuracy") return Metric::Accuracy;
  if (s == "roc_auc" || s == "auc") return Metric::RocAuc;
  throw ArgumentError("unknown metric '" + std::string(s) + "' (expected accuracy or roc_auc)");
}

std::string_view to_string(Metric m) { return m == Metric::Accuracy ? "accuracy" : "roc_auc"; }

EvalReport evaluate_1nn(const SignatureCollection& coll, double train_fraction, int trials,
                        Metric metric, std::uint64_t seed) {
  if (!coll.labeled()) throw ArgumentError("evaluation needs a labeled collection");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgumentError("train fraction must lie strictly between 0 and 1");
  if (trials < 1) throw ArgumentError("need at least one trial");
  if (coll.size() < 2) throw ArgumentError("need at least two labeled signatures");

  // Class -> member indices, in a deterministic class order.
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < coll.size(); ++i) classes[coll.labels[i]].push_back(i);
  if (metric == Metric::RocAuc && classes.size() != 2)
    throw ArgumentError("ROC AUC is defined for exactly two classes, got " +
                        std::to_string(classes.size()));
  const int positive_label = classes.empty() ? 0 : classes.rbegin()->first;

  EvalReport report;
  report.metric = metric;
  report.trials = trials;
  report.seed = seed;
  report.per_trial.resize(static_cast<std::size_t>(trials));

  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));

    // Stratified split; every class keeps at least one training example.
    std::vector<std::size_t> train, test;
    for (auto& [label, members] : classes) {
      std::vector<std::size_t> shuffled = members;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      std::size_t n_train = static_cast<std::size_t>(
          std::llround(train_fraction * static_cast<double>(shuffled.size())));
      n_train = std::clamp<std::size_t>(n_train, 1,
                                        shuffled.size() > 1 ? shuffled.size() - 1 : 1);
      train.insert(train.end(), shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train));
      test.insert(test.end(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train), shuffled.end());
    }
    if (test.empty()) throw ArgumentError("train fraction leaves no test examples");

    if (metric == Metric::Accuracy) {
      std::size_t correct = 0;
      for (std::size_t q : test) {
        std::size_t best = train.front();
        double best_dist = (coll.rows[q] - coll.rows[best]).matrix().norm();
        for (std::size_t c : train) {
          const double d = (coll.rows[q] - coll.rows[c]).matrix().norm();
          if (d < best_dist || (d == best_dist && coll.ids[c] < coll.ids[best])) {
            best = c;
            best_dist = d;
          }
        }
        if (coll.labels[best] == coll.labels[q]) ++correct;
      }
      report.per_trial[static_cast<std::size_t>(trial)] =
          static_cast<double>(correct) / static_cast<double>(test.size());
    } else {
      std::vector<double> scores;
      std::vector<int> truth;
      scores.reserve(test.size());
      truth.reserve(test.size());
      for (std::size_t q : test) {
        double nearest_pos = std::numeric_limits<double>::infinity();
        double nearest_neg = std::numeric_limits<double>::infinity();
        for (std::size_t c : train) {
          const double d = (coll.rows[q] - coll.rows[c]).matrix().norm();
          if (coll.labels[c] == positive_label)
            nearest_pos = std::min(nearest_pos, d);
          else
            nearest_neg = std::min(nearest_neg, d);
        }
        scores.push_back(nearest_neg - nearest_pos);
        truth.push_back(coll.labels[q] == positive_label ? 1 : 0);
      }
      report.per_trial[static_cast<std::size_t>(trial)] = rank_auc(scores, truth);
    }
  }

  report.value = std::accumulate(report.per_trial.begin(), report.per_trial.end(), 0.0) /
                 static_cast<double>(report.per_trial.size());
  return report;
}

}  // namespace netlsd
