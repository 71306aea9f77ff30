#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "netlsd/signature.hpp"

namespace netlsd {

/// The part of a signature that must match before two signatures (or a
/// whole collection) may be compared.
struct SignatureMeta {
  KernelKind kernel = KernelKind::Heat;
  Normalization normalization = Normalization::None;
  TimeGrid grid;
};

bool compatible(const SignatureMeta& a, const SignatureMeta& b);
SignatureMeta meta_of(const Signature& s);

/// Signatures sharing one metadata block, addressable by id. Labels are
/// all-or-nothing: either every entry has one or none does.
struct SignatureCollection {
  SignatureMeta meta;
  std::vector<std::string> ids;
  std::vector<Eigen::ArrayXd> rows;
  std::vector<int> labels;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return ids.size(); }
  bool labeled() const { return !labels.empty(); }
};

void add_signature(SignatureCollection& coll, std::string id, Eigen::ArrayXd values,
                   std::optional<int> label = std::nullopt);
void add_signature(SignatureCollection& coll, std::string id, const Signature& sig,
                   std::optional<int> label = std::nullopt);

/// Euclidean distance between the value vectors. Refuses mismatched
/// metadata rather than comparing apples to oranges.
double signature_distance(const Signature& a, const Signature& b);

/// Chebyshev distance; never exceeds signature_distance on the same pair,
/// which is what makes it usable as a cheap pruning bound.
double linf_distance(const Signature& a, const Signature& b);

struct Neighbor {
  std::string id;
  double distance = 0.0;
};

/// The k nearest entries by L2 distance, exact linear scan. Ties break by
/// ascending id; k larger than the collection returns everything.
std::vector<Neighbor> knn_query(const SignatureCollection& coll, const Signature& query,
                                std::size_t k);

/// Exact AUC of scores against binary labels (nonzero = positive) via the
/// rank statistic; tied scores contribute 1/2 per pair.
double rank_auc(std::span<const double> scores, std::span<const int> labels);

enum class Metric { Accuracy, RocAuc };

Metric metric_from_string(std::string_view s);
std::string_view to_string(Metric m);

struct EvalReport {
  Metric metric = Metric::Accuracy;
  double value = 0.0;  // mean of per_trial
  int trials = 0;
  std::vector<double> per_trial;
  std::uint64_t seed = 0;
};

/// Repeated stratified train/test splits scored by 1-NN. Accuracy works for
/// any number of classes; ROC AUC requires exactly two and scores each test
/// item by d(nearest negative) - d(nearest positive) over the training set.
EvalReport evaluate_1nn(const SignatureCollection& coll, double train_fraction, int trials,
                        Metric metric, std::uint64_t seed);

}  // namespace netlsd
