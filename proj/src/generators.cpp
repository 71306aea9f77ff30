#include "netlsd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "netlsd/errors.hpp"

namespace netlsd {

namespace {

// Visits each index in [0, total) independently with probability p, in
// increasing order, using geometric skips.
template <class Visit>
void sample_bernoulli_indices(std::int64_t total, double p, std::mt19937_64& rng,
                              Visit&& visit) {
  if (total <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::int64_t i = 0; i < total; ++i) visit(i);
    return;
  }
  std::geometric_distribution<std::int64_t> skip(p);
  std::int64_t idx = skip(rng);
  while (idx < total) {
    visit(idx);
    idx += 1 + skip(rng);
  }
}

// Decodes linear indices of the strict upper triangle of an n x n matrix,
// enumerated row by row: (0,1),(0,2),...,(0,n-1),(1,2),...
class TriangleDecoder {
 public:
  explicit TriangleDecoder(NodeId n) : n_(n) {}
  EdgePair operator()(std::int64_t idx) {
    while (idx >= row_start_ + row_len()) {
      row_start_ += row_len();
      ++u_;
    }
    return {u_, static_cast<NodeId>(u_ + 1 + (idx - row_start_))};
  }

 private:
  std::int64_t row_len() const { return n_ - 1 - u_; }
  NodeId n_;
  NodeId u_ = 0;
  std::int64_t row_start_ = 0;
};

std::int64_t pair_count(std::int64_t k) { return k * (k - 1) / 2; }

}  // namespace

NamedGraph named_graph_from_string(const std::string& name) {
  if (name == "ring") return NamedGraph::Ring;
  if (name == "wheel") return NamedGraph::Wheel;
  if (name == "complete") return NamedGraph::Complete;
  if (name == "empty") return NamedGraph::Empty;
  if (name == "path") return NamedGraph::Path;
  throw ArgumentError("unknown graph family: " + name);
}

Graph gen_named(NamedGraph kind, NodeId n) {
  if (n < 1) throw ArgumentError("named graphs require n >= 1");
  std::vector<EdgePair> edges;
  switch (kind) {
    case NamedGraph::Empty:
      break;
    case NamedGraph::Complete:
      edges.reserve(static_cast<std::size_t>(pair_count(n)));
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
    case NamedGraph::Path:
      for (NodeId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
      break;
    case NamedGraph::Ring:
      if (n < 3) throw ArgumentError("ring requires n >= 3");
      for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
      break;
    case NamedGraph::Wheel:
      if (n < 3) throw ArgumentError("wheel requires n >= 3");
      for (NodeId u = 0; u < n; ++u) {
        edges.emplace_back(u, (u + 1) % n);
        edges.emplace_back(u, (u + 2) % n);
      }
      break;
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph gen_erdos_renyi(NodeId n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("Erdos-Renyi requires n >= 2");
  const double p = mean_degree / static_cast<double>(n - 1);
  if (!(p > 0.0) || p > 1.0)
    throw ArgumentError("edge probability " + std::to_string(p) + " outside (0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<EdgePair> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(pair_count(n))) + 16);
  TriangleDecoder decode(n);
  sample_bernoulli_indices(pair_count(n), p, rng,
                           [&](std::int64_t idx) { edges.push_back(decode(idx)); });
  return Graph::from_edges(n, std::move(edges));
}

SbmRates sbm_rates_for_mean_degree(NodeId n, int blocks, double mean_degree,
                                   double mixing_ratio) {
  if (blocks < 2) throw ArgumentError("block model requires >= 2 blocks");
  if (n < blocks) throw ArgumentError("block model requires n >= blocks");
  if (mixing_ratio < 0.0 || mixing_ratio > 1.0)
    throw ArgumentError("mixing ratio must lie in [0, 1]");
  const double block_size = static_cast<double>(n) / blocks;
  const double intra_slots = block_size - 1.0;
  const double inter_slots = static_cast<double>(n) - block_size;
  double intra_degree = (1.0 - mixing_ratio) * mean_degree;
  // A block denser than half its internal pair capacity reads as a clique
  // rather than a community, so the planted density is capped there and the
  // excess degree moves to inter-block edges. Small graphs therefore carry
  // weak structure (blocks lack the capacity to express it) while large
  // ones realize the full requested contrast; expected degree stays at
  // mean_degree throughout.
  if (intra_slots <= 0.0) {
    intra_degree = 0.0;
  } else {
    intra_degree = std::min(intra_degree, 0.5 * intra_slots);
  }
  const double inter_degree = mean_degree - intra_degree;
  SbmRates rates;
  rates.p_in = intra_slots > 0.0 ? intra_degree / intra_slots : 1.0;
  rates.p_out = inter_slots > 0.0 ? inter_degree / inter_slots : 0.0;
  if (rates.p_out > 1.0 + 1e-9)
    throw ArgumentError("mean degree too large for the block structure");
  rates.p_out = std::min(rates.p_out, 1.0);
  return rates;
}

Graph gen_sbm(NodeId n, int blocks, double p_in, double p_out, std::uint64_t seed) {
  if (blocks < 2) throw ArgumentError("block model requires >= 2 blocks");
  if (n < blocks) throw ArgumentError("block model requires n >= blocks");
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw ArgumentError("edge probabilities must lie in [0, 1]");
  if (p_in <= p_out)
    throw ArgumentError("p_in must exceed p_out for community structure");

  // Contiguous block boundaries; sizes differ by at most one.
  std::vector<NodeId> start(static_cast<std::size_t>(blocks) + 1);
  for (int b = 0; b <= blocks; ++b)
    start[static_cast<std::size_t>(b)] =
        static_cast<NodeId>((static_cast<std::int64_t>(n) * b) / blocks);

  std::mt19937_64 rng(seed);
  std::vector<EdgePair> edges;
  for (int a = 0; a < blocks; ++a) {
    const NodeId sa = start[a], ea = start[a + 1];
    const NodeId size_a = ea - sa;
    // Intra-block pairs.
    TriangleDecoder decode(size_a);
    sample_bernoulli_indices(pair_count(size_a), p_in, rng, [&](std::int64_t idx) {
      auto [u, v] = decode(idx);
      edges.emplace_back(sa + u, sa + v);
    });
    // Rectangles against later blocks.
    for (int b = a + 1; b < blocks; ++b) {
      const NodeId sb = start[b];
      const std::int64_t size_b = start[b + 1] - sb;
      sample_bernoulli_indices(size_a * size_b, p_out, rng, [&](std::int64_t idx) {
        edges.emplace_back(sa + static_cast<NodeId>(idx / size_b),
                           sb + static_cast<NodeId>(idx % size_b));
      });
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

namespace {

std::int64_t edge_key(NodeId n, NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::int64_t>(u) * n + v;
}

}  // namespace

Graph rewire_degree_preserving(const Graph& g, int sweeps, std::uint64_t seed) {
  if (sweeps < 1) throw ArgumentError("rewiring requires sweeps >= 1");
  const NodeId n = g.node_count();
  auto edges = g.edge_list();
  const std::int64_t m = static_cast<std::int64_t>(edges.size());
  if (m < 2) return Graph::from_edges(n, std::move(edges));

  std::unordered_set<std::int64_t> present;
  present.reserve(static_cast<std::size_t>(2 * m));
  for (auto [u, v] : edges) present.insert(edge_key(n, u, v));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, m - 1);
  std::bernoulli_distribution flip(0.5);

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::int64_t attempt = 0; attempt < m; ++attempt) {
      const std::int64_t i = pick(rng);
      const std::int64_t j = pick(rng);
      if (i == j) continue;
      auto [a, b] = edges[static_cast<std::size_t>(i)];
      auto [c, d] = edges[static_cast<std::size_t>(j)];
      if (flip(rng)) std::swap(c, d);
      // Proposal: (a,b),(c,d) -> (a,d),(c,b).
      if (a == d || c == b) continue;
      const std::int64_t k1 = edge_key(n, a, d);
      const std::int64_t k2 = edge_key(n, c, b);
      if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
      present.erase(edge_key(n, a, b));
      present.erase(edge_key(n, c, d));
      present.insert(k1);
      present.insert(k2);
      edges[static_cast<std::size_t>(i)] = {std::min(a, d), std::max(a, d)};
      edges[static_cast<std::size_t>(j)] = {std::min(c, b), std::max(c, b)};
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace netlsd
