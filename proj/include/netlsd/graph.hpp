#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netlsd {

using NodeId = std::int32_t;
using EdgePair = std::pair<NodeId, NodeId>;

/// Immutable undirected graph in compressed sparse adjacency form.
/// Invariants: no self-loops, no duplicate edges, adjacency symmetric,
/// node ids dense in 0..n-1. Safe to share across threads once built.
class Graph {
 public:
  struct CleanupStats {
    std::int64_t self_loops = 0;
    std::int64_t duplicates = 0;
  };

  Graph() = default;

  /// Builds a graph from (u,v) pairs in any order/orientation.
  /// Self-loops are dropped and duplicate edges collapsed; counts are
  /// reported through `stats` when non-null.
  static Graph from_edges(NodeId n, std::vector<EdgePair> edges,
                          CleanupStats* stats = nullptr);

  NodeId node_count() const { return n_; }
  std::int64_t edge_count() const { return m_; }
  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
  }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u],
            static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
  }

  bool has_edge(NodeId u, NodeId v) const;

  /// All edges as (u,v) with u < v, sorted lexicographically.
  std::vector<EdgePair> edge_list() const;

 private:
  NodeId n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> adj_;
};

struct ComponentLabeling {
  std::vector<NodeId> labels;  // labels[i] in 0..count-1
  NodeId count = 0;
};

ComponentLabeling connected_components(const Graph& g);

enum class IdPolicy {
  RemapArbitrary,        // any tokens; remapped to 0..n-1 by first occurrence
  RequireDenseIntegers,  // tokens must be non-negative integers used as-is
};

struct LoadResult {
  Graph graph;
  std::int64_t self_loops_dropped = 0;
  std::int64_t duplicates_collapsed = 0;
};

/// Parses the edge-list text format: '#'-prefixed comment lines ignored,
/// one edge per line as two whitespace-separated endpoint tokens.
/// Throws ParseError (with line number) on malformed lines and
/// ArgumentError on empty input.
LoadResult load_edge_list(std::istream& in, IdPolicy policy = IdPolicy::RemapArbitrary);

LoadResult load_edge_list_file(const std::string& path,
                               IdPolicy policy = IdPolicy::RemapArbitrary);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace netlsd
