#include "netlsd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "netlsd/errors.hpp"

namespace netlsd {

Graph Graph::from_edges(NodeId n, std::vector<EdgePair> edges, CleanupStats* stats) {
  if (n < 0) throw ArgumentError("node count must be non-negative");
  CleanupStats local;
  std::vector<EdgePair> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ArgumentError("edge endpoint out of range 0.." + std::to_string(n - 1));
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    clean.emplace_back(u, v);
  }
  std::sort(clean.begin(), clean.end());
  auto last = std::unique(clean.begin(), clean.end());
  local.duplicates = static_cast<std::int64_t>(clean.end() - last);
  clean.erase(last, clean.end());
  if (stats) *stats = local;

  Graph g;
  g.n_ = n;
  g.m_ = static_cast<std::int64_t>(clean.size());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : clean) {
    ++counts[static_cast<std::size_t>(u) + 1];
    ++counts[static_cast<std::size_t>(v) + 1];
  }
  g.offsets_.assign(counts.begin(), counts.end());
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.adj_.resize(static_cast<std::size_t>(2 * g.m_));
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : clean) {
    g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
    g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
  }
  // Rows are kept sorted so has_edge can binary-search.
  for (NodeId u = 0; u < n; ++u) {
    auto begin = g.adj_.begin() + g.offsets_[u];
    auto end = g.adj_.begin() + g.offsets_[u + 1];
    std::sort(begin, end);
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<EdgePair> Graph::edge_list() const {
  std::vector<EdgePair> edges;
  edges.reserve(static_cast<std::size_t>(m_));
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v : neighbors(u))
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

ComponentLabeling connected_components(const Graph& g) {
  const NodeId n = g.node_count();
  ComponentLabeling out;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (out.labels[static_cast<std::size_t>(start)] != -1) continue;
    const NodeId label = out.count++;
    stack.push_back(start);
    out.labels[static_cast<std::size_t>(start)] = label;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (out.labels[static_cast<std::size_t>(v)] == -1) {
          out.labels[static_cast<std::size_t>(v)] = label;
          stack.push_back(v);
        }
      }
    }
  }
  return out;
}

namespace {

bool parse_node_token(const std::string& tok, NodeId& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && out >= 0;
}

}  // namespace

LoadResult load_edge_list(std::istream& in, IdPolicy policy) {
  std::vector<EdgePair> edges;
  std::unordered_map<std::string, NodeId> remap;
  NodeId max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  bool saw_edge_line = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    if (line[begin] == '#') continue;

    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (fields.fail() || (fields >> extra))
      throw ParseError("expected exactly two endpoint tokens", line_no);

    NodeId u, v;
    if (policy == IdPolicy::RequireDenseIntegers) {
      if (!parse_node_token(a, u) || !parse_node_token(b, v))
        throw ParseError("endpoint is not a non-negative integer", line_no);
    } else {
      auto intern = [&](const std::string& tok) {
        auto [it, inserted] = remap.emplace(tok, static_cast<NodeId>(remap.size()));
        (void)inserted;
        return it->second;
      };
      u = intern(a);
      v = intern(b);
    }
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
    saw_edge_line = true;
  }

  if (!saw_edge_line) throw ArgumentError("edge list is empty");

  LoadResult result;
  Graph::CleanupStats stats;
  result.graph = Graph::from_edges(max_id + 1, std::move(edges), &stats);
  result.self_loops_dropped = stats.self_loops;
  result.duplicates_collapsed = stats.duplicates;
  return result;
}

LoadResult load_edge_list_file(const std::string& path, IdPolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return load_edge_list(in, policy);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_edge_list(out, g);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace netlsd
