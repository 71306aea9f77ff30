#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "netlsd/errors.hpp"
#include "netlsd/generators.hpp"
#include "netlsd/graph.hpp"

using namespace netlsd;

namespace {

// Structural sanity every construction path must satisfy: symmetric
// adjacency, no self-loops, sorted rows, degree sum = 2m.
void check_graph_invariants(const Graph& g) {
  std::int64_t degree_sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nb = g.neighbors(u);
    REQUIRE(std::is_sorted(nb.begin(), nb.end()));
    REQUIRE(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    degree_sum += g.degree(u);
    for (NodeId v : nb) {
      REQUIRE(v != u);
      REQUIRE(g.has_edge(v, u));
    }
  }
  REQUIRE(degree_sum == 2 * g.edge_count());
}

// Reference component count by boolean transitive closure; cubic, so only
// used on tiny graphs.
int closure_component_count(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int u = 0; u < n; ++u) {
    reach[u][u] = true;
    for (NodeId v : g.neighbors(u)) reach[u][v] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  int count = 0;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = 0; j < n; ++j)
      if (reach[i][j]) seen[j] = true;
  }
  return count;
}

Graph random_graph(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<EdgePair> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

std::vector<NodeId> sorted_degrees(const Graph& g) {
  std::vector<NodeId> d(static_cast<std::size_t>(g.node_count()));
  for (NodeId u = 0; u < g.node_count(); ++u) d[static_cast<std::size_t>(u)] = g.degree(u);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("from_edges collapses duplicates and drops self-loops") {
  Graph::CleanupStats stats;
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 1}, {1, 2}}, &stats);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(stats.self_loops == 1);
  CHECK(stats.duplicates == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  check_graph_invariants(g);
}

TEST_CASE("from_edges rejects out-of-range endpoints") {
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), ArgumentError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{-1, 0}}), ArgumentError);
}

TEST_CASE("edge_list returns canonical sorted pairs") {
  Graph g = Graph::from_edges(4, {{3, 1}, {2, 0}, {1, 0}});
  std::vector<EdgePair> expected{{0, 1}, {0, 2}, {1, 3}};
  CHECK(g.edge_list() == expected);
}

TEST_CASE("load_edge_list parses a triangle") {
  std::istringstream in("0 1\n1 2\n2 0\n");
  LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 3);
  check_graph_invariants(r.graph);
}

TEST_CASE("load_edge_list remaps arbitrary tokens and cleans up") {
  std::istringstream in("a b\nb a\na a\n");
  LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 2);
  CHECK(r.graph.edge_count() == 1);
  CHECK(r.self_loops_dropped == 1);
  CHECK(r.duplicates_collapsed == 1);
}

TEST_CASE("load_edge_list skips comments and blank lines") {
  std::istringstream in("# header\n\n  \t\n0 1\n# trailing\n1 2\n");
  LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 2);
}

TEST_CASE("load_edge_list reports malformed lines with their number") {
  std::istringstream in("0 1 2\n");
  try {
    load_edge_list(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }

  std::istringstream in2("0 1\nonly_one_token\n");
  try {
    load_edge_list(in2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_edge_list rejects empty input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(load_edge_list(empty), ArgumentError);
  std::istringstream only_comments("# nothing\n\n");
  CHECK_THROWS_AS(load_edge_list(only_comments), ArgumentError);
}

TEST_CASE("dense-integer id policy keeps ids and rejects other tokens") {
  std::istringstream in("2 0\n0 1\n");
  LoadResult r = load_edge_list(in, IdPolicy::RequireDenseIntegers);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.has_edge(2, 0));

  std::istringstream bad("a b\n");
  CHECK_THROWS_AS(load_edge_list(bad, IdPolicy::RequireDenseIntegers), ParseError);
}

TEST_CASE("dense-integer id policy accounts for gaps as isolated nodes") {
  std::istringstream in("0 5\n");
  LoadResult r = load_edge_list(in, IdPolicy::RequireDenseIntegers);
  CHECK(r.graph.node_count() == 6);
  CHECK(r.graph.degree(3) == 0);
}

TEST_CASE("edge list round-trips through write and load") {
  std::mt19937_64 rng(7);
  Graph g = random_graph(12, 0.3, rng);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  LoadResult r = load_edge_list(in, IdPolicy::RequireDenseIntegers);
  CHECK(r.graph.edge_list() == g.edge_list());
}

TEST_CASE("connected_components handles the textbook shapes") {
  CHECK(connected_components(gen_named(NamedGraph::Ring, 10)).count == 1);
  CHECK(connected_components(gen_named(NamedGraph::Empty, 5)).count == 5);

  // Two disjoint triangles.
  Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  ComponentLabeling labels = connected_components(g);
  CHECK(labels.count == 2);
  CHECK(labels.labels[0] == labels.labels[1]);
  CHECK(labels.labels[0] != labels.labels[3]);
}

TEST_CASE("connected_components matches the transitive-closure oracle") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  for (int trial = 0; trial < 2000; ++trial) {
    Graph g = random_graph(size(rng), density(rng), rng);
    ComponentLabeling labels = connected_components(g);
    CHECK(labels.count == closure_component_count(g));
    // Labels themselves must be consistent: endpoints of every edge agree.
    for (auto [u, v] : g.edge_list())
      CHECK(labels.labels[static_cast<std::size_t>(u)] ==
            labels.labels[static_cast<std::size_t>(v)]);
  }
}

TEST_CASE("gen_named produces the advertised shapes") {
  Graph complete = gen_named(NamedGraph::Complete, 4);
  CHECK(complete.edge_count() == 6);

  Graph ring = gen_named(NamedGraph::Ring, 10);
  CHECK(ring.edge_count() == 10);
  for (NodeId u = 0; u < 10; ++u) CHECK(ring.degree(u) == 2);

  Graph wheel = gen_named(NamedGraph::Wheel, 10);
  CHECK(wheel.edge_count() == 20);
  for (NodeId u = 0; u < 10; ++u) CHECK(wheel.degree(u) == 4);
  CHECK(wheel.has_edge(0, 2));
  CHECK(wheel.has_edge(9, 1));

  Graph path = gen_named(NamedGraph::Path, 4);
  CHECK(path.edge_count() == 3);
  CHECK(gen_named(NamedGraph::Empty, 3).edge_count() == 0);

  for (auto kind : {NamedGraph::Ring, NamedGraph::Wheel, NamedGraph::Complete,
                    NamedGraph::Empty, NamedGraph::Path})
    check_graph_invariants(gen_named(kind, 9));
}

TEST_CASE("gen_named rejects sizes below the family minimum") {
  CHECK_THROWS_AS(gen_named(NamedGraph::Ring, 2), ArgumentError);
  CHECK_THROWS_AS(gen_named(NamedGraph::Wheel, 2), ArgumentError);
  CHECK_THROWS_AS(gen_named(NamedGraph::Complete, 0), ArgumentError);
}

TEST_CASE("named_graph_from_string maps all names") {
  CHECK(named_graph_from_string("ring") == NamedGraph::Ring);
  CHECK(named_graph_from_string("wheel") == NamedGraph::Wheel);
  CHECK(named_graph_from_string("complete") == NamedGraph::Complete);
  CHECK(named_graph_from_string("empty") == NamedGraph::Empty);
  CHECK(named_graph_from_string("path") == NamedGraph::Path);
  CHECK_THROWS_AS(named_graph_from_string("torus"), ArgumentError);
}

TEST_CASE("gen_erdos_renyi hits the target mean degree") {
  double total_degree = 0.0;
  int total_nodes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_erdos_renyi(1000, 10.0, seed);
    check_graph_invariants(g);
    total_degree += 2.0 * static_cast<double>(g.edge_count());
    total_nodes += g.node_count();
  }
  const double mean = total_degree / total_nodes;
  // Binomial(999, 10/999) mean 10; twenty graphs keep the sample mean
  // well inside +-0.5.
  CHECK(mean > 9.5);
  CHECK(mean < 10.5);
}

TEST_CASE("gen_erdos_renyi is deterministic per seed") {
  Graph a = gen_erdos_renyi(200, 6.0, 42);
  Graph b = gen_erdos_renyi(200, 6.0, 42);
  Graph c = gen_erdos_renyi(200, 6.0, 43);
  CHECK(a.edge_list() == b.edge_list());
  CHECK(a.edge_list() != c.edge_list());
}

TEST_CASE("gen_erdos_renyi covers the forced-edge corner and bad inputs") {
  Graph g = gen_erdos_renyi(2, 1.0, 0);
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 0.0, 0), ArgumentError);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 10.0, 0), ArgumentError);  // p > 1
  CHECK_THROWS_AS(gen_erdos_renyi(1, 1.0, 0), ArgumentError);
}

TEST_CASE("gen_sbm with extreme rates builds disjoint cliques") {
  Graph g = gen_sbm(6, 2, 1.0, 0.0, 99);
  CHECK(g.edge_count() == 6);  // two triangles
  CHECK(connected_components(g).count == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(3, 5));
  CHECK_FALSE(g.has_edge(2, 3));
}

TEST_CASE("gen_sbm validates probabilities") {
  CHECK_THROWS_AS(gen_sbm(10, 2, 0.2, 0.2, 0), ArgumentError);  // no contrast
  CHECK_THROWS_AS(gen_sbm(10, 2, 1.5, 0.1, 0), ArgumentError);
  CHECK_THROWS_AS(gen_sbm(10, 1, 0.5, 0.1, 0), ArgumentError);
  CHECK_THROWS_AS(gen_sbm(5, 6, 0.5, 0.1, 0), ArgumentError);
}

TEST_CASE("gen_sbm is deterministic per seed") {
  Graph a = gen_sbm(120, 4, 0.3, 0.02, 5);
  Graph b = gen_sbm(120, 4, 0.3, 0.02, 5);
  CHECK(a.edge_list() == b.edge_list());
  check_graph_invariants(a);
}

TEST_CASE("sbm_rates_for_mean_degree keeps the expected degree on target") {
  for (NodeId n : {512, 1024}) {
    SbmRates rates = sbm_rates_for_mean_degree(n, 10, 10.0, 0.1);
    CHECK(rates.p_in > rates.p_out);
    double total_degree = 0.0;
    int total_nodes = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Graph g = gen_sbm(n, 10, rates.p_in, rates.p_out, seed);
      total_degree += 2.0 * static_cast<double>(g.edge_count());
      total_nodes += g.node_count();
    }
    const double mean = total_degree / total_nodes;
    CHECK(mean > 9.0);
    CHECK(mean < 11.0);
  }
}

TEST_CASE("sbm_rates_for_mean_degree caps intra-block density") {
  // 10 blocks of 6-7 nodes cannot host 9 intra-block neighbors per node;
  // the cap reroutes the excess outward instead of saturating p_in.
  SbmRates small = sbm_rates_for_mean_degree(64, 10, 10.0, 0.1);
  CHECK(small.p_in <= 1.0);
  CHECK(small.p_in > small.p_out);
  // Expected degree must survive the rerouting.
  const double block = 64.0 / 10.0;
  const double expected = small.p_in * (block - 1.0) + small.p_out * (64.0 - block);
  CHECK(expected == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("sbm_rates_for_mean_degree validates its inputs") {
  CHECK_THROWS_AS(sbm_rates_for_mean_degree(100, 1, 10.0, 0.1), ArgumentError);
  CHECK_THROWS_AS(sbm_rates_for_mean_degree(5, 10, 10.0, 0.1), ArgumentError);
  CHECK_THROWS_AS(sbm_rates_for_mean_degree(100, 10, 10.0, -0.1), ArgumentError);
  CHECK_THROWS_AS(sbm_rates_for_mean_degree(100, 10, 10.0, 1.1), ArgumentError);
  // Demanding more inter-block degree than there are outside nodes.
  CHECK_THROWS_AS(sbm_rates_for_mean_degree(12, 2, 11.5, 1.0), ArgumentError);
}

TEST_CASE("rewire_degree_preserving keeps the degree multiset") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(30, 0.2, rng);
    Graph r = rewire_degree_preserving(g, 3, trial);
    check_graph_invariants(r);
    CHECK(sorted_degrees(r) == sorted_degrees(g));
    CHECK(r.edge_count() == g.edge_count());
  }
}

TEST_CASE("rewire_degree_preserving leaves a triangle untouched") {
  Graph tri = gen_named(NamedGraph::Complete, 3);
  Graph r = rewire_degree_preserving(tri, 10, 7);
  CHECK(r.edge_list() == tri.edge_list());
}

TEST_CASE("rewire_degree_preserving actually shuffles a ring") {
  Graph ring = gen_named(NamedGraph::Ring, 100);
  int changed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph r = rewire_degree_preserving(ring, 10, seed);
    if (r.edge_list() != ring.edge_list()) ++changed;
  }
  CHECK(changed == 100);
}

TEST_CASE("rewire_degree_preserving is deterministic per seed") {
  Graph g = gen_erdos_renyi(60, 5.0, 3);
  CHECK(rewire_degree_preserving(g, 5, 11).edge_list() ==
        rewire_degree_preserving(g, 5, 11).edge_list());
  CHECK_THROWS_AS(rewire_degree_preserving(g, 0, 11), ArgumentError);
}
