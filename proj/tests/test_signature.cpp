#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "netlsd/errors.hpp"
#include "netlsd/generators.hpp"
#include "netlsd/graph.hpp"
#include "netlsd/laplacian.hpp"
#include "netlsd/signature.hpp"
#include "netlsd/spectrum.hpp"
#include "netlsd/time_grid.hpp"

using namespace netlsd;

namespace {

Graph random_graph(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<EdgePair> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

// Reference heat trace through a dense matrix exponential, independent of
// any eigenvalue code: tr(exp(-tL)).
double matrix_exponential_heat_trace(const NormalizedLaplacian& L, double t) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(L.matrix);
  return (-t * dense).exp().trace();
}

Graph relabeled(const Graph& g, std::mt19937_64& rng) {
  std::vector<NodeId> perm(static_cast<std::size_t>(g.node_count()));
  for (NodeId i = 0; i < g.node_count(); ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<EdgePair> edges;
  for (auto [u, v] : g.edge_list())
    edges.emplace_back(perm[static_cast<std::size_t>(u)],
                       perm[static_cast<std::size_t>(v)]);
  return Graph::from_edges(g.node_count(), std::move(edges));
}

}  // namespace

TEST_CASE("make_time_grid spaces exponents evenly") {
  TimeGrid g = make_time_grid(3, 0.01, 100.0, GridSpacing::Logarithmic);
  REQUIRE(g.values.size() == 3);
  CHECK(g.values[0] == 0.01);
  CHECK(g.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.values[2] == 100.0);
}

TEST_CASE("make_time_grid covers the degenerate and default shapes") {
  TimeGrid single = make_time_grid(1, 1.0, 2.0, GridSpacing::Linear);
  REQUIRE(single.values.size() == 1);
  CHECK(single.values[0] == 1.0);

  TimeGrid heat = default_heat_grid();
  REQUIRE(heat.values.size() == 250);
  CHECK(heat.values.front() == 0.01);
  CHECK(heat.values.back() == 100.0);
  CHECK(heat.spacing == GridSpacing::Logarithmic);
  CHECK(std::is_sorted(heat.values.begin(), heat.values.end()));

  TimeGrid wave = default_wave_grid();
  REQUIRE(wave.values.size() == 250);
  CHECK(wave.values.front() == 0.0);
  for (int i = 0; i < 250; ++i)
    CHECK(wave.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(2.0 * std::numbers::pi * i / 250.0).epsilon(1e-15));
  CHECK(wave.values.back() < 2.0 * std::numbers::pi);
}

TEST_CASE("make_time_grid validates bounds") {
  CHECK_THROWS_AS(make_time_grid(0, 0.01, 1.0, GridSpacing::Linear), ArgumentError);
  CHECK_THROWS_AS(make_time_grid(5, 2.0, 1.0, GridSpacing::Linear), ArgumentError);
  CHECK_THROWS_AS(make_time_grid(5, 0.0, 1.0, GridSpacing::Logarithmic), ArgumentError);
  CHECK_THROWS_AS(make_time_grid(5, -1.0, 1.0, GridSpacing::Logarithmic), ArgumentError);
}

TEST_CASE("grid spacing names round-trip") {
  CHECK(grid_spacing_from_string("log") == GridSpacing::Logarithmic);
  CHECK(grid_spacing_from_string("lin") == GridSpacing::Linear);
  CHECK(to_string(GridSpacing::Logarithmic) == "log");
  CHECK(to_string(GridSpacing::Linear) == "lin");
  CHECK_THROWS_AS(grid_spacing_from_string("cubic"), ArgumentError);
}

TEST_CASE("heat_trace matches the matrix exponential oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(2, 24);
  std::uniform_real_distribution<double> density(0.0, 0.5);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(size(rng), density(rng), rng);
    NormalizedLaplacian L = build_laplacian(g);
    Spectrum s = full_spectrum(L);
    for (double t : {0.0, 0.05, 0.7, 3.0, 25.0}) {
      const double expected = matrix_exponential_heat_trace(L, t);
      CHECK(heat_trace(s, t) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("heat_trace reproduces the K2 closed form") {
  Spectrum s = full_spectrum(build_laplacian(gen_named(NamedGraph::Complete, 2)));
  CHECK(heat_trace(s, 1.0) == doctest::Approx(1.0 + std::exp(-2.0)).epsilon(1e-12));
  CHECK(heat_trace(s, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("heat_trace limits: n at t=0, component count at large t") {
  // ring(12) plus one isolated node: 13 nodes, 2 components.
  std::vector<EdgePair> edges;
  for (NodeId u = 0; u < 12; ++u) edges.emplace_back(u, static_cast<NodeId>((u + 1) % 12));
  Spectrum s = full_spectrum(build_laplacian(Graph::from_edges(13, std::move(edges))));
  CHECK(heat_trace(s, 1e-6) == doctest::Approx(13.0).epsilon(1e-3));
  CHECK(heat_trace(s, 1e6) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("wave_trace sums cosines of scaled eigenvalues") {
  Spectrum k2 = full_spectrum(build_laplacian(gen_named(NamedGraph::Complete, 2)));
  CHECK(wave_trace(k2, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-12));

  Spectrum k4 = full_spectrum(build_laplacian(gen_named(NamedGraph::Complete, 4)));
  CHECK(wave_trace(k4, std::numbers::pi / 2.0) == doctest::Approx(-0.5).epsilon(1e-9));

  // Edgeless graph: cos(0) summed.
  Spectrum e7 = full_spectrum(build_laplacian(gen_named(NamedGraph::Empty, 7)));
  CHECK(wave_trace(e7, 1.234) == doctest::Approx(7.0));

  // |w_t| <= n always.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(15, 0.3, rng);
    Spectrum s = full_spectrum(build_laplacian(g));
    for (double t = 0.0; t < 6.28; t += 0.37)
      CHECK(std::abs(wave_trace(s, t)) <= g.node_count() + 1e-12);
  }
}

TEST_CASE("taylor_heat_trace expands around t=0") {
  NormalizedLaplacian k2 = build_laplacian(gen_named(NamedGraph::Complete, 2));
  CHECK(taylor_heat_trace(k2, 0.1) == doctest::Approx(1.82).epsilon(1e-12));
  CHECK(taylor_heat_trace(k2, 0.0) == doctest::Approx(2.0));

  NormalizedLaplacian e4 = build_laplacian(gen_named(NamedGraph::Empty, 4));
  for (double t : {0.0, 0.5, 2.0}) CHECK(taylor_heat_trace(e4, t) == doctest::Approx(4.0));
}

TEST_CASE("taylor error at t=0.1 is small and size-independent") {
  double errors[2];
  int idx = 0;
  for (NodeId n : {100, 1000}) {
    Graph g = gen_erdos_renyi(n, 10.0, 77);
    NormalizedLaplacian L = build_laplacian(g);
    Spectrum s = full_spectrum(L);
    const double exact = heat_trace(s, 0.1);
    errors[idx++] = std::abs(taylor_heat_trace(L, 0.1) - exact) / exact;
  }
  CHECK(errors[0] < 1e-2);
  CHECK(errors[1] < 1e-2);
  const double ratio = errors[0] / errors[1];
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}

TEST_CASE("normalization_trace reference values") {
  CHECK(normalization_trace(Normalization::Empty, KernelKind::Heat, 7, 3.5) == 7.0);
  CHECK(normalization_trace(Normalization::Empty, KernelKind::Wave, 3, 0.2) == 3.0);
  CHECK(normalization_trace(Normalization::Complete, KernelKind::Heat, 2, 1.0) ==
        doctest::Approx(1.0 + std::exp(-2.0)).epsilon(1e-12));
  CHECK(normalization_trace(Normalization::Complete, KernelKind::Wave, 2,
                            std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(normalization_trace(Normalization::None, KernelKind::Heat, 9, 2.0) == 1.0);
  // Degenerate single node.
  CHECK(normalization_trace(Normalization::Complete, KernelKind::Heat, 1, 5.0) == 1.0);

  // Complete-graph form must equal the real trace of K_n for every n.
  for (NodeId n : {2, 3, 5, 17}) {
    Spectrum s = full_spectrum(build_laplacian(gen_named(NamedGraph::Complete, n)));
    for (double t : {0.3, 1.0, 4.0}) {
      CHECK(normalization_trace(Normalization::Complete, KernelKind::Heat, n, t) ==
            doctest::Approx(heat_trace(s, t)).epsilon(1e-9));
      CHECK(normalization_trace(Normalization::Complete, KernelKind::Wave, n, t) ==
            doctest::Approx(wave_trace(s, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("kernel and normalization names round-trip") {
  CHECK(kernel_from_string("heat") == KernelKind::Heat);
  CHECK(kernel_from_string("wave") == KernelKind::Wave);
  CHECK(normalization_from_string("none") == Normalization::None);
  CHECK(normalization_from_string("empty") == Normalization::Empty);
  CHECK(normalization_from_string("complete") == Normalization::Complete);
  CHECK(to_string(KernelKind::Wave) == "wave");
  CHECK(to_string(Normalization::Empty) == "empty");
  CHECK_THROWS_AS(kernel_from_string("cold"), ArgumentError);
  CHECK_THROWS_AS(normalization_from_string("half"), ArgumentError);
}

TEST_CASE("compute_signature self-normalizations are identically one") {
  TimeGrid grid = make_time_grid(40, 0.01, 100.0, GridSpacing::Logarithmic);
  Signature empty = compute_signature(gen_named(NamedGraph::Empty, 6), KernelKind::Heat,
                                      grid, Normalization::Empty);
  CHECK((empty.values - 1.0).abs().maxCoeff() <= 1e-12);

  Signature complete = compute_signature(gen_named(NamedGraph::Complete, 9),
                                         KernelKind::Heat, grid, Normalization::Complete);
  CHECK((complete.values - 1.0).abs().maxCoeff() <= 1e-9);
}

TEST_CASE("compute_signature heat/none is positive, decreasing, and anchored at n") {
  std::mt19937_64 rng(13);
  TimeGrid grid = make_time_grid(60, 1e-4, 1e4, GridSpacing::Logarithmic);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(20, 0.25, rng);
    if (g.edge_count() == 0) continue;
    Signature s = compute_signature(g, KernelKind::Heat, grid, Normalization::None);
    CHECK(s.n == g.node_count());
    CHECK(s.values[0] <= g.node_count());
    CHECK(s.values[0] == doctest::Approx(g.node_count()).epsilon(1e-2));
    CHECK(s.values.minCoeff() > 0.0);
    // Non-increasing rather than strictly decreasing: at the large-t end the
    // trace flattens onto the component count once every e^{-t*lambda} term
    // underflows.
    for (Eigen::Index i = 1; i < s.values.size(); ++i)
      CHECK(s.values[i] <= s.values[i - 1]);
    CHECK(s.values[s.values.size() - 1] < s.values[0]);
  }
}

TEST_CASE("compute_signature is permutation invariant") {
  std::mt19937_64 rng(29);
  TimeGrid grid = default_heat_grid();
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = random_graph(40, 0.15, rng);
    Signature a = compute_signature(g, KernelKind::Heat, grid, Normalization::Empty);
    Signature b = compute_signature(relabeled(g, rng), KernelKind::Heat, grid,
                                    Normalization::Empty);
    CHECK((a.values - b.values).abs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("strategies: approx upgrades to full when k covers the spectrum") {
  Graph g = gen_erdos_renyi(64, 6.0, 5);
  TimeGrid grid = make_time_grid(30, 0.01, 100.0, GridSpacing::Logarithmic);
  Signature full = compute_signature(g, KernelKind::Heat, grid, Normalization::None,
                                     Strategy::full());
  Signature approx = compute_signature(g, KernelKind::Heat, grid, Normalization::None,
                                       Strategy::approx(200));
  CHECK((full.values - approx.values).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("strategies: auto routes by node count") {
  Graph small = gen_erdos_renyi(50, 5.0, 2);
  TimeGrid grid = make_time_grid(20, 0.01, 100.0, GridSpacing::Logarithmic);
  ComputeOptions opts;
  opts.dense_threshold = 40;  // force the approximate branch
  Signature routed = compute_signature(small, KernelKind::Heat, grid,
                                       Normalization::None, Strategy::automatic(), opts);
  Signature full = compute_signature(small, KernelKind::Heat, grid, Normalization::None,
                                     Strategy::full());
  // 150+150 exceeds n=50, so the approximation upgrades to full anyway and
  // the two must agree; the point is that auto did not throw SizeError.
  CHECK((routed.values - full.values).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("strategies: two-sided approximation tracks the full heat trace") {
  Graph g = gen_erdos_renyi(700, 8.0, 21);
  TimeGrid grid = default_heat_grid();
  Signature full = compute_signature(g, KernelKind::Heat, grid, Normalization::None,
                                     Strategy::full());
  Signature approx = compute_signature(g, KernelKind::Heat, grid, Normalization::None,
                                       Strategy::approx(100, 100));
  double worst_rel = 0.0;
  for (Eigen::Index i = 0; i < full.values.size(); ++i)
    worst_rel = std::max(worst_rel,
                         std::abs(approx.values[i] - full.values[i]) / full.values[i]);
  CHECK(worst_rel < 0.05);
}

TEST_CASE("strategies: taylor matches exact at small t and rejects wave") {
  Graph g = gen_erdos_renyi(100, 10.0, 8);
  TimeGrid small_t = make_time_grid(10, 0.01, 0.1, GridSpacing::Logarithmic);
  Signature taylor = compute_signature(g, KernelKind::Heat, small_t, Normalization::None,
                                       Strategy::taylor());
  Signature exact = compute_signature(g, KernelKind::Heat, small_t, Normalization::None,
                                      Strategy::full());
  for (Eigen::Index i = 0; i < taylor.values.size(); ++i)
    CHECK(std::abs(taylor.values[i] - exact.values[i]) / exact.values[i] < 1e-2);

  CHECK_THROWS_AS(compute_signature(g, KernelKind::Wave, default_wave_grid(),
                                    Normalization::None, Strategy::taylor()),
                  ArgumentError);
}

TEST_CASE("compute_signature validates wave grids") {
  Graph g = gen_named(NamedGraph::Ring, 8);
  TimeGrid out_of_range = make_time_grid(5, 1.0, 7.0, GridSpacing::Linear);
  CHECK_THROWS_AS(compute_signature(g, KernelKind::Wave, out_of_range,
                                    Normalization::None),
                  ArgumentError);
  TimeGrid fine = default_wave_grid(16);
  Signature s = compute_signature(g, KernelKind::Wave, fine, Normalization::Empty);
  CHECK(s.values.size() == 16);
  CHECK(s.values[0] == doctest::Approx(1.0));  // t=0: w=n, normalized by n
}

TEST_CASE("ring and wheel separate at interior scales only") {
  TimeGrid grid = default_heat_grid();
  Signature ring = compute_signature(gen_named(NamedGraph::Ring, 10), KernelKind::Heat,
                                     grid, Normalization::None);
  Signature wheel = compute_signature(gen_named(NamedGraph::Wheel, 10), KernelKind::Heat,
                                      grid, Normalization::None);
  Eigen::ArrayXd gap = (ring.values - wheel.values).abs();
  Eigen::Index argmax = 0;
  gap.maxCoeff(&argmax);
  CHECK(argmax > 0);
  CHECK(argmax < gap.size() - 1);
  CHECK(gap[0] < 0.1 * gap[argmax]);
  CHECK(gap[gap.size() - 1] < 0.1 * gap[argmax]);
}

TEST_CASE("single-node and empty graphs produce flat signatures") {
  TimeGrid grid = make_time_grid(12, 0.01, 100.0, GridSpacing::Logarithmic);
  Graph one = gen_named(NamedGraph::Empty, 1);
  Signature s = compute_signature(one, KernelKind::Heat, grid, Normalization::Complete);
  CHECK((s.values - 1.0).abs().maxCoeff() == 0.0);

  Signature unnorm = compute_signature(gen_named(NamedGraph::Empty, 5), KernelKind::Heat,
                                       grid, Normalization::None);
  CHECK((unnorm.values - 5.0).abs().maxCoeff() == 0.0);
}
