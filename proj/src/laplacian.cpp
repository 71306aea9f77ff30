#include "netlsd/laplacian.hpp"

#include <cmath>
#include <vector>

namespace netlsd {

NormalizedLaplacian build_laplacian(const Graph& g) {
  const NodeId n = g.node_count();
  NormalizedLaplacian lap;
  lap.n = n;
  lap.components = connected_components(g);
  lap.sqrt_degrees.resize(n);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * g.edge_count() + n));
  for (NodeId i = 0; i < n; ++i) {
    const double d = static_cast<double>(g.degree(i));
    lap.sqrt_degrees[i] = std::sqrt(d);
    if (d > 0.0) {
      triplets.emplace_back(i, i, 1.0);
      lap.trace += 1.0;
      lap.trace_sq += 1.0;
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    const double du = static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) {
      const double w = -1.0 / std::sqrt(du * static_cast<double>(g.degree(v)));
      triplets.emplace_back(u, v, w);
      lap.trace_sq += w * w;
    }
  }

  lap.matrix.resize(n, n);
  lap.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lap.matrix.makeCompressed();
  return lap;
}

}  // namespace netlsd
