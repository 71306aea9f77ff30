#pragma once

#include <Eigen/SparseCore>

#include "netlsd/graph.hpp"

namespace netlsd {

/// Symmetric normalized Laplacian I - D^{-1/2} A D^{-1/2} of a graph,
/// with the traces needed by the quadratic trace expansion cached.
/// Rows and columns of isolated nodes are zero.
struct NormalizedLaplacian {
  Eigen::SparseMatrix<double> matrix;
  NodeId n = 0;
  double trace = 0.0;     // equals the number of non-isolated nodes
  double trace_sq = 0.0;  // sum of squared entries
  Eigen::VectorXd sqrt_degrees;
  ComponentLabeling components;

  NodeId isolated_count() const {
    NodeId k = 0;
    for (NodeId i = 0; i < n; ++i)
      if (sqrt_degrees[i] == 0.0) ++k;
    return k;
  }
};

NormalizedLaplacian build_laplacian(const Graph& g);

}  // namespace netlsd
