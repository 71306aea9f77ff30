#pragma once

#include <cstdint>
#include <string>

#include "netlsd/graph.hpp"

namespace netlsd {

enum class NamedGraph { Ring, Wheel, Complete, Empty, Path };

NamedGraph named_graph_from_string(const std::string& name);

/// Deterministic member of the named family.
/// `Wheel` is the ring-plus-chords circulant where node i connects to
/// i±1 and i±2 modulo n (not the hub-and-spokes wheel).
Graph gen_named(NamedGraph kind, NodeId n);

/// G(n, p) with p = mean_degree / (n - 1). Deterministic per seed.
Graph gen_erdos_renyi(NodeId n, double mean_degree, std::uint64_t seed);

struct SbmRates {
  double p_in;
  double p_out;
};

/// Derives block-model rates so the expected degree equals `mean_degree`,
/// with `mixing_ratio` of it carried by inter-block edges. The intra-block
/// degree is capped at half the block's internal pair capacity (a block
/// denser than that reads as a clique rather than a community); any excess
/// moves to inter-block edges, keeping the expected degree.
SbmRates sbm_rates_for_mean_degree(NodeId n, int blocks, double mean_degree,
                                   double mixing_ratio);

/// Stochastic block model: nodes are assigned to `blocks` contiguous groups
/// as evenly as possible; edge (u,v) present with probability p_in when the
/// endpoints share a block and p_out otherwise. Deterministic per seed.
Graph gen_sbm(NodeId n, int blocks, double p_in, double p_out, std::uint64_t seed);

/// Degree-preserving randomization by double-edge swaps. One sweep performs
/// m attempted swaps; proposals creating self-loops or duplicate edges are
/// rejected. Deterministic per seed.
Graph rewire_degree_preserving(const Graph& g, int sweeps, std::uint64_t seed);

}  // namespace netlsd
