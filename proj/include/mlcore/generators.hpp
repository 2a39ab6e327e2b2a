#pragma once

// Erdos-Renyi instances of the three graph kinds, deterministic per seed.

#include <cstdint>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/random.hpp"

namespace mlcore {

namespace detail {

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("edge probability must lie in [0, 1]");
}

inline std::vector<Edge> gnp_edges(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) edges.emplace_back(u, v);
  return edges;
}

}  // namespace detail

inline MultilayerGraph random_multilayer(std::size_t n, std::size_t layers, double p, std::uint64_t seed) {
  detail::check_probability(p);
  if (layers == 0) throw ContractViolation("need at least one layer");
  Rng rng(seed);
  std::vector<std::vector<Edge>> per_layer;
  for (std::size_t l = 0; l < layers; ++l) per_layer.push_back(detail::gnp_edges(n, p, rng));
  return MultilayerGraph::from_edge_lists(n, per_layer);
}

inline TemporalGraph random_temporal(std::size_t n, std::size_t timestamps, double p, std::uint64_t seed) {
  detail::check_probability(p);
  if (timestamps == 0) throw ContractViolation("need at least one timestamp");
  Rng rng(seed);
  std::vector<std::vector<Edge>> snaps;
  for (std::size_t t = 0; t < timestamps; ++t) snaps.push_back(detail::gnp_edges(n, p, rng));
  return TemporalGraph::from_edge_lists(n, snaps);
}

// Each pair is an edge with probability p; its sign is a fair coin.
inline SignedGraph random_signed(std::size_t n, double p, std::uint64_t seed) {
  detail::check_probability(p);
  Rng rng(seed);
  std::vector<SignedEdge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) edges.push_back({u, v, bernoulli(rng, 0.5) ? 1 : -1});
  return SignedGraph::from_edges(n, std::move(edges));
}

}  // namespace mlcore
