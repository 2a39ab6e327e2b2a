#pragma once

// Applications of the multilayer core decomposition: densest subgraph with a
// density/support trade-off, search-space pruning for frequent cross-graph
// quasi-cliques, and multilayer community search.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/multilayer_core.hpp"
#include "mlcore/parallel.hpp"
#include "mlcore/peeling.hpp"

namespace mlcore {

// Best value of min_{l in S} score[l] * |S|^beta over non-empty layer sets S,
// with the layers that achieve it (ascending layer index).
struct TradeOff {
  double value = 0.0;
  std::vector<std::size_t> support;
};

// Only prefixes of the layers sorted by descending score can be optimal, so
// this is a sort plus a scan. Ties keep the shorter prefix.
inline TradeOff best_layer_trade_off(std::span<const double> score, double beta) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  TradeOff best;
  std::size_t best_len = 0;
  for (std::size_t p = 1; p <= order.size(); ++p) {
    const double v = score[order[p - 1]] * std::pow(static_cast<double>(p), beta);
    if (best_len == 0 || v > best.value) {
      best.value = v;
      best_len = p;
    }
  }
  best.support.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_len));
  std::sort(best.support.begin(), best.support.end());
  return best;
}

namespace detail {

inline void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ContractViolation("beta must be a finite non-negative number");
}

// ceil() that ignores floating noise just above an integer (0.7 * 10 = 7.000000000000001).
inline std::uint32_t ceil_threshold(double x) {
  return static_cast<std::uint32_t>(std::max(0.0, std::ceil(x - 1e-9)));
}

inline std::vector<std::uint8_t> membership(std::size_t n, const VertexSet& s) {
  std::vector<std::uint8_t> in(n, 0);
  for (VertexId u : s) in[u] = 1;
  return in;
}

}  // namespace detail

// Multilayer density of S: best trade-off over layer sets of
// min |E_l(S)| / |S| times |support|^beta.
inline TradeOff multilayer_density(const MultilayerGraph& g, const VertexSet& s, double beta) {
  if (s.empty()) throw ContractViolation("multilayer_density: S must be non-empty");
  detail::check_beta(beta);
  auto in = detail::membership(g.vertex_count(), s);
  std::vector<double> density(g.layer_count(), 0.0);
  for (std::size_t l = 0; l < g.layer_count(); ++l) {
    std::size_t arcs = 0;
    for (VertexId u : s)
      for (VertexId v : g.layer(l).neighbors(u)) arcs += in[v];
    density[l] = static_cast<double>(arcs / 2) / static_cast<double>(s.size());
  }
  return best_layer_trade_off(density, beta);
}

struct DensestResult {
  VertexSet vertices;
  CorenessVector vector;  // the core the answer was taken from
  double delta = 0.0;
  double beta = 0.0;
  std::vector<std::size_t> support_layers;
  double guarantee = 0.0;  // 1 / (2 |L|^beta)
};

// Scores every core of a complete decomposition and returns the densest one.
// Ties go to the smaller vertex set, then to the earlier core in `cores`.
inline DensestResult densest_from_cores(const MultilayerGraph& g, const std::vector<MultilayerCore>& cores,
                                        double beta, unsigned threads = 1) {
  detail::check_beta(beta);
  std::size_t edges = 0;
  for (const auto& layer : g.layers()) edges += layer.edge_count();
  if (edges == 0 || cores.empty()) throw NoSolution("no dense subgraph: the graph has no edges");

  std::vector<TradeOff> scores(cores.size());
  parallel_for(cores.size(), threads,
               [&](std::size_t i, unsigned) { scores[i] = multilayer_density(g, cores[i].vertices, beta); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < cores.size(); ++i) {
    if (scores[i].value > scores[best].value ||
        (scores[i].value == scores[best].value && cores[i].vertices.size() < cores[best].vertices.size()))
      best = i;
  }
  DensestResult r;
  r.vertices = cores[best].vertices;
  r.vector = cores[best].vector;
  r.delta = scores[best].value;
  r.beta = beta;
  r.support_layers = scores[best].support;
  r.guarantee = 1.0 / (2.0 * std::pow(static_cast<double>(g.layer_count()), beta));
  return r;
}

// Densest core; within a 1 / (2 |L|^beta) factor of the best vertex set.
inline DensestResult densest_subgraph(const MultilayerGraph& g, double beta, const DecomposeOptions& opt = {}) {
  detail::check_beta(beta);
  std::size_t edges = 0;
  for (const auto& layer : g.layers()) edges += layer.edge_count();
  if (edges == 0) throw NoSolution("no dense subgraph: the graph has no edges");
  return densest_from_cores(g, decompose_all(g, opt), beta, opt.threads);
}

struct QuasiCliqueParams {
  double gamma = 1.0;         // (0, 1]
  std::uint32_t min_size = 2;  // >= 2
  double min_support = 1.0;   // (0, 1]

  void validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ContractViolation("gamma must lie in (0, 1]");
    if (min_size < 2) throw ContractViolation("min size must be at least 2");
    if (!(min_support > 0.0 && min_support <= 1.0)) throw ContractViolation("min support must lie in (0, 1]");
  }

  // Number of layers a quasi-clique must live in.
  std::size_t required_layers(std::size_t layer_count) const {
    return std::max<std::size_t>(1, detail::ceil_threshold(min_support * static_cast<double>(layer_count)));
  }

  // Minimum internal degree of a gamma-quasi-clique on `size` vertices.
  std::uint32_t degree_threshold(std::size_t size) const {
    return detail::ceil_threshold(gamma * static_cast<double>(size - 1));
  }
};

// Union of every core whose vector has at least ceil(min_sup |L|) components
// >= ceil(gamma (m - 1)) and that has at least m vertices. Every frequent
// cross-graph quasi-clique with >= m vertices lies inside it.
//
// Cores are nested, so only the minimal qualifying vectors (threshold on
// exactly the required number of layers, zero elsewhere) need peeling.
inline VertexSet quasi_clique_prune(const MultilayerGraph& g, const QuasiCliqueParams& params) {
  params.validate();
  const std::size_t layers = g.layer_count();
  const std::size_t r = params.required_layers(layers);
  const std::uint32_t t = params.degree_threshold(params.min_size);
  const VertexSet all = VertexSet::all(g.vertex_count());
  MultilayerPeeler peeler(g);

  VertexSet kept;
  std::vector<std::uint8_t> pick(layers, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), 1);
  do {
    CorenessVector k(layers, 0);
    for (std::size_t l = 0; l < layers; ++l)
      if (pick[l]) k[l] = t;
    auto core = peeler.peel(k, all).vertices;
    if (core.size() >= params.min_size) kept = unite(kept, core);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return kept;
}

// The same union computed literally from a complete decomposition.
inline VertexSet quasi_clique_prune_from_cores(const std::vector<MultilayerCore>& cores,
                                               const QuasiCliqueParams& params, std::size_t layer_count) {
  params.validate();
  const std::size_t r = params.required_layers(layer_count);
  const std::uint32_t t = params.degree_threshold(params.min_size);
  VertexSet kept;
  for (const auto& c : cores) {
    const auto hits = std::count_if(c.vector.begin(), c.vector.end(), [t](std::uint32_t k) { return k >= t; });
    if (static_cast<std::size_t>(hits) >= r && c.vertices.size() >= params.min_size) kept = unite(kept, c.vertices);
  }
  return kept;
}

inline constexpr std::size_t kQuasiCliqueEnumerationLimit = 25;

// Exhaustive search over subsets of `candidates`. Exponential; intended as a
// check on quasi_clique_prune and for tiny candidate sets.
inline std::vector<VertexSet> quasi_clique_enumerate(const MultilayerGraph& g, const QuasiCliqueParams& params,
                                                     const VertexSet& candidates) {
  params.validate();
  const std::size_t c = candidates.size();
  if (c > kQuasiCliqueEnumerationLimit)
    throw CapExceeded("quasi-clique enumeration is limited to " + std::to_string(kQuasiCliqueEnumerationLimit) +
                      " candidates (got " + std::to_string(c) + "); run the pruning step first");
  const std::size_t layers = g.layer_count();
  const std::size_t r = params.required_layers(layers);

  // adj[l][i]: bitmask of candidate positions adjacent to candidate i on layer l.
  std::vector<std::vector<std::uint32_t>> adj(layers, std::vector<std::uint32_t>(c, 0));
  for (std::size_t l = 0; l < layers; ++l)
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j && g.layer(l).has_edge(candidates[i], candidates[j])) adj[l][i] |= 1u << j;

  std::vector<VertexSet> found;
  const std::uint32_t full = c == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << c) - 1);
  for (std::uint64_t m = 1; m <= full; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < params.min_size) continue;
    const auto need = static_cast<int>(params.degree_threshold(size));
    std::size_t good_layers = 0;
    for (std::size_t l = 0; l < layers && good_layers < r; ++l) {
      bool ok = true;
      for (std::uint32_t rest = mask; rest && ok; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        ok = std::popcount(adj[l][static_cast<std::size_t>(i)] & mask) >= need;
      }
      if (ok) ++good_layers;
    }
    if (good_layers < r) continue;
    std::vector<VertexId> ids;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) ids.push_back(candidates[static_cast<std::size_t>(std::countr_zero(rest))]);
    found.push_back(VertexSet::from_sorted(std::move(ids)));
  }
  std::sort(found.begin(), found.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return found;
}

// Community-search score of S: best trade-off over layer sets of the minimum
// (over those layers) of the minimum induced degree, times |support|^beta.
inline TradeOff min_degree_score(const MultilayerGraph& g, const VertexSet& s, double beta) {
  if (s.empty()) throw ContractViolation("min_degree_score: S must be non-empty");
  detail::check_beta(beta);
  auto in = detail::membership(g.vertex_count(), s);
  std::vector<double> min_deg(g.layer_count(), 0.0);
  for (std::size_t l = 0; l < g.layer_count(); ++l) {
    std::size_t lowest = SIZE_MAX;
    for (VertexId u : s) {
      std::size_t d = 0;
      for (VertexId v : g.layer(l).neighbors(u)) d += in[v];
      lowest = std::min(lowest, d);
    }
    min_deg[l] = static_cast<double>(lowest);
  }
  return best_layer_trade_off(min_deg, beta);
}

struct CommunityResult {
  VertexSet vertices;
  CorenessVector vector;  // core the community was cut from
  double score = 0.0;
  std::vector<std::size_t> support_layers;
};

// Vertices of `within` reachable from `seed` over the union of all layers.
inline VertexSet flattened_component(const MultilayerGraph& g, const VertexSet& within, VertexId seed) {
  auto in = detail::membership(g.vertex_count(), within);
  std::vector<VertexId> stack{seed}, reached{seed};
  in[seed] = 0;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (const auto& layer : g.layers())
      for (VertexId v : layer.neighbors(u))
        if (in[v]) {
          in[v] = 0;
          stack.push_back(v);
          reached.push_back(v);
        }
  }
  return VertexSet(std::move(reached));
}

// For every core containing the query, takes the connected component (in the
// flattened graph) that holds the query and scores it with min_degree_score.
// Returns the best component; ties go to the smaller one, then to the earlier
// core in `cores`.
inline CommunityResult community_from_cores(const MultilayerGraph& g, const std::vector<MultilayerCore>& cores,
                                            const VertexSet& query, double beta, unsigned threads = 1) {
  if (query.empty()) throw ContractViolation("community search needs at least one query vertex");
  for (VertexId q : query)
    if (q >= g.vertex_count()) throw ContractViolation("query vertex out of range");
  detail::check_beta(beta);

  std::vector<std::optional<CommunityResult>> found(cores.size());
  parallel_for(cores.size(), threads, [&](std::size_t i, unsigned) {
    if (!query.is_subset_of(cores[i].vertices)) return;
    auto component = flattened_component(g, cores[i].vertices, query[0]);
    if (!query.is_subset_of(component)) return;
    auto score = min_degree_score(g, component, beta);
    found[i] = CommunityResult{std::move(component), cores[i].vector, score.value, std::move(score.support)};
  });

  std::optional<CommunityResult> best;
  for (auto& f : found) {
    if (!f) continue;
    if (!best || f->score > best->score ||
        (f->score == best->score && f->vertices.size() < best->vertices.size()))
      best = std::move(f);
  }
  if (!best) throw NoSolution("no core contains all query vertices in one connected component");
  return *best;
}

inline CommunityResult community_search(const MultilayerGraph& g, const VertexSet& query, double beta,
                                        const DecomposeOptions& opt = {}) {
  if (query.empty()) throw ContractViolation("community search needs at least one query vertex");
  detail::check_beta(beta);
  return community_from_cores(g, decompose_all(g, opt), query, beta, opt.threads);
}

}  // namespace mlcore
