#pragma once

// Core decomposition of a single view and constrained peeling of multilayer
// and temporal graphs. Everything else in the library is built from these.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"

namespace mlcore {

using CorenessVector = std::vector<std::uint32_t>;

struct CoreIndexing {
  std::vector<std::uint32_t> core_number;  // c(u); 0 for vertices outside the restriction
  std::uint32_t k_star = 0;

  // {u | c(u) >= k}. Only meaningful for k >= 1 when a restriction was used.
  VertexSet core(std::uint32_t k) const {
    std::vector<VertexId> ids;
    for (VertexId u = 0; u < core_number.size(); ++u)
      if (core_number[u] >= k) ids.push_back(u);
    return VertexSet::from_sorted(std::move(ids));
  }
};

namespace detail {

// Bucket-sort peeling (Batagelj-Zaversnik). `alive` selects the vertices that
// take part; an empty span means all of them.
template <GraphView V>
CoreIndexing bucket_core_decomposition(const V& view, std::span<const std::uint8_t> alive) {
  const std::size_t n = view.vertex_count();
  CoreIndexing out;
  out.core_number.assign(n, 0);
  if (n == 0) return out;

  auto is_alive = [&](VertexId u) { return alive.empty() || alive[u] != 0; };

  std::vector<std::uint32_t> deg(n, 0);
  std::uint32_t max_deg = 0;
  std::size_t live = 0;
  for (VertexId u = 0; u < n; ++u) {
    if (!is_alive(u)) continue;
    ++live;
    std::uint32_t d = 0;
    for (VertexId v : view.neighbors(u))
      if (is_alive(v)) ++d;
    deg[u] = d;
    max_deg = std::max(max_deg, d);
  }

  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (VertexId u = 0; u < n; ++u)
    if (is_alive(u)) ++bin[deg[u] + 1];
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];

  std::vector<VertexId> order(live);
  std::vector<std::size_t> pos(n, 0);
  {
    std::vector<std::size_t> fill(bin.begin(), bin.end() - 1);
    for (VertexId u = 0; u < n; ++u) {
      if (!is_alive(u)) continue;
      pos[u] = fill[deg[u]]++;
      order[pos[u]] = u;
    }
  }

  // bin[d] = first slot of degree-d bucket.
  for (std::size_t i = 0; i < live; ++i) {
    VertexId u = order[i];
    out.core_number[u] = deg[u];
    out.k_star = std::max(out.k_star, deg[u]);
    for (VertexId w : view.neighbors(u)) {
      if (!is_alive(w) || deg[w] <= deg[u]) continue;
      // Move w to the front of its bucket, then shrink the bucket.
      std::uint32_t dw = deg[w];
      std::size_t pw = pos[w];
      std::size_t ps = bin[dw];
      VertexId s = order[ps];
      if (s != w) {
        order[pw] = s;
        pos[s] = pw;
        order[ps] = w;
        pos[w] = ps;
      }
      ++bin[dw];
      --deg[w];
    }
  }
  return out;
}

}  // namespace detail

// Core numbers of every vertex of a single view in O(|V| + |E|).
template <GraphView V>
CoreIndexing core_decomposition(const V& view) {
  return detail::bucket_core_decomposition(view, {});
}

// Core numbers of the subgraph induced by `within`.
template <GraphView V>
CoreIndexing core_decomposition(const V& view, const VertexSet& within) {
  std::vector<std::uint8_t> alive(view.vertex_count(), 0);
  for (VertexId u : within) alive[u] = 1;
  if (alive.empty()) return CoreIndexing{};
  return detail::bucket_core_decomposition(view, alive);
}

// Maximal S within `start` where every vertex keeps >= k neighbors of one view.
template <GraphView V>
VertexSet peel_to_threshold(const V& view, std::uint32_t k, const VertexSet& start) {
  const std::size_t n = view.vertex_count();
  std::vector<std::uint8_t> member(n, 0);
  std::vector<std::uint32_t> deg(n, 0);
  for (VertexId u : start) member[u] = 1;
  std::vector<VertexId> queue;
  for (VertexId u : start) {
    std::uint32_t d = 0;
    for (VertexId v : view.neighbors(u)) d += member[v];
    deg[u] = d;
  }
  for (VertexId u : start)
    if (deg[u] < k) {
      member[u] = 0;
      queue.push_back(u);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (VertexId w : view.neighbors(queue[head])) {
      if (!member[w]) continue;
      if (--deg[w] < k) {
        member[w] = 0;
        queue.push_back(w);
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId u : start)
    if (member[u]) out.push_back(u);
  return VertexSet::from_sorted(std::move(out));
}

// A multilayer core together with each member's degree inside it, per layer.
// degrees[i * L + l] belongs to vertices[i].
struct PeeledCore {
  VertexSet vertices;
  std::vector<std::uint32_t> degrees;
};

// Reusable scratch space for multilayer peeling. One instance per thread; the
// buffers are sized once for the graph and cleaned after every call.
class MultilayerPeeler {
 public:
  explicit MultilayerPeeler(const MultilayerGraph& g)
      : g_(&g),
        layers_(g.layer_count()),
        member_(g.vertex_count(), 0),
        mark_(g.vertex_count(), 0),
        deg_(g.vertex_count() * g.layer_count(), 0) {}

  // Unique maximal S within `start` whose members have >= k[l] neighbors in S
  // on every layer l.
  PeeledCore peel(const CorenessVector& k, const VertexSet& start) {
    check_vector(k);
    for (VertexId u : start) member_[u] = 1;
    for (VertexId u : start)
      for (std::size_t l = 0; l < layers_; ++l) {
        std::uint32_t d = 0;
        for (VertexId v : g_->layer(l).neighbors(u)) d += member_[v];
        deg_[u * layers_ + l] = d;
      }
    queue_.clear();
    enqueue_violators(k, start.ids());
    return finish(k, start.ids());
  }

  // Peels the intersection of `parents` for vector k, reusing the per-layer
  // degrees stored with parents[base]. Every parent must contain the k-core.
  PeeledCore peel_from_parents(const CorenessVector& k, std::span<const PeeledCore* const> parents,
                               std::size_t base) {
    check_vector(k);
    const PeeledCore& p = *parents[base];
    const auto& ids = p.vertices.ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      member_[ids[i]] = 1;
      std::copy_n(p.degrees.begin() + static_cast<std::ptrdiff_t>(i * layers_), layers_,
                  deg_.begin() + static_cast<std::ptrdiff_t>(ids[i] * layers_));
    }
    queue_.clear();
    // Count how many other parents contain each vertex; anything short of all
    // of them is outside the intersection.
    const std::uint8_t others = static_cast<std::uint8_t>(parents.size() - 1);
    if (others > 0) {
      for (std::size_t j = 0; j < parents.size(); ++j) {
        if (j == base) continue;
        for (VertexId u : parents[j]->vertices)
          if (member_[u]) ++mark_[u];
      }
      for (VertexId u : ids) {
        if (mark_[u] != others) {
          member_[u] = 0;
          queue_.push_back(u);
        }
        mark_[u] = 0;
      }
    }
    enqueue_violators(k, ids);
    return finish(k, ids);
  }

  // Root of the lattice: V with full degrees.
  PeeledCore whole_graph() {
    PeeledCore out;
    out.vertices = VertexSet::all(g_->vertex_count());
    out.degrees.resize(g_->vertex_count() * layers_);
    for (VertexId u = 0; u < g_->vertex_count(); ++u)
      for (std::size_t l = 0; l < layers_; ++l)
        out.degrees[u * layers_ + l] = static_cast<std::uint32_t>(g_->layer(l).degree(u));
    return out;
  }

 private:
  void check_vector(const CorenessVector& k) const {
    if (k.size() != layers_) throw ContractViolation("coreness vector length differs from layer count");
  }

  void enqueue_violators(const CorenessVector& k, std::span<const VertexId> candidates) {
    for (VertexId u : candidates) {
      if (!member_[u]) continue;
      for (std::size_t l = 0; l < layers_; ++l)
        if (deg_[u * layers_ + l] < k[l]) {
          member_[u] = 0;
          queue_.push_back(u);
          break;
        }
    }
  }

  PeeledCore finish(const CorenessVector& k, std::span<const VertexId> domain) {
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId u = queue_[head];
      for (std::size_t l = 0; l < layers_; ++l)
        for (VertexId w : g_->layer(l).neighbors(u)) {
          if (!member_[w]) continue;
          if (--deg_[w * layers_ + l] < k[l]) {
            member_[w] = 0;
            queue_.push_back(w);
          }
        }
    }
    PeeledCore out;
    std::vector<VertexId> ids;
    const std::size_t kept = domain.size() - std::min(domain.size(), queue_.size());
    ids.reserve(kept);
    out.degrees.resize(kept * layers_);
    auto dst = out.degrees.begin();
    for (VertexId u : domain) {
      if (!member_[u]) continue;
      ids.push_back(u);
      dst = std::copy_n(deg_.begin() + static_cast<std::ptrdiff_t>(u * layers_), layers_, dst);
      member_[u] = 0;
    }
    out.vertices = VertexSet::from_sorted(std::move(ids));
    return out;
  }

  const MultilayerGraph* g_;
  std::size_t layers_;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> deg_;
  std::vector<VertexId> queue_;
};

// Unique maximal S within `start` with induced degree >= k[l] on every layer l.
// `start` must contain the k-core; V always does.
inline VertexSet peel_to_vector(const MultilayerGraph& g, const CorenessVector& k, const VertexSet& start) {
  MultilayerPeeler peeler(g);
  return peeler.peel(k, start).vertices;
}

// Maximal S within `start` where each member has >= k neighbors in S in the
// intersection graph of [ts, te].
inline VertexSet peel_interval(const TemporalGraph& g, std::uint32_t k, Timestamp ts, Timestamp te,
                               const VertexSet& start) {
  return peel_to_threshold(intersection_graph(g, ts, te), k, start);
}

}  // namespace mlcore
