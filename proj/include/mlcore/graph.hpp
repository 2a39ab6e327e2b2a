#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mlcore/errors.hpp"

namespace mlcore {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Sorted, duplicate-free set of internal vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}
  explicit VertexSet(std::vector<VertexId> ids) : members_(std::move(ids)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  // Caller promises `ids` is already sorted and unique.
  static VertexSet from_sorted(std::vector<VertexId> ids) {
    VertexSet s;
    s.members_ = std::move(ids);
    return s;
  }

  static VertexSet all(std::size_t n) {
    std::vector<VertexId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VertexId>(i);
    return from_sorted(std::move(ids));
  }

  bool contains(VertexId u) const { return std::binary_search(members_.begin(), members_.end(), u); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  VertexId operator[](std::size_t i) const { return members_[i]; }
  const std::vector<VertexId>& ids() const noexcept { return members_; }

  bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  friend VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    std::vector<VertexId> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  friend VertexSet unite(const VertexSet& a, const VertexSet& b) {
    std::vector<VertexId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> members_;
};

// Bijection between external labels and dense ids 0..n-1, in first-seen order.
class LabelMap {
 public:
  VertexId intern(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, static_cast<VertexId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  VertexId id(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownVertex(label);
    return it->second;
  }

  bool contains(const std::string& label) const { return index_.contains(label); }
  const std::string& label(VertexId u) const { return labels_[u]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  // Plain 0..n-1 labels, used by generators and tests.
  static LabelMap numbered(std::size_t n) {
    LabelMap m;
    for (std::size_t i = 0; i < n; ++i) m.intern(std::to_string(i));
    return m;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
};

// Undirected simple graph in CSR form with sorted neighbor lists.
class Adjacency {
 public:
  Adjacency() : offsets_(1, 0) {}

  // Duplicates and reversed duplicates collapse. Self-loops are dropped; the
  // parsers reject them before getting here.
  static Adjacency from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    Adjacency a;
    a.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++a.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) a.offsets_[i + 1] += a.offsets_[i];
    a.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) a.targets_.push_back(v);
    return a;
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(VertexId u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Each undirected edge once, as (u, v) with u < v, in sorted order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // Edges present in both graphs. Both must span the same vertex range.
  friend Adjacency intersect(const Adjacency& a, const Adjacency& b) {
    Adjacency out;
    const std::size_t n = a.vertex_count();
    out.offsets_.assign(n + 1, 0);
    for (VertexId u = 0; u < n; ++u) {
      auto na = a.neighbors(u);
      auto nb = b.neighbors(u);
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                            std::back_inserter(out.targets_));
      out.offsets_[u + 1] = out.targets_.size();
    }
    return out;
  }

  friend bool operator==(const Adjacency&, const Adjacency&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
};

// Anything that answers neighbors(u) with a sorted range of ids.
template <typename V>
concept GraphView = requires(const V& g, VertexId u) {
  { g.neighbors(u) } -> std::convertible_to<std::span<const VertexId>>;
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
};

// |{v in S : (u, v) is an edge of the view}|.
template <GraphView V>
std::size_t induced_degree(const V& view, const VertexSet& s, VertexId u) {
  if (!s.contains(u)) throw ContractViolation("induced_degree: vertex is not in S");
  std::size_t d = 0;
  auto nb = view.neighbors(u);
  auto it = s.begin();
  for (VertexId v : nb) {
    it = std::lower_bound(it, s.end(), v);
    if (it == s.end()) break;
    if (*it == v) ++d;
  }
  return d;
}

// One vertex set, one independent edge set per layer.
class MultilayerGraph {
 public:
  MultilayerGraph(LabelMap labels, std::vector<std::string> layer_names,
                  std::vector<Adjacency> layers)
      : labels_(std::move(labels)), layer_names_(std::move(layer_names)), layers_(std::move(layers)) {
    if (layers_.empty()) throw ContractViolation("multilayer graph needs at least one layer");
    if (layers_.size() != layer_names_.size())
      throw ContractViolation("layer name count does not match layer count");
    for (const auto& l : layers_)
      if (l.vertex_count() != labels_.size())
        throw ContractViolation("layer vertex count does not match label count");
  }

  // Convenience for tests and generators: layers given as edge lists on 0..n-1.
  static MultilayerGraph from_edge_lists(std::size_t n, const std::vector<std::vector<Edge>>& layers) {
    std::vector<std::string> names;
    std::vector<Adjacency> adj;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      names.push_back(std::to_string(l + 1));
      adj.push_back(Adjacency::from_edges(n, layers[l]));
    }
    return MultilayerGraph(LabelMap::numbered(n), std::move(names), std::move(adj));
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  const Adjacency& layer(std::size_t l) const { return layers_[l]; }
  const std::vector<Adjacency>& layers() const noexcept { return layers_; }
  const std::vector<std::string>& layer_names() const noexcept { return layer_names_; }
  const LabelMap& labels() const noexcept { return labels_; }

  std::vector<std::size_t> edges_per_layer() const {
    std::vector<std::size_t> m;
    for (const auto& l : layers_) m.push_back(l.edge_count());
    return m;
  }

 private:
  LabelMap labels_;
  std::vector<std::string> layer_names_;
  std::vector<Adjacency> layers_;
};

using Timestamp = std::int64_t;

// Snapshots over a contiguous integer domain [t_min, t_max]; gaps are empty snapshots.
class TemporalGraph {
 public:
  TemporalGraph() = default;
  TemporalGraph(LabelMap labels, Timestamp t_min, std::vector<Adjacency> snapshots)
      : labels_(std::move(labels)), t_min_(t_min), snapshots_(std::move(snapshots)) {
    for (const auto& s : snapshots_)
      if (s.vertex_count() != labels_.size())
        throw ContractViolation("snapshot vertex count does not match label count");
  }

  // Snapshot i holds the edges at time t_min + i.
  static TemporalGraph from_edge_lists(std::size_t n, const std::vector<std::vector<Edge>>& snaps,
                                       Timestamp t_min = 0) {
    std::vector<Adjacency> adj;
    for (const auto& s : snaps) adj.push_back(Adjacency::from_edges(n, s));
    return TemporalGraph(LabelMap::numbered(n), t_min, std::move(adj));
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  bool empty_domain() const noexcept { return snapshots_.empty(); }
  std::size_t timestamp_count() const noexcept { return snapshots_.size(); }
  Timestamp t_min() const noexcept { return t_min_; }
  Timestamp t_max() const noexcept { return t_min_ + static_cast<Timestamp>(snapshots_.size()) - 1; }
  bool in_domain(Timestamp t) const noexcept { return !snapshots_.empty() && t >= t_min() && t <= t_max(); }
  const Adjacency& snapshot(Timestamp t) const { return snapshots_.at(static_cast<std::size_t>(t - t_min_)); }
  const LabelMap& labels() const noexcept { return labels_; }

 private:
  LabelMap labels_;
  Timestamp t_min_ = 0;
  std::vector<Adjacency> snapshots_;
};

// Edges present at every timestamp of [ts, te].
inline Adjacency intersection_graph(const TemporalGraph& g, Timestamp ts, Timestamp te) {
  if (ts > te || !g.in_domain(ts) || !g.in_domain(te))
    throw ContractViolation("interval is not inside the temporal domain");
  Adjacency acc = g.snapshot(ts);
  for (Timestamp t = ts + 1; t <= te; ++t) acc = intersect(acc, g.snapshot(t));
  return acc;
}

struct SignedEdge {
  VertexId u;
  VertexId v;
  int sign;  // +1 or -1
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

// Undirected graph with +1/-1 edge labels; at most one edge per pair.
class SignedGraph {
 public:
  struct Neighbor {
    VertexId v;
    int sign;
  };

  SignedGraph() : offsets_(1, 0) {}

  // Edges must not repeat a pair; orientation is normalized to u < v.
  SignedGraph(LabelMap labels, std::vector<SignedEdge> edges) : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    for (auto& e : edges) {
      if (e.u == e.v) throw ContractViolation("signed graph: self-loop");
      if (e.sign != 1 && e.sign != -1) throw ContractViolation("signed graph: sign must be +1 or -1");
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n) throw ContractViolation("signed graph: vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
        throw ContractViolation("signed graph: repeated vertex pair");
    edges_ = std::move(edges);
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    nbrs_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      nbrs_[fill[e.u]++] = {e.v, e.sign};
      nbrs_[fill[e.v]++] = {e.u, e.sign};
    }
    for (std::size_t u = 0; u < n; ++u)
      std::sort(nbrs_.begin() + offsets_[u], nbrs_.begin() + offsets_[u + 1],
                [](const Neighbor& a, const Neighbor& b) { return a.v < b.v; });
  }

  static SignedGraph from_edges(std::size_t n, std::vector<SignedEdge> edges) {
    return SignedGraph(LabelMap::numbered(n), std::move(edges));
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<SignedEdge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(VertexId u) const {
    return {nbrs_.data() + offsets_[u], nbrs_.data() + offsets_[u + 1]};
  }
  const LabelMap& labels() const noexcept { return labels_; }

  std::size_t count_sign(int sign) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [sign](const SignedEdge& e) { return e.sign == sign; }));
  }

 private:
  LabelMap labels_;
  std::vector<SignedEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> nbrs_;
};

}  // namespace mlcore
