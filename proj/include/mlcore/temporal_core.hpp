#pragma once

// Span-cores of temporal graphs.
//
// An edge exists over a span [ts, te] iff it is present at every timestamp of
// the span, so the graph of [ts, te] is the intersection of the graph of
// [ts, te - 1] with the snapshot at te. Span-cores shrink when the span grows
// and when k grows, which lets a sweep over te reuse the previous
// intersection and stop as soon as it runs out of edges.

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/parallel.hpp"
#include "mlcore/peeling.hpp"

namespace mlcore {

struct Span {
  Timestamp ts = 0;
  Timestamp te = 0;

  std::size_t length() const noexcept { return static_cast<std::size_t>(te - ts + 1); }
  bool contains(const Span& o) const noexcept { return ts <= o.ts && o.te <= te; }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct SpanCore {
  std::uint32_t k = 0;
  Span span;
  VertexSet vertices;

  friend bool operator==(const SpanCore&, const SpanCore&) = default;
};

struct SpanOptions {
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
};

// Sorted by (ts, te, k).
inline void sort_span_cores(std::vector<SpanCore>& cores) {
  std::sort(cores.begin(), cores.end(), [](const SpanCore& a, const SpanCore& b) {
    return std::tie(a.span.ts, a.span.te, a.k) < std::tie(b.span.ts, b.span.te, b.k);
  });
}

namespace detail {

// Appends (k, span) for k = 1..k* from the core indexing of one span graph.
inline void emit_span_cores(const CoreIndexing& idx, Span span, std::vector<SpanCore>& out) {
  if (idx.k_star == 0) return;
  std::vector<std::vector<VertexId>> by_core(idx.k_star + 1);
  for (VertexId u = 0; u < idx.core_number.size(); ++u)
    if (idx.core_number[u] > 0) by_core[idx.core_number[u]].push_back(u);
  std::vector<SpanCore> chain;
  std::vector<VertexId> acc;
  for (std::uint32_t k = idx.k_star; k >= 1; --k) {
    acc.insert(acc.end(), by_core[k].begin(), by_core[k].end());
    std::vector<VertexId> sorted = acc;
    std::sort(sorted.begin(), sorted.end());
    chain.push_back({k, span, VertexSet::from_sorted(std::move(sorted))});
  }
  out.insert(out.end(), std::make_move_iterator(chain.rbegin()), std::make_move_iterator(chain.rend()));
}

inline void enforce_span_cap(std::size_t produced, std::size_t cap) {
  if (produced > cap) throw CapExceeded("span-core count exceeds cap of " + std::to_string(cap));
}

}  // namespace detail

// All non-empty (k, span) cores with k >= 1. Each start time is an
// independent sweep over end times; sweeps run in parallel.
inline std::vector<SpanCore> span_cores_all(const TemporalGraph& g, const SpanOptions& opt = {}) {
  const std::size_t T = g.timestamp_count();
  std::vector<std::vector<SpanCore>> per_start(T);
  parallel_for(T, opt.threads, [&](std::size_t i, unsigned) {
    const Timestamp ts = g.t_min() + static_cast<Timestamp>(i);
    auto& out = per_start[i];
    Adjacency acc = g.snapshot(ts);
    for (Timestamp te = ts; te <= g.t_max(); ++te) {
      if (te > ts) acc = intersect(acc, g.snapshot(te));
      if (acc.edge_count() == 0) break;
      detail::emit_span_cores(core_decomposition(acc), {ts, te}, out);
      detail::enforce_span_cap(out.size(), opt.cap);
    }
  });
  std::vector<SpanCore> all;
  for (auto& part : per_start) {
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    detail::enforce_span_cap(all.size(), opt.cap);
  }
  sort_span_cores(all);
  return all;
}

// Reference decomposition: every span's intersection graph is rebuilt from
// the snapshots and decomposed on its own.
inline std::vector<SpanCore> span_cores_naive(const TemporalGraph& g, const SpanOptions& opt = {}) {
  std::vector<SpanCore> all;
  if (g.empty_domain()) return all;
  for (Timestamp ts = g.t_min(); ts <= g.t_max(); ++ts)
    for (Timestamp te = ts; te <= g.t_max(); ++te) {
      detail::emit_span_cores(core_decomposition(intersection_graph(g, ts, te)), {ts, te}, all);
      detail::enforce_span_cap(all.size(), opt.cap);
    }
  sort_span_cores(all);
  return all;
}

// Span-cores not dominated by another span-core with k' >= k and a span
// containing theirs. Quadratic; the reference for maximal_span_cores.
inline std::vector<SpanCore> filter_maximal_spans(const std::vector<SpanCore>& cores) {
  std::vector<SpanCore> out;
  for (const auto& c : cores) {
    bool dominated = false;
    for (const auto& o : cores)
      if ((o.k != c.k || o.span != c.span) && o.k >= c.k && o.span.contains(c.span)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(c);
  }
  sort_span_cores(out);
  return out;
}

// Maximal span-cores without materializing the decomposition.
//
// With kmax(ts, te) the highest order of a non-empty core of [ts, te] (0 when
// the span graph is edgeless), (k, [ts, te]) is maximal iff k = kmax(ts, te) >= 1
// and both one-step extensions have a strictly smaller kmax. Start times are
// visited in descending order: row ts + 1 proposes its local maxima along te,
// and row ts confirms or rejects them on the left extension.
inline std::vector<SpanCore> maximal_span_cores(const TemporalGraph& g, const SpanOptions& opt = {}) {
  std::vector<SpanCore> out;
  if (g.empty_domain()) return out;
  const std::size_t T = g.timestamp_count();
  auto at = [&](Timestamp t) { return static_cast<std::size_t>(t - g.t_min()); };

  std::vector<SpanCore> pending;  // candidates from the previous row

  for (Timestamp ts = g.t_max();; --ts) {
    std::vector<std::uint32_t> row(T, 0);
    std::vector<SpanCore> candidates;
    Adjacency acc = g.snapshot(ts);
    CoreIndexing prev;
    bool have_prev = false;
    Timestamp prev_te = ts;
    for (Timestamp te = ts; te <= g.t_max(); ++te) {
      if (te > ts) acc = intersect(acc, g.snapshot(te));
      CoreIndexing idx = core_decomposition(acc);
      row[at(te)] = idx.k_star;
      if (have_prev && prev.k_star > idx.k_star)
        candidates.push_back({prev.k_star, {ts, prev_te}, prev.core(prev.k_star)});
      if (idx.k_star == 0) {
        have_prev = false;
        break;
      }
      prev = std::move(idx);
      prev_te = te;
      have_prev = true;
    }
    if (have_prev) candidates.push_back({prev.k_star, {ts, prev_te}, prev.core(prev.k_star)});

    for (auto& c : pending)
      if (row[at(c.span.te)] < c.k) out.push_back(std::move(c));
    detail::enforce_span_cap(out.size(), opt.cap);
    pending = std::move(candidates);
    if (ts == g.t_min()) break;
  }
  for (auto& c : pending) out.push_back(std::move(c));
  detail::enforce_span_cap(out.size(), opt.cap);
  sort_span_cores(out);
  return out;
}

struct SpanStats {
  std::map<std::size_t, std::size_t> histogram;           // span length -> count
  std::map<std::uint32_t, std::size_t> max_span_by_order;  // k -> longest span
  std::size_t total = 0;
};

inline SpanStats span_statistics(const std::vector<SpanCore>& maximal) {
  SpanStats s;
  for (const auto& c : maximal) {
    const auto len = c.span.length();
    ++s.histogram[len];
    auto& best = s.max_span_by_order[c.k];
    best = std::max(best, len);
    ++s.total;
  }
  return s;
}

}  // namespace mlcore
