#pragma once

// Multilayer core decomposition over the lattice of coreness vectors.
//
// decompose_all walks the lattice breadth-first by the l1-norm of the vector.
// A vector is tried only when every parent (k - e_l) has a non-empty core, and
// it is peeled inside the intersection of those parent cores, starting from
// the per-layer degrees already known for the smallest parent. Only the
// previous level is kept in memory.
//
// maximal_cores never builds the full decomposition: it fixes the first
// |L|-1 components depth-first and, for each such prefix, only finds the top
// of the chain along the last layer. A prefix top is maximal iff no prefix
// one step above it reaches the same height.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/parallel.hpp"
#include "mlcore/peeling.hpp"

namespace mlcore {

struct MultilayerCore {
  CorenessVector vector;
  VertexSet vertices;

  friend bool operator==(const MultilayerCore&, const MultilayerCore&) = default;
};

struct DecomposeOptions {
  std::size_t cap = 10'000'000;  // maximum number of cores returned
  unsigned threads = 1;
};

inline std::uint64_t vector_level(const CorenessVector& k) {
  std::uint64_t s = 0;
  for (auto x : k) s += x;
  return s;
}

// Level-major (l1-norm), then lexicographic.
inline bool level_major_less(const CorenessVector& a, const CorenessVector& b) {
  const auto la = vector_level(a), lb = vector_level(b);
  if (la != lb) return la < lb;
  return a < b;
}

// k <= k' componentwise.
inline bool dominated_by(const CorenessVector& k, const CorenessVector& other) {
  for (std::size_t l = 0; l < k.size(); ++l)
    if (k[l] > other[l]) return false;
  return true;
}

inline void sort_level_major(std::vector<MultilayerCore>& cores) {
  std::sort(cores.begin(), cores.end(),
            [](const MultilayerCore& a, const MultilayerCore& b) { return level_major_less(a.vector, b.vector); });
}

namespace detail {

inline void enforce_cap(std::size_t produced, std::size_t cap) {
  if (produced > cap)
    throw CapExceeded("core count exceeds cap of " + std::to_string(cap) +
                      " (raise --cap or use ml-maximal)");
}

inline std::set<CorenessVector> children_of(const std::vector<CorenessVector>& level) {
  std::set<CorenessVector> out;
  for (const auto& k : level)
    for (std::size_t l = 0; l < k.size(); ++l) {
      auto c = k;
      ++c[l];
      out.insert(std::move(c));
    }
  return out;
}

}  // namespace detail

// Every coreness vector with a non-empty core, in level-major order.
inline std::vector<MultilayerCore> decompose_all(const MultilayerGraph& g, const DecomposeOptions& opt = {}) {
  const std::size_t layers = g.layer_count();
  const unsigned threads = std::max(opt.threads, 1u);
  std::vector<MultilayerPeeler> peelers;
  for (unsigned w = 0; w < threads; ++w) peelers.emplace_back(g);

  std::vector<MultilayerCore> result;
  std::vector<CorenessVector> level_vectors{CorenessVector(layers, 0)};
  std::vector<PeeledCore> level_cores{peelers[0].whole_graph()};
  if (level_cores[0].vertices.empty()) return result;

  while (!level_vectors.empty()) {
    for (std::size_t i = 0; i < level_vectors.size(); ++i)
      result.push_back({level_vectors[i], level_cores[i].vertices});
    detail::enforce_cap(result.size(), opt.cap);

    std::map<CorenessVector, std::size_t> index;
    for (std::size_t i = 0; i < level_vectors.size(); ++i) index.emplace(level_vectors[i], i);

    struct Job {
      CorenessVector vector;
      std::vector<const PeeledCore*> parents;
      std::size_t base = 0;
    };
    std::vector<Job> jobs;
    for (auto& child : detail::children_of(level_vectors)) {
      Job job{child, {}, 0};
      bool complete = true;
      for (std::size_t l = 0; l < layers && complete; ++l) {
        if (child[l] == 0) continue;
        auto parent = child;
        --parent[l];
        auto it = index.find(parent);
        if (it == index.end())
          complete = false;
        else
          job.parents.push_back(&level_cores[it->second]);
      }
      if (!complete) continue;
      for (std::size_t j = 1; j < job.parents.size(); ++j)
        if (job.parents[j]->vertices.size() < job.parents[job.base]->vertices.size()) job.base = j;
      jobs.push_back(std::move(job));
    }

    std::vector<PeeledCore> computed(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i, unsigned w) {
      computed[i] = peelers[w].peel_from_parents(jobs[i].vector, jobs[i].parents, jobs[i].base);
    });

    std::vector<CorenessVector> next_vectors;
    std::vector<PeeledCore> next_cores;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (computed[i].vertices.empty()) continue;
      next_vectors.push_back(std::move(jobs[i].vector));
      next_cores.push_back(std::move(computed[i]));
    }
    level_vectors = std::move(next_vectors);
    level_cores = std::move(next_cores);
  }
  return result;
}

// Reference decomposition: every candidate vector is peeled from the whole
// vertex set. Candidates are the children of the previous level's non-empty
// vectors.
inline std::vector<MultilayerCore> decompose_naive(const MultilayerGraph& g, const DecomposeOptions& opt = {}) {
  const std::size_t layers = g.layer_count();
  const VertexSet all = VertexSet::all(g.vertex_count());
  MultilayerPeeler peeler(g);
  std::vector<MultilayerCore> result;
  if (all.empty()) return result;

  std::vector<CorenessVector> level{CorenessVector(layers, 0)};
  while (!level.empty()) {
    std::vector<CorenessVector> nonempty;
    for (const auto& k : level) {
      auto core = peeler.peel(k, all).vertices;
      if (core.empty()) continue;
      result.push_back({k, std::move(core)});
      nonempty.push_back(k);
    }
    detail::enforce_cap(result.size(), opt.cap);
    auto next = detail::children_of(nonempty);
    level.assign(next.begin(), next.end());
  }
  return result;
}

// Cores whose vector is not strictly dominated by another core's vector.
// Quadratic; meant for complete decompositions of modest size.
inline std::vector<MultilayerCore> filter_maximal(const std::vector<MultilayerCore>& cores) {
  std::vector<MultilayerCore> out;
  for (const auto& c : cores) {
    bool dominated = false;
    for (const auto& o : cores)
      if (o.vector != c.vector && dominated_by(c.vector, o.vector)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(c);
  }
  sort_level_major(out);
  return out;
}

// Keeps, for each distinct vertex set, only the vectors that are maximal
// among the vectors producing that set. Input order is preserved.
inline std::vector<MultilayerCore> collapse_distinct_sets(const std::vector<MultilayerCore>& cores) {
  std::map<VertexSet, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cores.size(); ++i) groups[cores[i].vertices].push_back(i);
  std::vector<std::uint8_t> keep(cores.size(), 0);
  for (const auto& [set, members] : groups)
    for (std::size_t i : members) {
      bool dominated = false;
      for (std::size_t j : members)
        if (j != i && dominated_by(cores[i].vector, cores[j].vector)) {
          dominated = true;
          break;
        }
      keep[i] = !dominated;
    }
  std::vector<MultilayerCore> out;
  for (std::size_t i = 0; i < cores.size(); ++i)
    if (keep[i]) out.push_back(cores[i]);
  return out;
}

namespace detail {

class MaximalSearch {
 public:
  MaximalSearch(const MultilayerGraph& g, std::size_t cap)
      : g_(g), layers_(g.layer_count()), last_(g.layer_count() - 1), cap_(cap), peeler_(g) {}

  std::vector<MultilayerCore> run() {
    if (g_.vertex_count() == 0) return {};
    CorenessVector k(layers_, 0);
    descend(k, peeler_.whole_graph(), 0);

    std::vector<MultilayerCore> out;
    const VertexSet all = VertexSet::all(g_.vertex_count());
    for (const auto& [prefix, top] : tops_) {
      bool maximal = true;
      for (std::size_t l = 0; l < last_ && maximal; ++l) {
        auto up = prefix;
        ++up[l];
        auto it = tops_.find(up);
        if (it != tops_.end() && it->second >= top) maximal = false;
      }
      if (!maximal) continue;
      CorenessVector vec = prefix;
      vec.push_back(top);
      auto core = peeler_.peel(vec, all).vertices;
      out.push_back({std::move(vec), std::move(core)});
      enforce_cap(out.size(), cap_);
    }
    sort_level_major(out);
    return out;
  }

 private:
  // `core` is the non-empty core of k, where only components < j are set.
  void descend(CorenessVector& k, PeeledCore core, std::size_t j) {
    // Single-layer core index of the current core bounds the reachable value.
    const std::uint32_t bound = core_decomposition(g_.layer(j), core.vertices).k_star;
    std::uint32_t t = 0;
    PeeledCore current = std::move(core);
    const PeeledCore* parents[1];
    while (true) {
      if (j < last_) {
        descend(k, current, j + 1);
        k[j] = t;
      }
      if (t == bound) break;
      k[j] = t + 1;
      parents[0] = &current;
      PeeledCore next = peeler_.peel_from_parents(k, parents, 0);
      if (next.vertices.empty()) break;
      current = std::move(next);
      ++t;
    }
    if (j == last_) {
      CorenessVector prefix(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(last_));
      tops_[std::move(prefix)] = t;
      enforce_cap(tops_.size(), cap_);
    }
    k[j] = 0;
  }

  const MultilayerGraph& g_;
  std::size_t layers_;
  std::size_t last_;
  std::size_t cap_;
  MultilayerPeeler peeler_;
  std::map<CorenessVector, std::uint32_t> tops_;
};

}  // namespace detail

// Maximal multilayer cores, computed without the full decomposition.
inline std::vector<MultilayerCore> maximal_cores(const MultilayerGraph& g, const DecomposeOptions& opt = {}) {
  return detail::MaximalSearch(g, opt.cap).run();
}

}  // namespace mlcore
