#pragma once

// Two polarized communities in a signed graph.
//
// An assignment x in {-1, 0, +1}^n puts vertex u in the positive community,
// the negative one, or leaves it neutral. Its polarity is x'Ax / x'x, where A
// is the signed adjacency matrix: friendly edges inside communities and
// hostile edges across them count for it, everything else against it, and
// every involved vertex costs one unit of size. Maximizing polarity is
// NP-hard; the leading eigenvector of A gives two roundings with provable
// factors (n for the deterministic one, sqrt(n) for the randomized one).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/parallel.hpp"
#include "mlcore/random.hpp"

namespace mlcore {

using Assignment = std::vector<std::int8_t>;

namespace detail {

// x'Ax as an integer (each edge counted twice).
inline std::int64_t quadratic_form(const SignedGraph& g, std::span<const std::int8_t> x) {
  std::int64_t sum = 0;
  for (const auto& e : g.edges()) sum += e.sign * x[e.u] * x[e.v];
  return 2 * sum;
}

inline std::int64_t support_size(std::span<const std::int8_t> x) {
  return std::count_if(x.begin(), x.end(), [](std::int8_t v) { return v != 0; });
}

// a/b > c/d for positive denominators, without rounding.
inline bool ratio_greater(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d > c * b; }

// First nonzero entry becomes +1.
inline void canonicalize_sign(Assignment& x) {
  auto it = std::find_if(x.begin(), x.end(), [](std::int8_t v) { return v != 0; });
  if (it != x.end() && *it < 0)
    for (auto& v : x) v = static_cast<std::int8_t>(-v);
}

}  // namespace detail

inline double polarity(const SignedGraph& g, std::span<const std::int8_t> x) {
  if (x.size() != g.vertex_count()) throw ContractViolation("assignment length differs from vertex count");
  const auto nnz = detail::support_size(x);
  if (nnz == 0) throw ContractViolation("polarity of the all-zero assignment is undefined");
  return static_cast<double>(detail::quadratic_form(g, x)) / static_cast<double>(nnz);
}

enum class EigenTarget {
  largest_algebraic,  // largest eigenvalue of A; the one polarity needs
  largest_magnitude,  // largest singular value
};

struct SpectralResult {
  double lambda1 = 0.0;
  std::vector<double> v;  // unit norm; largest-|entry| component is positive
  std::size_t iterations = 0;
  double residual = 0.0;
  bool degenerate = false;  // edgeless graph: lambda1 = 0 and v is arbitrary
};

struct EigenOptions {
  double tol = 1e-9;
  std::size_t max_iter = 0;  // 0 means 10 n + 1000
  EigenTarget target = EigenTarget::largest_algebraic;
};

namespace detail {

inline void multiply(const SignedGraph& g, std::span<const double> x, std::span<double> y) {
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(u)) s += nb.sign * x[nb.v];
    y[u] = s;
  }
}

inline double norm2(std::span<const double> x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

// Eigen-decomposition of a small dense symmetric matrix (row-major, m x m) by
// cyclic Jacobi rotations. Returns eigenvalues; columns of `vecs` are vectors.
inline std::vector<double> jacobi_eigen(std::vector<double> a, std::size_t m, std::vector<double>& vecs) {
  vecs.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) vecs[i * m + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) off += a[i * m + j] * a[i * m + j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k * m + p], akq = a[k * m + q];
          a[k * m + p] = c * akp - sn * akq;
          a[k * m + q] = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p * m + k], aqk = a[q * m + k];
          a[p * m + k] = c * apk - sn * aqk;
          a[q * m + k] = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = vecs[k * m + p], vkq = vecs[k * m + q];
          vecs[k * m + p] = c * vkp - sn * vkq;
          vecs[k * m + q] = sn * vkp + c * vkq;
        }
      }
  }
  std::vector<double> eig(m);
  for (std::size_t i = 0; i < m; ++i) eig[i] = a[i * m + i];
  return eig;
}

// Largest eigenpair of direction * A by explicitly restarted Lanczos with full
// reorthogonalization: each cycle builds a Krylov basis of up to 64 vectors
// from the current estimate and restarts from the top Ritz vector. Converged
// when ||A v - lambda v|| <= tol; `max_iter` bounds the matrix-vector products.
inline SpectralResult restarted_lanczos(const SignedGraph& g, double direction, double tol, std::size_t max_iter) {
  const std::size_t n = g.vertex_count();
  const std::size_t dim = std::min<std::size_t>(n, 64);
  // Fixed pseudo-random start: an all-ones start is an exact eigenvector of
  // many symmetric instances and would stall on the wrong eigenvalue.
  Rng rng(0x5eed5eedULL);
  std::vector<double> x(n), w(n);
  for (auto& xi : x) xi = 0.5 + uniform01(rng);

  std::vector<std::vector<double>> basis;
  std::size_t products = 0;
  double residual = INFINITY;
  while (true) {
    double nx = norm2(x);
    for (auto& xi : x) xi /= nx;
    basis.assign(1, x);
    std::vector<double> h;  // projected matrix, filled as a dense dim x dim block
    std::vector<std::vector<double>> aq;
    const std::size_t cycle = std::max<std::size_t>(1, std::min(dim, max_iter - std::min(max_iter, products)));
    for (std::size_t j = 0; j < cycle; ++j) {
      multiply(g, basis[j], w);
      for (auto& v : w) v *= direction;
      ++products;
      aq.push_back(w);
      if (j + 1 == cycle) break;
      // Gram-Schmidt twice against the whole basis.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) {
          const double d = std::inner_product(q.begin(), q.end(), w.begin(), 0.0);
          for (std::size_t i = 0; i < n; ++i) w[i] -= d * q[i];
        }
      const double nw = norm2(w);
      if (nw <= 1e-10) break;  // invariant subspace
      for (auto& v : w) v /= nw;
      basis.push_back(w);
    }
    const std::size_t m = basis.size();
    h.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        h[i * m + j] = std::inner_product(basis[i].begin(), basis[i].end(), aq[j].begin(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) h[i * m + j] = h[j * m + i] = 0.5 * (h[i * m + j] + h[j * m + i]);
    std::vector<double> vecs;
    auto eig = jacobi_eigen(std::move(h), m, vecs);
    const std::size_t top = static_cast<std::size_t>(std::max_element(eig.begin(), eig.end()) - eig.begin());

    std::vector<double> ax(n, 0.0);
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double c = vecs[j * m + top];
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += c * basis[j][i];
        ax[i] += c * aq[j][i];
      }
    }
    nx = norm2(x);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] /= nx;
      ax[i] /= nx;
    }
    const double lambda = std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i] = ax[i] - lambda * x[i];
    residual = norm2(w);
    if (residual <= tol) {
      SpectralResult out;
      out.lambda1 = direction * lambda;
      out.v = std::move(x);
      out.iterations = products;
      out.residual = residual;
      return out;
    }
    if (products >= max_iter) break;
  }
  throw ConvergenceError(products, residual);
}

inline void orient(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0)
    for (auto& x : v) x = -x;
}

}  // namespace detail

inline SpectralResult leading_eigenvector(const SignedGraph& g, const EigenOptions& opt = {}) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw ContractViolation("leading_eigenvector: graph has no vertices");
  if (g.edge_count() == 0) {
    SpectralResult out;
    out.v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    out.degenerate = true;
    return out;
  }
  const std::size_t max_iter = opt.max_iter == 0 ? 10 * n + 1000 : opt.max_iter;
  SpectralResult out = detail::restarted_lanczos(g, 1.0, opt.tol, max_iter);
  if (opt.target == EigenTarget::largest_magnitude) {
    SpectralResult neg = detail::restarted_lanczos(g, -1.0, opt.tol, max_iter);
    if (std::abs(neg.lambda1) > std::abs(out.lambda1)) out = std::move(neg);
  }
  detail::orient(out.v);
  return out;
}

enum class PolarityAlgorithm { deterministic, randomized, brute_force };

inline std::string to_string(PolarityAlgorithm a) {
  switch (a) {
    case PolarityAlgorithm::deterministic: return "deterministic";
    case PolarityAlgorithm::randomized: return "randomized";
    case PolarityAlgorithm::brute_force: return "brute-force";
  }
  return "unknown";
}

struct PolarizedPartition {
  Assignment assignment;
  double polarity = 0.0;
  PolarityAlgorithm algorithm = PolarityAlgorithm::deterministic;
  double guarantee = 1.0;  // approximation factor: n, sqrt(n) or 1 (exact)

  VertexSet community(int sign) const {
    std::vector<VertexId> ids;
    for (VertexId u = 0; u < assignment.size(); ++u)
      if (assignment[u] == sign) ids.push_back(u);
    return VertexSet::from_sorted(std::move(ids));
  }
  std::size_t neutral_count() const {
    return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), std::int8_t{0}));
  }
};

namespace detail {

inline PolarizedPartition make_partition(const SignedGraph& g, Assignment x, PolarityAlgorithm algo, double guarantee) {
  canonicalize_sign(x);
  PolarizedPartition p;
  p.polarity = polarity(g, x);
  p.assignment = std::move(x);
  p.algorithm = algo;
  p.guarantee = guarantee;
  return p;
}

// Edgeless spectrum: any single edge scores 1, otherwise nothing scores.
inline PolarizedPartition degenerate_fallback(const SignedGraph& g, PolarityAlgorithm algo, double guarantee) {
  if (g.edge_count() == 0) throw NoSolution("no polarized communities: the graph has no edges");
  const auto& e = g.edges().front();
  Assignment x(g.vertex_count(), 0);
  x[e.u] = 1;
  x[e.v] = static_cast<std::int8_t>(e.sign);
  return make_partition(g, std::move(x), algo, guarantee);
}

}  // namespace detail

// Sweep rounding: vertices by decreasing |v_u|, each prefix assigned sign(v_u),
// best prefix wins (the shorter one on ties).
inline PolarizedPartition round_deterministic(const SignedGraph& g, const SpectralResult& spec) {
  const std::size_t n = g.vertex_count();
  const double guarantee = static_cast<double>(n);
  if (spec.degenerate) return detail::degenerate_fallback(g, PolarityAlgorithm::deterministic, guarantee);
  if (spec.v.size() != n) throw ContractViolation("eigenvector length differs from vertex count");

  std::vector<VertexId> order;
  for (VertexId u = 0; u < n; ++u)
    if (spec.v[u] != 0.0) order.push_back(u);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return std::abs(spec.v[a]) > std::abs(spec.v[b]); });

  Assignment x(n, 0);
  std::int64_t form = 0;
  std::int64_t best_form = 0, best_len = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const VertexId u = order[p];
    const std::int8_t s = spec.v[u] > 0 ? 1 : -1;
    std::int64_t gain = 0;
    for (const auto& nb : g.neighbors(u)) gain += nb.sign * x[nb.v];
    form += 2 * s * gain;
    x[u] = s;
    const auto len = static_cast<std::int64_t>(p + 1);
    if (best_len == 0 || detail::ratio_greater(form, len, best_form, best_len)) {
      best_form = form;
      best_len = len;
    }
  }
  if (best_len == 0) throw NoSolution("eigenvector has no nonzero entries");
  Assignment result(n, 0);
  for (std::size_t p = 0; p < static_cast<std::size_t>(best_len); ++p)
    result[order[p]] = spec.v[order[p]] > 0 ? 1 : -1;
  return detail::make_partition(g, std::move(result), PolarityAlgorithm::deterministic, guarantee);
}

struct RandomizedOptions {
  std::size_t trials = 32;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Each trial keeps vertex u with probability min(1, |v_u| sqrt(n) / max|v|),
// signed by v_u. Trial t draws from Rng(seed + t); the best trial wins, the
// lowest index on ties.
inline PolarizedPartition round_randomized(const SignedGraph& g, const SpectralResult& spec,
                                           const RandomizedOptions& opt = {}) {
  const std::size_t n = g.vertex_count();
  const double guarantee = std::sqrt(static_cast<double>(n));
  if (opt.trials == 0) throw ContractViolation("randomized rounding needs at least one trial");
  if (spec.degenerate) return detail::degenerate_fallback(g, PolarityAlgorithm::randomized, guarantee);
  if (spec.v.size() != n) throw ContractViolation("eigenvector length differs from vertex count");

  double vmax = 0.0;
  for (double x : spec.v) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) throw NoSolution("eigenvector has no nonzero entries");
  std::vector<double> keep(n);
  for (std::size_t u = 0; u < n; ++u) keep[u] = std::min(1.0, std::abs(spec.v[u]) * guarantee / vmax);

  struct Trial {
    Assignment x;
    std::int64_t form = 0, size = 0;
  };
  std::vector<Trial> trials(opt.trials);
  parallel_for(opt.trials, opt.threads, [&](std::size_t t, unsigned) {
    Rng rng(opt.seed + t);
    Assignment x(n, 0);
    for (std::size_t u = 0; u < n; ++u)
      if (bernoulli(rng, keep[u])) x[u] = spec.v[u] > 0 ? 1 : -1;
    trials[t].form = detail::quadratic_form(g, x);
    trials[t].size = detail::support_size(x);
    trials[t].x = std::move(x);
  });

  std::size_t best = opt.trials;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    if (trials[t].size == 0) continue;
    if (best == opt.trials ||
        detail::ratio_greater(trials[t].form, trials[t].size, trials[best].form, trials[best].size))
      best = t;
  }
  if (best == opt.trials) throw NoSolution("every randomized trial came out empty");
  return detail::make_partition(g, std::move(trials[best].x), PolarityAlgorithm::randomized, guarantee);
}

inline constexpr std::size_t kBruteForcePolarityLimit = 12;

// Exhaustive optimum over all 3^n assignments (first nonzero entry fixed to +1).
inline PolarizedPartition brute_force_polarity(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForcePolarityLimit)
    throw CapExceeded("brute-force polarity is limited to " + std::to_string(kBruteForcePolarityLimit) +
                      " vertices (got " + std::to_string(n) + ")");
  if (n == 0) throw NoSolution("graph has no vertices");

  Assignment x(n, 0), best;
  std::int64_t best_form = 0, best_size = 0;
  // Odometer over {0, +1, -1}^n.
  while (true) {
    std::size_t i = 0;
    while (i < n) {
      if (x[i] == 0) {
        x[i] = 1;
        break;
      }
      if (x[i] == 1) {
        x[i] = -1;
        break;
      }
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
    auto first = std::find_if(x.begin(), x.end(), [](std::int8_t v) { return v != 0; });
    if (*first < 0) continue;
    const auto form = detail::quadratic_form(g, x);
    const auto size = detail::support_size(x);
    if (best_size == 0 || detail::ratio_greater(form, size, best_form, best_size)) {
      best = x;
      best_form = form;
      best_size = size;
    }
  }
  return detail::make_partition(g, std::move(best), PolarityAlgorithm::brute_force, 1.0);
}

struct PlantedParams {
  std::size_t n = 100;
  std::size_t size1 = 15;
  std::size_t size2 = 15;
  double p_in = 0.9;
  double p_out = 0.9;
  double noise = 0.01;
  std::uint64_t seed = 0;

  void validate() const {
    if (size1 + size2 > n) throw ContractViolation("planted community sizes exceed n");
    for (double p : {p_in, p_out, noise})
      if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("probabilities must lie in [0, 1]");
  }
};

struct PlantedInstance {
  SignedGraph graph;
  Assignment truth;          // +1 / -1 on the planted communities, 0 elsewhere
  bool truth_valid = false;  // false when both communities are empty
};

// Two communities placed on a random subset of vertices: positive edges inside
// each with probability p_in, negative edges across with probability p_out.
// Every other pair gets an edge of random sign with probability `noise`.
inline PlantedInstance generate_planted(const PlantedParams& p) {
  p.validate();
  Rng rng(p.seed);
  std::vector<VertexId> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = p.n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);

  Assignment truth(p.n, 0);
  for (std::size_t i = 0; i < p.size1; ++i) truth[perm[i]] = 1;
  for (std::size_t i = p.size1; i < p.size1 + p.size2; ++i) truth[perm[i]] = -1;

  std::vector<SignedEdge> edges;
  for (VertexId u = 0; u < p.n; ++u)
    for (VertexId v = u + 1; v < p.n; ++v) {
      if (truth[u] != 0 && truth[v] != 0) {
        if (truth[u] == truth[v]) {
          if (bernoulli(rng, p.p_in)) edges.push_back({u, v, 1});
        } else if (bernoulli(rng, p.p_out)) {
          edges.push_back({u, v, -1});
        }
      } else if (bernoulli(rng, p.noise)) {
        edges.push_back({u, v, bernoulli(rng, 0.5) ? 1 : -1});
      }
    }
  PlantedInstance out{SignedGraph::from_edges(p.n, std::move(edges)), std::move(truth), p.size1 + p.size2 > 0};
  return out;
}

// |A ∩ B| / |A ∪ B| over the nonzero supports of two assignments.
inline double support_jaccard(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += (a[i] != 0 && b[i] != 0);
    uni += (a[i] != 0 || b[i] != 0);
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace mlcore
