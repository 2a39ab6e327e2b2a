#pragma once

// Line-delimited JSON records emitted by the command-line tool. Vertices are
// written by label, in internal id order; layers by name.

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlcore/graph.hpp"
#include "mlcore/multilayer_apps.hpp"
#include "mlcore/multilayer_core.hpp"
#include "mlcore/signed_polarity.hpp"
#include "mlcore/temporal_core.hpp"

namespace mlcore::records {

using Json = nlohmann::ordered_json;

inline Json labels_of(const LabelMap& labels, const VertexSet& s) {
  Json arr = Json::array();
  for (VertexId u : s) arr.push_back(labels.label(u));
  return arr;
}

inline Json layer_names_of(const MultilayerGraph& g, const std::vector<std::size_t>& layers) {
  Json arr = Json::array();
  for (auto l : layers) arr.push_back(g.layer_names()[l]);
  return arr;
}

inline Json core(const MultilayerGraph& g, const MultilayerCore& c, bool with_vertices) {
  Json j;
  j["vector"] = c.vector;
  j["size"] = c.vertices.size();
  if (with_vertices) j["vertices"] = labels_of(g.labels(), c.vertices);
  return j;
}

inline Json densest(const MultilayerGraph& g, const DensestResult& r) {
  Json j;
  j["delta"] = r.delta;
  j["beta"] = r.beta;
  j["support_layers"] = layer_names_of(g, r.support_layers);
  j["vertices"] = labels_of(g.labels(), r.vertices);
  j["guarantee"] = r.guarantee;
  return j;
}

inline Json quasi_clique_prune(const MultilayerGraph& g, const QuasiCliqueParams& p, const VertexSet& kept) {
  Json j;
  j["gamma"] = p.gamma;
  j["min_size"] = p.min_size;
  j["min_sup"] = p.min_support;
  j["size"] = kept.size();
  j["input_size"] = g.vertex_count();
  j["vertices"] = labels_of(g.labels(), kept);
  return j;
}

inline Json quasi_clique(const MultilayerGraph& g, const VertexSet& s) {
  Json j;
  j["quasi_clique"] = labels_of(g.labels(), s);
  j["size"] = s.size();
  return j;
}

inline Json community(const MultilayerGraph& g, const CommunityResult& r, double beta) {
  Json j;
  j["score"] = r.score;
  j["beta"] = beta;
  j["support_layers"] = layer_names_of(g, r.support_layers);
  j["vector"] = r.vector;
  j["size"] = r.vertices.size();
  j["vertices"] = labels_of(g.labels(), r.vertices);
  return j;
}

inline Json span_core(const TemporalGraph& g, const SpanCore& c) {
  Json j;
  j["k"] = c.k;
  j["span"] = Json::array({c.span.ts, c.span.te});
  j["size"] = c.vertices.size();
  j["vertices"] = labels_of(g.labels(), c.vertices);
  return j;
}

inline Json span_stats(const SpanStats& s) {
  Json j;
  j["total"] = s.total;
  Json hist = Json::array();
  for (auto [len, count] : s.histogram) hist.push_back(Json::array({len, count}));
  j["histogram"] = hist;
  Json per_k = Json::array();
  for (auto [k, len] : s.max_span_by_order) per_k.push_back(Json::array({k, len}));
  j["max_span_by_k"] = per_k;
  return j;
}

inline Json polarity(const SignedGraph& g, const PolarizedPartition& p, double lambda1, std::uint64_t seed) {
  Json j;
  j["algorithm"] = to_string(p.algorithm);
  j["polarity"] = p.polarity;
  j["lambda1"] = lambda1;
  j["community_pos"] = labels_of(g.labels(), p.community(1));
  j["community_neg"] = labels_of(g.labels(), p.community(-1));
  j["neutral_count"] = p.neutral_count();
  j["seed"] = seed;
  return j;
}

inline void write_line(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace mlcore::records
