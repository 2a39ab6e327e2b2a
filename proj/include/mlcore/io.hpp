#pragma once

// Edge-list readers and writers for the three network kinds.
//
//   multilayer:  u v layer
//   temporal:    u v t        (t a non-negative integer)
//   signed:      u v sign     (sign one of +1 -1 + -)
//
// Tokens are separated by runs of spaces or tabs, '#' starts a comment that
// runs to the end of the line, blank lines are skipped and "\r\n" endings
// are accepted. Vertex ids (and layer order) follow first appearance.

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlcore/errors.hpp"
#include "mlcore/graph.hpp"

namespace mlcore {

namespace detail {

// Splits the next data line into tokens. Returns false at end of stream.
inline bool next_record(std::istream& in, std::size_t& line_no, std::vector<std::string_view>& tokens,
                        std::string& buffer) {
  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line(buffer);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    tokens.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!tokens.empty()) return true;
  }
  return false;
}

inline void expect_three(const std::vector<std::string_view>& tokens, std::size_t line_no) {
  if (tokens.size() != 3)
    throw ParseError(line_no, "expected 3 tokens, found " + std::to_string(tokens.size()));
}

inline void reject_self_loop(std::string_view u, std::string_view v, std::size_t line_no) {
  if (u == v) throw ParseError(line_no, "self-loop on vertex '" + std::string(u) + "'");
}

}  // namespace detail

inline MultilayerGraph parse_multilayer(std::istream& in) {
  LabelMap labels;
  std::vector<std::string> layer_names;
  std::unordered_map<std::string, std::size_t> layer_index;
  std::vector<std::vector<Edge>> layer_edges;

  std::size_t line_no = 0;
  std::vector<std::string_view> tok;
  std::string buf;
  while (detail::next_record(in, line_no, tok, buf)) {
    detail::expect_three(tok, line_no);
    detail::reject_self_loop(tok[0], tok[1], line_no);
    VertexId u = labels.intern(std::string(tok[0]));
    VertexId v = labels.intern(std::string(tok[1]));
    auto [it, inserted] = layer_index.try_emplace(std::string(tok[2]), layer_names.size());
    if (inserted) {
      layer_names.emplace_back(tok[2]);
      layer_edges.emplace_back();
    }
    layer_edges[it->second].emplace_back(u, v);
  }
  if (layer_names.empty()) throw ParseError(0, "multilayer input has no edges");

  std::vector<Adjacency> layers;
  layers.reserve(layer_edges.size());
  for (const auto& e : layer_edges) layers.push_back(Adjacency::from_edges(labels.size(), e));
  return MultilayerGraph(std::move(labels), std::move(layer_names), std::move(layers));
}

inline TemporalGraph parse_temporal(std::istream& in) {
  LabelMap labels;
  std::map<Timestamp, std::vector<Edge>> by_time;

  std::size_t line_no = 0;
  std::vector<std::string_view> tok;
  std::string buf;
  while (detail::next_record(in, line_no, tok, buf)) {
    detail::expect_three(tok, line_no);
    Timestamp t = 0;
    auto [end, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), t);
    if (ec != std::errc() || end != tok[2].data() + tok[2].size() || t < 0)
      throw ParseError(line_no, "bad timestamp '" + std::string(tok[2]) + "'");
    detail::reject_self_loop(tok[0], tok[1], line_no);
    VertexId u = labels.intern(std::string(tok[0]));
    VertexId v = labels.intern(std::string(tok[1]));
    by_time[t].emplace_back(u, v);
  }
  if (by_time.empty()) return TemporalGraph(std::move(labels), 0, {});

  const Timestamp t_min = by_time.begin()->first;
  const Timestamp t_max = by_time.rbegin()->first;
  std::vector<Adjacency> snaps;
  snaps.reserve(static_cast<std::size_t>(t_max - t_min + 1));
  for (Timestamp t = t_min; t <= t_max; ++t) {
    auto it = by_time.find(t);
    if (it == by_time.end())
      snaps.push_back(Adjacency::from_edges(labels.size(), {}));
    else
      snaps.push_back(Adjacency::from_edges(labels.size(), it->second));
  }
  return TemporalGraph(std::move(labels), t_min, std::move(snaps));
}

inline SignedGraph parse_signed(std::istream& in) {
  LabelMap labels;
  std::map<Edge, std::pair<int, std::size_t>> seen;  // pair -> (sign, first line)

  std::size_t line_no = 0;
  std::vector<std::string_view> tok;
  std::string buf;
  while (detail::next_record(in, line_no, tok, buf)) {
    detail::expect_three(tok, line_no);
    int sign = 0;
    if (tok[2] == "+1" || tok[2] == "+")
      sign = 1;
    else if (tok[2] == "-1" || tok[2] == "-")
      sign = -1;
    else
      throw ParseError(line_no, "bad sign '" + std::string(tok[2]) + "'");
    detail::reject_self_loop(tok[0], tok[1], line_no);
    VertexId u = labels.intern(std::string(tok[0]));
    VertexId v = labels.intern(std::string(tok[1]));
    if (u > v) std::swap(u, v);
    auto [it, inserted] = seen.try_emplace(Edge{u, v}, sign, line_no);
    if (!inserted && it->second.first != sign)
      throw ParseError(line_no, "sign conflict for pair '" + std::string(tok[0]) + "' '" +
                                    std::string(tok[1]) + "' (first seen on line " +
                                    std::to_string(it->second.second) + ")");
  }
  std::vector<SignedEdge> edges;
  edges.reserve(seen.size());
  for (const auto& [pair, info] : seen) edges.push_back({pair.first, pair.second, info.first});
  return SignedGraph(std::move(labels), std::move(edges));
}

inline void write_multilayer(std::ostream& out, const MultilayerGraph& g) {
  const auto& lab = g.labels();
  for (std::size_t l = 0; l < g.layer_count(); ++l)
    for (auto [u, v] : g.layer(l).edges())
      out << lab.label(u) << ' ' << lab.label(v) << ' ' << g.layer_names()[l] << '\n';
}

inline void write_temporal(std::ostream& out, const TemporalGraph& g) {
  const auto& lab = g.labels();
  for (std::size_t i = 0; i < g.timestamp_count(); ++i) {
    const Timestamp t = g.t_min() + static_cast<Timestamp>(i);
    for (auto [u, v] : g.snapshot(t).edges()) out << lab.label(u) << ' ' << lab.label(v) << ' ' << t << '\n';
  }
}

inline void write_signed(std::ostream& out, const SignedGraph& g) {
  const auto& lab = g.labels();
  for (const auto& e : g.edges())
    out << lab.label(e.u) << ' ' << lab.label(e.v) << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
}

}  // namespace mlcore
