#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosskit/certificate.hpp"
#include "crosskit/decompose.hpp"
#include "crosskit/multigraph.hpp"

namespace crosskit {

enum class GraphFormat { auto_detect, edge_list, graph6 };

struct GraphDocument {
  GraphFormat format = GraphFormat::edge_list;
  std::string payload;
  MultiGraph graph;
};

/// Edge-list grammar: '#' comment lines, then "n m", then m lines "u v" with
/// 0-based indices; duplicate lines encode parallel edges.
inline MultiGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> pairs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                    ": expected header \"n m\"");
      continue;
    }
    int u, v;
    if (!(fields >> u >> v))
      throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                  ": expected \"u v\"");
    pairs.push_back({u, v});
  }
  if (n < 0) throw std::invalid_argument("edge list: missing header");
  if (static_cast<int>(pairs.size()) != m)
    throw std::invalid_argument("edge list: header claims " + std::to_string(m) +
                                " edges, found " + std::to_string(pairs.size()));
  return make_graph(n, pairs);
}

/// Canonical emission: header then edges in ascending id order, vertices
/// compacted to 0..n-1. parse(emit(parse(x))) == parse(x).
inline std::string emit_edge_list(const MultiGraph& g) {
  VertexIndexer idx(g);
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << idx.index_of(e.u) << ' ' << idx.index_of(e.v) << '\n';
  return out.str();
}

/// Standard graph6 (simple graphs only; optional >>graph6<< header).
inline MultiGraph parse_graph6(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  if (s.empty()) throw std::invalid_argument("graph6: empty input");
  std::size_t pos = 0;
  long n = 0;
  auto byte = [&](std::size_t i) -> int {
    if (i >= s.size()) throw std::invalid_argument("graph6: truncated input");
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
    return c - 63;
  };
  if (byte(0) < 63) {
    n = byte(0);
    pos = 1;
  }
  if (static_cast<unsigned char>(s[0]) == 126) {
    if (s.size() >= 2 && static_cast<unsigned char>(s[1]) == 126)
      throw std::invalid_argument("graph6: graphs over 258047 vertices unsupported");
    n = (static_cast<long>(byte(1)) << 12) | (static_cast<long>(byte(2)) << 6) | byte(3);
    pos = 4;
  }
  if (n > 512) throw std::invalid_argument("graph6: vertex count over 512 unsupported");
  std::vector<std::pair<int, int>> pairs;
  int bit = 5;
  std::size_t at = pos;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (bit < 0) {
        ++at;
        bit = 5;
      }
      if ((byte(at) >> bit) & 1) pairs.push_back({i, j});
      --bit;
    }
  }
  return make_graph(static_cast<int>(n), pairs);
}

inline GraphDocument read_graph_document(const std::string& text,
                                         GraphFormat hint = GraphFormat::auto_detect) {
  GraphDocument doc;
  doc.payload = text;
  if (hint == GraphFormat::graph6) {
    doc.format = GraphFormat::graph6;
    doc.graph = parse_graph6(text);
    return doc;
  }
  if (hint == GraphFormat::edge_list) {
    doc.format = GraphFormat::edge_list;
    doc.graph = parse_edge_list(text);
    return doc;
  }
  // auto: an edge list starts (after comments) with two integers
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    std::istringstream fields(line);
    int a, b;
    if (fields >> a >> b) {
      doc.format = GraphFormat::edge_list;
      doc.graph = parse_edge_list(text);
    } else {
      doc.format = GraphFormat::graph6;
      doc.graph = parse_graph6(line.substr(pos));
    }
    return doc;
  }
  throw std::invalid_argument("graph input: empty document");
}

// ---- JSON schemas ----

inline nlohmann::json edge_ref_to_json(const EdgeRef& r) {
  if (r.step < 0) return nlohmann::json(r.slot);
  return nlohmann::json::array({r.step, r.slot});
}

inline EdgeRef edge_ref_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return EdgeRef{-1, j.get<int>()};
  if (j.is_array() && j.size() == 2) return EdgeRef{j[0].get<int>(), j[1].get<int>()};
  throw std::invalid_argument("certificate: malformed edge reference");
}

inline nlohmann::json certificate_to_json(const CrossingCertificate& c) {
  nlohmann::json j;
  j["base_n"] = c.base_n;
  j["base_edges"] = nlohmann::json::array();
  for (auto& [u, v] : c.base_edges) j["base_edges"].push_back({u, v});
  j["trace"] = nlohmann::json::array();
  for (auto& [a, b] : c.trace)
    j["trace"].push_back(nlohmann::json::array({edge_ref_to_json(a), edge_ref_to_json(b)}));
  j["value"] = c.claimed_value;
  return j;
}

inline CrossingCertificate certificate_from_json(const nlohmann::json& j) {
  CrossingCertificate c;
  c.base_n = j.at("base_n").get<int>();
  for (auto& e : j.at("base_edges"))
    c.base_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  for (auto& step : j.at("trace"))
    c.trace.push_back({edge_ref_from_json(step.at(0)), edge_ref_from_json(step.at(1))});
  c.claimed_value = j.at("value").get<int>();
  return c;
}

inline nlohmann::json graph_to_json(const MultiGraph& g) {
  VertexIndexer idx(g);
  nlohmann::json j;
  j["n"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) j["edges"].push_back({idx.index_of(e.u), idx.index_of(e.v)});
  return j;
}

inline nlohmann::json tree_to_json(const DecompositionTree& t, int canonical_cap = 16) {
  nlohmann::json j;
  if (t.graph.vertex_count() <= canonical_cap) {
    CanonicalKey k = canonical_key(t.graph, canonical_cap);
    std::ostringstream hex;
    for (unsigned char c : k.bytes) {
      static const char* digits = "0123456789abcdef";
      hex << digits[c >> 4] << digits[c & 15];
    }
    j["graph_key"] = hex.str();
  } else {
    j["graph_key"] = nullptr;
  }
  j["n"] = t.graph.vertex_count();
  j["m"] = t.graph.edge_count();
  j["value"] = t.lower;
  if (t.upper)
    j["value_upper"] = *t.upper;
  else
    j["value_upper"] = nullptr;
  j["exact"] = t.exact();
  if (t.is_leaf()) {
    if (t.leaf->certificate)
      j["leaf_certificate"] = certificate_to_json(*t.leaf->certificate);
    else
      j["leaf_certificate"] = nullptr;
  } else {
    j["cut_edges"] = t.cut->edges;
    j["exact_split"] = t.exact_split;
    j["children"] = nlohmann::json::array();
    for (const auto& c : t.children) j["children"].push_back(tree_to_json(*c, canonical_cap));
  }
  return j;
}

}  // namespace crosskit
