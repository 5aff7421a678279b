#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crosskit {

using VertexId = int;
using EdgeId = int;

enum class EdgeColor : std::uint8_t { none = 0, green = 1, red = 2, blue = 3 };

struct Edge {
  EdgeId id{};
  VertexId u{};
  VertexId v{};
  EdgeColor color = EdgeColor::none;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool incident_to(VertexId w) const { return u == w || v == w; }
  bool adjacent_to(const Edge& o) const {
    return incident_to(o.u) || incident_to(o.v);
  }
};

/// Loopless undirected multigraph. Values are immutable once built: every
/// structural operation returns a new graph. Edge ids are stable across
/// operations wherever the edge survives, so cuts and certificates can refer
/// to edges of derived graphs.
class MultiGraph {
 public:
  MultiGraph() = default;

  // Loops are dropped silently; endpoints must exist and edge ids be unique.
  static MultiGraph build(std::vector<VertexId> vertices, std::vector<Edge> edges) {
    MultiGraph g;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    g.vertices_ = std::move(vertices);
    g.edges_.reserve(edges.size());
    EdgeId next = 0;
    for (const Edge& e : edges) {
      if (e.u == e.v) continue;
      if (!g.has_vertex(e.u) || !g.has_vertex(e.v))
        throw std::invalid_argument("edge endpoint not a vertex: edge " + std::to_string(e.id));
      g.edges_.push_back(e);
      next = std::max(next, e.id + 1);
    }
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < g.edges_.size(); ++i)
      if (g.edges_[i].id == g.edges_[i - 1].id)
        throw std::invalid_argument("duplicate edge id " + std::to_string(g.edges_[i].id));
    g.next_edge_id_ = next;
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  const Edge* find_edge(EdgeId id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, EdgeId k) { return e.id < k; });
    return (it != edges_.end() && it->id == id) ? &*it : nullptr;
  }

  const Edge& edge(EdgeId id) const {
    const Edge* e = find_edge(id);
    if (!e) throw std::invalid_argument("no edge with id " + std::to_string(id));
    return *e;
  }

  int degree(VertexId v) const {
    int d = 0;
    for (const Edge& e : edges_) d += e.incident_to(v) ? 1 : 0;
    return d;
  }

  std::vector<EdgeId> incident_edges(VertexId v) const {
    std::vector<EdgeId> out;
    for (const Edge& e : edges_)
      if (e.incident_to(v)) out.push_back(e.id);
    return out;
  }

  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (const Edge& e : edges_)
      if (e.incident_to(v)) out.push_back(e.other(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Number of parallel edges between u and v.
  int multiplicity(VertexId u, VertexId v) const {
    int m = 0;
    for (const Edge& e : edges_)
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) ++m;
    return m;
  }

  VertexId max_vertex_id() const { return vertices_.empty() ? -1 : vertices_.back(); }
  EdgeId next_edge_id() const { return next_edge_id_; }

  // Labeled-structure equality: same vertex set, same edge multiset
  // (endpoints plus color); edge ids do not participate.
  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    if (a.vertices_ != b.vertices_) return false;
    auto norm = [](const MultiGraph& g) {
      std::vector<std::array<int, 3>> v;
      v.reserve(g.edges_.size());
      for (const Edge& e : g.edges_)
        v.push_back({std::min(e.u, e.v), std::max(e.u, e.v), static_cast<int>(e.color)});
      std::sort(v.begin(), v.end());
      return v;
    };
    return norm(a) == norm(b);
  }
  friend bool operator!=(const MultiGraph& a, const MultiGraph& b) { return !(a == b); }

 private:
  std::vector<VertexId> vertices_;  // sorted, unique
  std::vector<Edge> edges_;         // sorted by id
  EdgeId next_edge_id_ = 0;
};

// Maps vertex ids of a graph to dense indices 0..n-1 (sorted-id order).
class VertexIndexer {
 public:
  explicit VertexIndexer(const MultiGraph& g) : ids_(g.vertices()) {}
  int size() const { return static_cast<int>(ids_.size()); }
  int index_of(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v)
      throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
    return static_cast<int>(it - ids_.begin());
  }
  VertexId id_of(int index) const { return ids_[static_cast<std::size_t>(index)]; }
  const std::vector<VertexId>& ids() const { return ids_; }

 private:
  std::vector<VertexId> ids_;
};

inline MultiGraph make_graph(int n_vertices,
                             const std::vector<std::pair<int, int>>& edge_pairs) {
  if (n_vertices < 0) throw std::invalid_argument("negative vertex count");
  std::vector<VertexId> vs(static_cast<std::size_t>(n_vertices));
  for (int i = 0; i < n_vertices; ++i) vs[static_cast<std::size_t>(i)] = i;
  std::vector<Edge> es;
  es.reserve(edge_pairs.size());
  EdgeId id = 0;
  for (const auto& [u, v] : edge_pairs) {
    if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) +
                                  "," + std::to_string(v) + ")");
    if (u == v)
      throw std::invalid_argument("loop edge rejected: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    es.push_back(Edge{id++, u, v});
  }
  return MultiGraph::build(std::move(vs), std::move(es));
}

inline std::vector<std::vector<VertexId>> connected_components(const MultiGraph& g) {
  VertexIndexer idx(g);
  const int n = idx.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    int a = idx.index_of(e.u), b = idx.index_of(e.v);
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<VertexId>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = c;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out.back().push_back(idx.id_of(x));
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (comp[static_cast<std::size_t>(y)] < 0) {
          comp[static_cast<std::size_t>(y)] = c;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline bool is_connected(const MultiGraph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

// Restriction of g to a vertex subset (keeps edges with both ends inside).
inline MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<VertexId>& vs) {
  std::vector<VertexId> sorted(vs);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto inside = [&](VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) {
    if (!g.has_vertex(e.u) || !g.has_vertex(e.v)) continue;
    if (inside(e.u) && inside(e.v)) es.push_back(e);
  }
  for (VertexId v : sorted)
    if (!g.has_vertex(v)) throw std::invalid_argument("subset vertex not in graph");
  return MultiGraph::build(std::move(sorted), std::move(es));
}

inline MultiGraph contract_set(const MultiGraph& g, const std::vector<VertexId>& s) {
  if (s.empty()) throw std::invalid_argument("contract_set: empty vertex set");
  std::vector<VertexId> sorted(s);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (VertexId v : sorted)
    if (!g.has_vertex(v))
      throw std::invalid_argument("contract_set: vertex " + std::to_string(v) + " not in graph");
  auto inside = [&](VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
  };
  const VertexId merged = g.max_vertex_id() + 1;
  std::vector<VertexId> vs;
  for (VertexId v : g.vertices())
    if (!inside(v)) vs.push_back(v);
  vs.push_back(merged);
  std::vector<Edge> es;
  for (Edge e : g.edges()) {
    bool iu = inside(e.u), iv = inside(e.v);
    if (iu && iv) continue;  // internal edge becomes a loop: dropped
    if (iu) e.u = merged;
    if (iv) e.v = merged;
    es.push_back(e);
  }
  return MultiGraph::build(std::move(vs), std::move(es));
}

struct CrossIdentify {
  MultiGraph graph;
  VertexId x{};                      // the new degree-4 vertex
  std::array<EdgeId, 4> new_edges{}; // ux, xv, wx, xz for e=uv, f=wz
};

// Subdivide e and f and identify the subdivision vertices: the combinatorial
// stand-in for one crossing between e and f.
inline CrossIdentify cross_identify_traced(const MultiGraph& g, EdgeId e, EdgeId f) {
  if (e == f) throw std::invalid_argument("cross_identify: identical edges");
  const Edge& ee = g.edge(e);
  const Edge& ff = g.edge(f);
  if (ee.adjacent_to(ff))
    throw std::invalid_argument("cross_identify: edges " + std::to_string(e) + " and " +
                                std::to_string(f) + " share an endpoint");
  const VertexId x = g.max_vertex_id() + 1;
  EdgeId id = g.next_edge_id();
  std::vector<VertexId> vs(g.vertices());
  vs.push_back(x);
  std::vector<Edge> es;
  es.reserve(g.edges().size() + 2);
  for (const Edge& ed : g.edges())
    if (ed.id != e && ed.id != f) es.push_back(ed);
  CrossIdentify out;
  out.x = x;
  out.new_edges = {id, id + 1, id + 2, id + 3};
  es.push_back(Edge{id, ee.u, x, ee.color});
  es.push_back(Edge{id + 1, x, ee.v, ee.color});
  es.push_back(Edge{id + 2, ff.u, x, ff.color});
  es.push_back(Edge{id + 3, x, ff.v, ff.color});
  out.graph = MultiGraph::build(std::move(vs), std::move(es));
  return out;
}

inline MultiGraph cross_identify(const MultiGraph& g, EdgeId e, EdgeId f) {
  return cross_identify_traced(g, e, f).graph;
}

inline MultiGraph subdivide(const MultiGraph& g, EdgeId e) {
  const Edge& ee = g.edge(e);
  const VertexId x = g.max_vertex_id() + 1;
  EdgeId id = g.next_edge_id();
  std::vector<VertexId> vs(g.vertices());
  vs.push_back(x);
  std::vector<Edge> es;
  for (const Edge& ed : g.edges())
    if (ed.id != e) es.push_back(ed);
  es.push_back(Edge{id, ee.u, x, ee.color});
  es.push_back(Edge{id + 1, x, ee.v, ee.color});
  return MultiGraph::build(std::move(vs), std::move(es));
}

inline MultiGraph delete_edge(const MultiGraph& g, EdgeId e) {
  g.edge(e);  // existence check
  std::vector<Edge> es;
  for (const Edge& ed : g.edges())
    if (ed.id != e) es.push_back(ed);
  return MultiGraph::build(g.vertices(), std::move(es));
}

inline MultiGraph delete_vertex(const MultiGraph& g, VertexId v) {
  if (!g.has_vertex(v))
    throw std::invalid_argument("delete_vertex: vertex " + std::to_string(v) + " not in graph");
  std::vector<VertexId> vs;
  for (VertexId w : g.vertices())
    if (w != v) vs.push_back(w);
  std::vector<Edge> es;
  for (const Edge& ed : g.edges())
    if (!ed.incident_to(v)) es.push_back(ed);
  return MultiGraph::build(std::move(vs), std::move(es));
}

// Keep the lowest-id edge of each parallel class.
inline MultiGraph simplify(const MultiGraph& g) {
  std::vector<Edge> es;
  std::vector<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(key);
      es.push_back(e);
    }
  }
  return MultiGraph::build(g.vertices(), std::move(es));
}

// Join of g with an independent set of `count` fresh vertices.
inline MultiGraph join_independent(const MultiGraph& g, int count) {
  if (count < 0) throw std::invalid_argument("join_independent: negative count");
  std::vector<VertexId> vs(g.vertices());
  std::vector<Edge> es(g.edges());
  EdgeId id = g.next_edge_id();
  VertexId next = g.max_vertex_id() + 1;
  for (int i = 0; i < count; ++i) {
    VertexId a = next + i;
    vs.push_back(a);
    for (VertexId v : g.vertices()) es.push_back(Edge{id++, v, a});
  }
  return MultiGraph::build(std::move(vs), std::move(es));
}

}  // namespace crosskit
