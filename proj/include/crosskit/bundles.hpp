#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crosskit/flow.hpp"
#include "crosskit/multigraph.hpp"

namespace crosskit {

/// One bundle path: a walk in G - v from a neighbor of v to the sink.
/// Zero-length paths (start == sink) are legal when the neighbor is the sink.
struct BundlePath {
  VertexId start = -1;
  std::vector<EdgeId> edges;
};

/// d(v) pairwise edge-disjoint paths in G - v from the neighbors of v (with
/// multiplicity) to a common sink.
struct Bundle {
  VertexId center = -1;
  VertexId sink = -1;
  std::vector<BundlePath> paths;
};

inline bool validate_bundle(const MultiGraph& g, const Bundle& b) {
  if (!g.has_vertex(b.center) || !g.has_vertex(b.sink) || b.center == b.sink) return false;
  if (static_cast<int>(b.paths.size()) != g.degree(b.center)) return false;
  std::vector<EdgeId> used;
  std::vector<std::pair<VertexId, int>> starts;
  for (const BundlePath& p : b.paths) {
    VertexId at = p.start;
    if (at == b.center) return false;
    for (EdgeId eid : p.edges) {
      const Edge* e = g.find_edge(eid);
      if (!e || !e->incident_to(at) || e->incident_to(b.center)) return false;
      used.push_back(eid);
      at = e->other(at);
    }
    if (at != b.sink) return false;
    bool found = false;
    for (auto& [s, c] : starts)
      if (s == p.start) {
        ++c;
        found = true;
      }
    if (!found) starts.push_back({p.start, 1});
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
  // per-neighbor path counts match edge multiplicities toward the center
  for (auto& [s, c] : starts)
    if (g.multiplicity(s, b.center) != c) return false;
  int covered = 0;
  for (auto& [s, c] : starts) covered += c;
  return covered == g.degree(b.center);
}

namespace detail {

struct BundleNet {
  FlowNetwork net;
  int source = -1;
  std::vector<VertexId> node_vertex;          // flow node -> vertex of g
  std::vector<EdgeId> arc_edge;               // forward arc pair index -> edge id (-1: source arc)
  std::vector<int> vertex_node;               // dense vertex index -> flow node
};

// Network over G - center: unit capacity per edge copy (one forward arc pair
// per direction), source arcs into N(center) with the edge multiplicities.
// Pass exclude to ban some edges. source_scale doubles supplies for the
// coherent-pair feasibility check.
inline BundleNet bundle_network(const MultiGraph& g, VertexId center,
                                const std::vector<EdgeId>& exclude, int source_scale) {
  BundleNet bn;
  VertexIndexer idx(g);
  bn.vertex_node.assign(static_cast<std::size_t>(idx.size()), -1);
  for (int i = 0; i < idx.size(); ++i) {
    if (idx.id_of(i) == center) continue;
    bn.vertex_node[static_cast<std::size_t>(i)] = bn.net.add_node();
    bn.node_vertex.push_back(idx.id_of(i));
  }
  bn.source = bn.net.add_node();
  bn.node_vertex.push_back(-1);
  auto node_of = [&](VertexId v) { return bn.vertex_node[static_cast<std::size_t>(idx.index_of(v))]; };

  for (const Edge& e : g.edges()) {
    if (e.incident_to(center)) continue;
    if (std::find(exclude.begin(), exclude.end(), e.id) != exclude.end()) continue;
    bn.net.add_arc(node_of(e.u), node_of(e.v), 1);
    bn.arc_edge.push_back(e.id);
    bn.net.add_arc(node_of(e.v), node_of(e.u), 1);
    bn.arc_edge.push_back(e.id);
  }
  for (VertexId u : g.neighbors(center)) {
    bn.net.add_arc(bn.source, node_of(u), source_scale * g.multiplicity(u, center));
    bn.arc_edge.push_back(-1);
  }
  return bn;
}

inline Bundle paths_to_bundle(VertexId center, VertexId sink, const BundleNet& bn,
                              const std::vector<std::vector<int>>& paths) {
  Bundle b;
  b.center = center;
  b.sink = sink;
  for (const auto& arcs : paths) {
    BundlePath bp;
    bool first = true;
    for (int ai : arcs) {
      EdgeId eid = bn.arc_edge[static_cast<std::size_t>(ai / 2)];
      if (eid < 0) {  // source arc: its head is the path start
        bp.start = bn.node_vertex[static_cast<std::size_t>(bn.net.arc_to(ai))];
        first = false;
        continue;
      }
      if (first) {
        // paths begin with the source arc; anything else is a logic error
        throw std::logic_error("bundle path does not start at the source");
      }
      bp.edges.push_back(eid);
    }
    b.paths.push_back(std::move(bp));
  }
  return b;
}

inline int bundle_flow_value(const MultiGraph& g, VertexId center, VertexId sink,
                             const std::vector<EdgeId>& exclude) {
  BundleNet bn = bundle_network(g, center, exclude, 1);
  VertexIndexer idx(g);
  int t = bn.vertex_node[static_cast<std::size_t>(idx.index_of(sink))];
  return max_flow(bn.net, bn.source, t).value;
}

}  // namespace detail

/// Bundle of `center` with sink `sink`, via max flow: one exists iff the flow
/// value reaches deg(center); per-neighbor counts are forced by the source
/// capacities.
inline std::optional<Bundle> find_bundle(const MultiGraph& g, VertexId center, VertexId sink) {
  if (!g.has_vertex(center) || !g.has_vertex(sink))
    throw std::invalid_argument("find_bundle: no such vertex");
  if (center == sink) throw std::invalid_argument("find_bundle: sink equals center");
  const int d = g.degree(center);
  if (d == 0) return std::nullopt;

  detail::BundleNet bn = detail::bundle_network(g, center, {}, 1);
  VertexIndexer idx(g);
  int t = bn.vertex_node[static_cast<std::size_t>(idx.index_of(sink))];
  FlowResult fr = max_flow(bn.net, bn.source, t);
  if (fr.value != d) return std::nullopt;
  Bundle b = detail::paths_to_bundle(center, sink, bn, fr.paths);
  return b;
}

namespace detail {

// Exhaustive-with-pruning search for a bundle to w1 that leaves room for an
// edge-disjoint bundle to w2. The two-sink flow filter run by the caller is
// necessary but not sufficient, so the exact search decides.
class CoherentSearch {
 public:
  CoherentSearch(const MultiGraph& g, VertexId v, VertexId w1, VertexId w2, long long step_cap)
      : g_(g), v_(v), w1_(w1), w2_(w2), steps_left_(step_cap) {
    for (VertexId u : g.neighbors(v))
      for (int i = 0; i < g.multiplicity(u, v); ++i) units_.push_back(u);
  }

  std::optional<std::pair<Bundle, Bundle>> run() {
    if (dfs(0)) return result_;
    return std::nullopt;
  }

 private:
  bool feasible(std::size_t unit) const {
    // remaining units still routable to w1 edge-disjointly, and a full bundle
    // to w2 must fit in what is left
    MultiGraph avail = without_used();
    FlowNetwork net;
    // reuse bundle_network-style construction but with custom supplies
    VertexIndexer idx(avail);
    std::vector<int> node(static_cast<std::size_t>(idx.size()), -1);
    std::vector<VertexId> rev;
    for (int i = 0; i < idx.size(); ++i) {
      if (idx.id_of(i) == v_) continue;
      node[static_cast<std::size_t>(i)] = net.add_node();
      rev.push_back(idx.id_of(i));
    }
    int s = net.add_node();
    auto node_of = [&](VertexId x) { return node[static_cast<std::size_t>(idx.index_of(x))]; };
    for (const Edge& e : avail.edges()) {
      if (e.incident_to(v_)) continue;
      net.add_arc(node_of(e.u), node_of(e.v), 1);
      net.add_arc(node_of(e.v), node_of(e.u), 1);
    }
    std::vector<std::pair<VertexId, int>> supply;
    for (std::size_t k = unit; k < units_.size(); ++k) {
      bool found = false;
      for (auto& [u, c] : supply)
        if (u == units_[k]) {
          ++c;
          found = true;
        }
      if (!found) supply.push_back({units_[k], 1});
    }
    int need = static_cast<int>(units_.size() - unit);
    for (auto& [u, c] : supply) net.add_arc(s, node_of(u), c);
    if (max_flow(net, s, node_of(w1_)).value != need) return false;
    // a full bundle to w2 must also still fit in the unused edges
    return bundle_flow_value(avail, v_, w2_, {}) == static_cast<int>(units_.size());
  }

  MultiGraph without_used() const {
    std::vector<Edge> es;
    for (const Edge& e : g_.edges())
      if (std::find(used_.begin(), used_.end(), e.id) == used_.end()) es.push_back(e);
    return MultiGraph::build(g_.vertices(), std::move(es));
  }

  bool dfs(std::size_t unit) {
    if (steps_left_-- < 0) return false;
    if (unit == units_.size()) {
      MultiGraph avail = without_used();
      auto b2 = find_bundle(avail, v_, w2_);
      if (!b2) return false;
      Bundle b1;
      b1.center = v_;
      b1.sink = w1_;
      b1.paths = unit_paths_;
      result_ = {b1, *b2};
      return true;
    }
    if (!feasible(unit)) return false;
    // enumerate simple paths from units_[unit] to w1 over unused edges
    std::vector<EdgeId> path_edges;
    std::vector<VertexId> on_path{units_[unit]};
    return extend(unit, units_[unit], path_edges, on_path);
  }

  bool extend(std::size_t unit, VertexId at, std::vector<EdgeId>& path_edges,
              std::vector<VertexId>& on_path) {
    if (steps_left_-- < 0) return false;
    if (at == w1_) {
      unit_paths_.push_back({units_[unit], path_edges});
      std::size_t used_before = used_.size();
      used_.insert(used_.end(), path_edges.begin(), path_edges.end());
      if (dfs(unit + 1)) return true;
      used_.resize(used_before);
      unit_paths_.pop_back();
      return false;
    }
    for (const Edge& e : g_.edges()) {
      if (!e.incident_to(at) || e.incident_to(v_)) continue;
      if (std::find(used_.begin(), used_.end(), e.id) != used_.end()) continue;
      if (std::find(path_edges.begin(), path_edges.end(), e.id) != path_edges.end()) continue;
      VertexId nxt = e.other(at);
      if (std::find(on_path.begin(), on_path.end(), nxt) != on_path.end()) continue;
      path_edges.push_back(e.id);
      on_path.push_back(nxt);
      if (extend(unit, nxt, path_edges, on_path)) return true;
      on_path.pop_back();
      path_edges.pop_back();
    }
    return false;
  }

  const MultiGraph& g_;
  VertexId v_, w1_, w2_;
  long long steps_left_;
  std::vector<VertexId> units_;
  std::vector<EdgeId> used_;
  std::vector<BundlePath> unit_paths_;
  std::optional<std::pair<Bundle, Bundle>> result_;
};

}  // namespace detail

/// Two bundles of v with distinct sinks and disjoint edge sets, or absent.
/// Flow checks (each sink alone, then both sinks with doubled supplies) are
/// used as filters; candidate sink pairs that pass are settled by exact
/// search, since the two-sink flow alone can overcount.
inline std::optional<std::pair<Bundle, Bundle>> find_coherent_bundles(
    const MultiGraph& g, VertexId v, long long step_cap = 50'000'000) {
  if (!g.has_vertex(v)) throw std::invalid_argument("find_coherent_bundles: no such vertex");
  const int d = g.degree(v);
  if (d == 0) return std::nullopt;

  VertexIndexer idx(g);
  std::vector<VertexId> sinks;
  for (VertexId w : g.vertices()) {
    if (w == v) continue;
    if (detail::bundle_flow_value(g, v, w, {}) == d) sinks.push_back(w);
  }
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    for (std::size_t j = i + 1; j < sinks.size(); ++j) {
      VertexId w1 = sinks[i], w2 = sinks[j];
      // two-sink feasibility with doubled supplies
      detail::BundleNet bn = detail::bundle_network(g, v, {}, 2);
      int t = bn.net.add_node();
      bn.net.add_arc(bn.vertex_node[static_cast<std::size_t>(idx.index_of(w1))], t, d);
      bn.net.add_arc(bn.vertex_node[static_cast<std::size_t>(idx.index_of(w2))], t, d);
      if (max_flow(bn.net, bn.source, t).value != 2 * d) continue;
      // exact: enumerate bundles to w1, flow-check the leftover toward w2
      detail::CoherentSearch search(g, v, w1, w2, step_cap);
      if (auto found = search.run()) return found;
    }
  }
  return std::nullopt;
}

}  // namespace crosskit
