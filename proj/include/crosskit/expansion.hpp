#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crosskit/multigraph.hpp"

namespace crosskit {

/// A host graph obtained from G by replacing each vertex of degree >= 4 with
/// a cubic tree on its incident edges; contracting the preimage trees
/// recovers G.
struct Expansion {
  MultiGraph host;
  std::vector<std::pair<VertexId, VertexId>> vertex_map;  // host vertex -> G vertex
};

namespace detail {

// All cubic trees on d labeled leaves 0..d-1 (internal nodes d..2d-3), as
// edge lists. There are (2d-5)!! of them.
inline std::vector<std::vector<std::pair<int, int>>> cubic_trees(int d) {
  if (d < 3) throw std::invalid_argument("cubic_trees: need at least 3 leaves");
  std::vector<std::vector<std::pair<int, int>>> trees{{{0, d}, {1, d}, {2, d}}};
  for (int leaf = 3; leaf < d; ++leaf) {
    int fresh = d + leaf - 2;
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& t : trees) {
      for (std::size_t ei = 0; ei < t.size(); ++ei) {
        std::vector<std::pair<int, int>> nt;
        for (std::size_t k = 0; k < t.size(); ++k) {
          if (k == ei) continue;
          nt.push_back(t[k]);
        }
        nt.push_back({t[ei].first, fresh});
        nt.push_back({t[ei].second, fresh});
        nt.push_back({leaf, fresh});
        next.push_back(std::move(nt));
      }
    }
    trees = std::move(next);
  }
  return trees;
}

}  // namespace detail

/// Enumerates all expansions of g (degree <= 3 vertices kept as-is, each
/// higher-degree vertex independently replaced by every cubic tree over its
/// incident edge slots). The visitor returns false to stop early. Returns the
/// number of expansions visited.
inline long long expansions(const MultiGraph& g, int degree_cap,
                            const std::function<bool(const Expansion&)>& visit) {
  std::vector<VertexId> expanded;
  for (VertexId v : g.vertices()) {
    int d = g.degree(v);
    if (d > degree_cap)
      throw std::invalid_argument("expansions: vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(d) + ", over the cap of " +
                                  std::to_string(degree_cap));
    if (d >= 4) expanded.push_back(v);
  }

  std::vector<std::vector<std::vector<std::pair<int, int>>>> options;
  for (VertexId v : expanded) options.push_back(detail::cubic_trees(g.degree(v)));

  long long count = 0;
  std::vector<std::size_t> pick(expanded.size(), 0);
  while (true) {
    Expansion exp;
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    VertexId next_v = 0;
    EdgeId next_e = g.next_edge_id();
    // host vertex allocation
    std::vector<std::pair<VertexId, VertexId>> plain;          // g vertex -> host vertex
    std::vector<std::vector<VertexId>> leaf_of(expanded.size());
    std::vector<std::vector<VertexId>> internal_of(expanded.size());
    auto expanded_index = [&](VertexId v) -> int {
      for (std::size_t i = 0; i < expanded.size(); ++i)
        if (expanded[i] == v) return static_cast<int>(i);
      return -1;
    };
    for (VertexId v : g.vertices()) {
      int xi = expanded_index(v);
      if (xi < 0) {
        plain.push_back({v, next_v});
        exp.vertex_map.push_back({next_v, v});
        vs.push_back(next_v++);
      } else {
        int d = g.degree(v);
        for (int s = 0; s < d; ++s) {
          leaf_of[static_cast<std::size_t>(xi)].push_back(next_v);
          exp.vertex_map.push_back({next_v, v});
          vs.push_back(next_v++);
        }
        for (int s = 0; s < d - 2; ++s) {
          internal_of[static_cast<std::size_t>(xi)].push_back(next_v);
          exp.vertex_map.push_back({next_v, v});
          vs.push_back(next_v++);
        }
      }
    }
    auto plain_host = [&](VertexId v) {
      for (auto& [a, b] : plain)
        if (a == v) return b;
      throw std::logic_error("expansions: vertex not mapped");
    };
    auto tree_node_host = [&](int xi, int node) {
      int d = g.degree(expanded[static_cast<std::size_t>(xi)]);
      if (node < d) return leaf_of[static_cast<std::size_t>(xi)][static_cast<std::size_t>(node)];
      return internal_of[static_cast<std::size_t>(xi)][static_cast<std::size_t>(node - d)];
    };
    // original edges land on leaves in ascending-id slot order
    std::vector<int> slot_used(expanded.size(), 0);
    std::vector<std::pair<EdgeId, std::array<VertexId, 2>>> endpoints;
    for (const Edge& e : g.edges()) {
      std::array<VertexId, 2> hosts{};
      VertexId uv[2] = {e.u, e.v};
      for (int side = 0; side < 2; ++side) {
        int xi = expanded_index(uv[side]);
        if (xi < 0) {
          hosts[static_cast<std::size_t>(side)] = plain_host(uv[side]);
        } else {
          int slot = slot_used[static_cast<std::size_t>(xi)]++;
          hosts[static_cast<std::size_t>(side)] =
              leaf_of[static_cast<std::size_t>(xi)][static_cast<std::size_t>(slot)];
        }
      }
      es.push_back(Edge{e.id, hosts[0], hosts[1], e.color});
    }
    for (std::size_t xi = 0; xi < expanded.size(); ++xi) {
      const auto& tree = options[xi][pick[xi]];
      for (auto& [a, b] : tree)
        es.push_back(Edge{next_e++, tree_node_host(static_cast<int>(xi), a),
                          tree_node_host(static_cast<int>(xi), b)});
    }
    exp.host = MultiGraph::build(std::move(vs), std::move(es));
    ++count;
    if (!visit(exp)) return count;

    // odometer
    std::size_t pos = 0;
    while (pos < pick.size()) {
      if (++pick[pos] < options[pos].size()) break;
      pick[pos] = 0;
      ++pos;
    }
    if (pos == pick.size()) break;
    if (pick.empty()) break;
  }
  return count;
}

/// Checks the expansion invariants: preimages induce trees, contracting them
/// recovers g's labeled structure, and internal expansion vertices are cubic.
inline bool validate_expansion(const MultiGraph& g, const Expansion& exp) {
  auto mapped = [&](VertexId hv) -> VertexId {
    for (auto& [h, orig] : exp.vertex_map)
      if (h == hv) return orig;
    return -1;
  };
  for (VertexId hv : exp.host.vertices())
    if (mapped(hv) < 0 || !g.has_vertex(mapped(hv))) return false;

  for (VertexId v : g.vertices()) {
    std::vector<VertexId> pre;
    for (VertexId hv : exp.host.vertices())
      if (mapped(hv) == v) pre.push_back(hv);
    if (pre.empty()) return false;
    MultiGraph sub = induced_subgraph(exp.host, pre);
    if (!is_connected(sub) || sub.edge_count() != static_cast<int>(pre.size()) - 1) return false;
    if (pre.size() == 1) continue;
    for (VertexId hv : pre) {
      int external = 0;
      for (const Edge& e : exp.host.edges())
        if (e.incident_to(hv) && mapped(e.other(hv)) != v) ++external;
      if (external == 0 && exp.host.degree(hv) != 3) return false;  // internal node
    }
  }

  // edges between distinct preimages must reproduce g's edge multiset
  std::vector<std::pair<VertexId, VertexId>> cross, orig;
  for (const Edge& e : exp.host.edges()) {
    VertexId a = mapped(e.u), b = mapped(e.v);
    if (a != b) cross.push_back({std::min(a, b), std::max(a, b)});
  }
  for (const Edge& e : g.edges()) orig.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::sort(cross.begin(), cross.end());
  std::sort(orig.begin(), orig.end());
  return cross == orig;
}

}  // namespace crosskit
