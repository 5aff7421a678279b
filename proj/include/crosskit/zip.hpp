#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crosskit/cuts.hpp"
#include "crosskit/multigraph.hpp"

namespace crosskit {

/// The data of a zip product: two graphs with distinguished vertices of equal
/// degree and a bijection between their incident edge multisets.
struct ZipSpec {
  MultiGraph g1;
  VertexId v1 = -1;
  MultiGraph g2;
  VertexId v2 = -1;
  std::vector<std::pair<EdgeId, EdgeId>> sigma;  // edge at v1 -> edge at v2
};

inline void validate_zip_spec(const ZipSpec& spec) {
  if (!spec.g1.has_vertex(spec.v1) || !spec.g2.has_vertex(spec.v2))
    throw std::invalid_argument("zip: distinguished vertex missing");
  const int d1 = spec.g1.degree(spec.v1), d2 = spec.g2.degree(spec.v2);
  if (d1 != d2)
    throw std::invalid_argument("zip: degree mismatch (" + std::to_string(d1) + " vs " +
                                std::to_string(d2) + ")");
  std::vector<EdgeId> dom, rng;
  for (auto& [a, b] : spec.sigma) {
    dom.push_back(a);
    rng.push_back(b);
  }
  std::sort(dom.begin(), dom.end());
  std::sort(rng.begin(), rng.end());
  std::vector<EdgeId> f1 = spec.g1.incident_edges(spec.v1);
  std::vector<EdgeId> f2 = spec.g2.incident_edges(spec.v2);
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end());
  if (dom != f1 || rng != f2)
    throw std::invalid_argument("zip: sigma is not a bijection between the incident edge sets");
}

/// Sigma matching incident edges in ascending id order.
inline ZipSpec make_zip_spec(MultiGraph g1, VertexId v1, MultiGraph g2, VertexId v2) {
  ZipSpec spec{std::move(g1), v1, std::move(g2), v2, {}};
  std::vector<EdgeId> f1 = spec.g1.incident_edges(spec.v1);
  std::vector<EdgeId> f2 = spec.g2.incident_edges(spec.v2);
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end());
  if (f1.size() != f2.size())
    throw std::invalid_argument("zip: degree mismatch (" + std::to_string(f1.size()) + " vs " +
                                std::to_string(f2.size()) + ")");
  for (std::size_t i = 0; i < f1.size(); ++i) spec.sigma.push_back({f1[i], f2[i]});
  return spec;
}

/// Disjoint union of g1 - v1 and g2 - v2 plus one new edge per sigma pair.
/// Side-1 edges are tagged green, side-2 red, the new edges blue; side-2
/// vertex and edge ids are shifted above side 1's.
inline MultiGraph zip(const ZipSpec& spec) {
  validate_zip_spec(spec);
  const VertexId vshift = spec.g1.max_vertex_id() + 1;
  const EdgeId eshift = spec.g1.next_edge_id();

  std::vector<VertexId> vs;
  for (VertexId v : spec.g1.vertices())
    if (v != spec.v1) vs.push_back(v);
  for (VertexId v : spec.g2.vertices())
    if (v != spec.v2) vs.push_back(v + vshift);

  std::vector<Edge> es;
  for (Edge e : spec.g1.edges()) {
    if (e.incident_to(spec.v1)) continue;
    e.color = EdgeColor::green;
    es.push_back(e);
  }
  for (Edge e : spec.g2.edges()) {
    if (e.incident_to(spec.v2)) continue;
    es.push_back(Edge{e.id + eshift, e.u + vshift, e.v + vshift, EdgeColor::red});
  }
  EdgeId blue = eshift + spec.g2.next_edge_id();
  std::vector<std::pair<EdgeId, EdgeId>> sigma(spec.sigma);
  std::sort(sigma.begin(), sigma.end());
  for (auto& [a, b] : sigma) {
    VertexId x = spec.g1.edge(a).other(spec.v1);
    VertexId y = spec.g2.edge(b).other(spec.v2);
    es.push_back(Edge{blue++, x, y + vshift, EdgeColor::blue});
  }
  return MultiGraph::build(std::move(vs), std::move(es));
}

struct SplitResult {
  MultiGraph g1;
  VertexId v1 = -1;
  MultiGraph g2;
  VertexId v2 = -1;
  std::vector<std::pair<EdgeId, EdgeId>> sigma;  // identity on the cut edge ids

  ZipSpec to_zip_spec() const { return ZipSpec{g1, v1, g2, v2, sigma}; }
};

/// Inverse of zip at a minimal edge cut: each factor is its side plus a fresh
/// apex joined along the cut edges (ids preserved, so sigma is the identity).
inline SplitResult split_at_cut(const MultiGraph& g, const EdgeCut& cut) {
  if (!cut_is_valid(g, cut)) throw std::invalid_argument("split_at_cut: invalid cut");
  SplitResult out;
  const VertexId apex = g.max_vertex_id() + 1;
  auto build_side = [&](const std::vector<VertexId>& side) {
    std::vector<VertexId> vs(side);
    vs.push_back(apex);
    auto inside = [&](VertexId v) { return std::binary_search(side.begin(), side.end(), v); };
    std::vector<Edge> es;
    for (Edge e : g.edges()) {
      bool iu = inside(e.u), iv = inside(e.v);
      if (iu && iv) {
        es.push_back(e);
      } else if (iu || iv) {
        if (iu)
          e.v = apex;
        else
          e.u = apex;
        es.push_back(e);
      }
    }
    return MultiGraph::build(std::move(vs), std::move(es));
  };
  out.g1 = build_side(cut.side1);
  out.g2 = build_side(cut.side2);
  out.v1 = apex;
  out.v2 = apex;
  for (EdgeId e : cut.edges) out.sigma.push_back({e, e});
  return out;
}

/// Iterated zip of seed graphs onto the cover vertices of g: for each v in
/// the cover, G_v is zipped at (v, u_v). Cover vertices must have degree 2 or
/// 3 matching the seed attachment degree.
struct ZipCoverSeed {
  MultiGraph graph;
  VertexId attach = -1;
};

inline MultiGraph zip_cover(const MultiGraph& g, const std::vector<VertexId>& cover,
                            const std::vector<std::pair<VertexId, ZipCoverSeed>>& seeds) {
  std::vector<VertexId> s(cover);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (VertexId v : s)
    if (!g.has_vertex(v)) throw std::invalid_argument("zip_cover: cover vertex not in graph");
  for (const Edge& e : g.edges())
    if (!std::binary_search(s.begin(), s.end(), e.u) &&
        !std::binary_search(s.begin(), s.end(), e.v))
      throw std::invalid_argument("zip_cover: S is not a vertex cover (edge " +
                                  std::to_string(e.id) + " uncovered)");
  auto seed_for = [&](VertexId v) -> const ZipCoverSeed& {
    for (auto& [w, sd] : seeds)
      if (w == v) return sd;
    throw std::invalid_argument("zip_cover: no seed for vertex " + std::to_string(v));
  };
  for (VertexId v : s) {
    int d = g.degree(v);
    if (d != 2 && d != 3)
      throw std::invalid_argument("zip_cover: cover vertex " + std::to_string(v) +
                                  " has degree " + std::to_string(d) + ", need 2 or 3");
    const ZipCoverSeed& sd = seed_for(v);
    if (sd.graph.degree(sd.attach) != d)
      throw std::invalid_argument("zip_cover: seed attachment degree mismatch at vertex " +
                                  std::to_string(v));
  }
  MultiGraph cur = g;
  for (VertexId v : s) {
    const ZipCoverSeed& sd = seed_for(v);
    cur = zip(make_zip_spec(cur, v, sd.graph, sd.attach));
  }
  return cur;
}

}  // namespace crosskit
