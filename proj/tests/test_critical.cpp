#include <catch2/catch.hpp>

#include <random>

#include "crosskit/critical.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/named.hpp"
#include "crosskit/zip.hpp"
#include "oracles.hpp"

using namespace crosskit;

namespace {

MultiGraph k33_chain(int t) {
  MultiGraph cur = complete_bipartite(3, 3);
  for (int i = 1; i < t; ++i)
    cur = zip(make_zip_spec(cur, cur.max_vertex_id(), complete_bipartite(3, 3), 0));
  return cur;
}

}  // namespace

TEST_CASE("K5 and K3,3 are crossing-critical", "[critical]") {
  MemoTable memo;
  CriticalityReport k5 = is_crossing_critical(complete_graph(5), {}, &memo);
  CHECK(k5.critical == Tri::yes);
  CHECK(k5.cr.lower == 1);
  CHECK(k5.slack_edges.empty());

  CriticalityReport k33 = is_crossing_critical(complete_bipartite(3, 3), {}, &memo);
  CHECK(k33.critical == Tri::yes);
  CHECK(k33.cr.lower == 1);
}

TEST_CASE("a pendant edge breaks criticality", "[critical]") {
  MultiGraph k5 = complete_graph(5);
  std::vector<VertexId> vs(k5.vertices());
  vs.push_back(5);
  std::vector<Edge> es(k5.edges());
  es.push_back(Edge{k5.next_edge_id(), 0, 5});
  MultiGraph g = MultiGraph::build(std::move(vs), std::move(es));

  CriticalityReport rep = is_crossing_critical(g);
  CHECK(rep.critical == Tri::no);
  REQUIRE(rep.slack_edges.size() == 1);
  CHECK(rep.slack_edges[0] == k5.next_edge_id());
}

TEST_CASE("planar graphs with edges are never critical", "[critical]") {
  CriticalityReport rep = is_crossing_critical(complete_graph(4));
  CHECK(rep.critical == Tri::no);
  CHECK(rep.cr.lower == 0);
  CHECK(rep.slack_edges.size() == 6);
}

TEST_CASE("zip of two critical graphs is critical with the summed value", "[critical]") {
  MemoTable memo;
  MultiGraph z = zip(make_zip_spec(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 0));
  CriticalityReport rep = is_crossing_critical(z, {}, &memo);
  CHECK(rep.critical == Tri::yes);
  CHECK(rep.cr.lower == 2);
}

TEST_CASE("extraction deletes a doubled K5 edge copy", "[critical]") {
  MultiGraph k5 = complete_graph(5);
  std::vector<Edge> es(k5.edges());
  es.push_back(Edge{k5.next_edge_id(), 0, 1});  // double one edge
  MultiGraph doubled = MultiGraph::build(k5.vertices(), std::move(es));

  CriticalExtraction ex = extract_critical_subgraph(doubled, {});
  CHECK(ex.critical);
  CHECK(ex.removed.size() == 1);
  CHECK(oracles::isomorphic(ex.subgraph, k5));
}

TEST_CASE("extraction with no protected edges leaves K5 alone", "[critical]") {
  CriticalExtraction ex = extract_critical_subgraph(complete_graph(5), {});
  CHECK(ex.critical);
  CHECK(ex.removed.empty());
  CHECK(ex.subgraph == complete_graph(5));
}

TEST_CASE("extraction on planar input deletes down to the protected set", "[critical]") {
  MultiGraph k4 = complete_graph(4);
  CriticalExtraction ex = extract_critical_subgraph(k4, {0, 1});
  CHECK(ex.subgraph.edge_count() == 2);
  CHECK_FALSE(ex.critical);  // cr = 0 everywhere; the protected edges block
  CHECK(ex.blocking_protected == std::vector<EdgeId>{0, 1});
}

TEST_CASE("decompose_internally_4ec splits zipped K3,3s back apart", "[critical]") {
  MemoTable memo;
  MultiGraph z = k33_chain(2);
  FactorDecomposition fd = decompose_internally_4ec(z, {}, &memo);
  CHECK(fd.complete);
  REQUIRE(fd.factors.size() == 2);
  for (const MultiGraph& f : fd.factors) {
    CHECK(oracles::isomorphic(f, complete_bipartite(3, 3)));
    CHECK(enumerate_min_cuts(f, 3, true).empty());
    CHECK(is_crossing_critical(f, {}, &memo).critical == Tri::yes);
  }
  CHECK(fd.values == std::vector<int>{1, 1});
}

TEST_CASE("decompose_internally_4ec: K5 stays whole", "[critical]") {
  FactorDecomposition fd = decompose_internally_4ec(complete_graph(5));
  REQUIRE(fd.factors.size() == 1);
  CHECK(oracles::isomorphic(fd.factors[0], complete_graph(5)));
  CHECK(fd.values == std::vector<int>{1});
}

TEST_CASE("decompose_internally_4ec rejects non-critical input", "[critical]") {
  CHECK_THROWS_AS(decompose_internally_4ec(complete_graph(4)), std::invalid_argument);
  // degree check
  CHECK_THROWS_AS(decompose_internally_4ec(path_graph(3)), std::invalid_argument);
}

TEST_CASE("zip_cover validates its preconditions", "[critical]") {
  // K2 cover vertex has degree 1
  MultiGraph k2 = path_graph(2);
  ZipCoverSeed seed{complete_bipartite(3, 3), 0};
  CHECK_THROWS_AS(zip_cover(k2, {0}, {{0, seed}}), std::invalid_argument);

  // S must cover every edge
  MultiGraph c4 = cycle_graph(4);
  ZipCoverSeed deg2{subdivide(complete_bipartite(3, 3), 0), -1};
  CHECK_THROWS_AS(zip_cover(c4, {0}, {{0, deg2}}), std::invalid_argument);
}

TEST_CASE("zip_cover on C4 with planar degree-2 seeds stays planar", "[critical]") {
  MultiGraph c4 = cycle_graph(4);
  // digon apex: path 0-1, 0-2, 1-2 doubled? use triangle with attach of degree 2
  MultiGraph tri = cycle_graph(3);
  std::vector<std::pair<VertexId, ZipCoverSeed>> seeds{
      {0, ZipCoverSeed{tri, 0}},
      {2, ZipCoverSeed{tri, 0}},
  };
  MultiGraph covered = zip_cover(c4, {0, 2}, seeds);
  CHECK(planar(covered));
  CHECK(is_connected(covered));
}

TEST_CASE("zip_cover over a subdivided K5 with K3,3 seeds reaches cr 11", "[critical]") {
  // subdivide every K5 edge; the 10 new degree-2 vertices form a cover
  MultiGraph g = complete_graph(5);
  std::vector<EdgeId> original;
  for (const Edge& e : g.edges()) original.push_back(e.id);
  std::vector<VertexId> cover;
  for (EdgeId e : original) {
    g = subdivide(g, e);
    cover.push_back(g.max_vertex_id());
  }
  MultiGraph seed_graph = subdivide(complete_bipartite(3, 3), 0);
  VertexId attach = seed_graph.max_vertex_id();  // the degree-2 subdivision vertex
  std::vector<std::pair<VertexId, ZipCoverSeed>> seeds;
  for (VertexId v : cover) seeds.push_back({v, ZipCoverSeed{seed_graph, attach}});

  MultiGraph covered = zip_cover(g, cover, seeds);
  MemoTable memo;
  ValueInterval v = engine_value(covered, {}, &memo);
  REQUIRE(v.exact());
  CHECK(v.lower == 11);  // cr(K5) + 10 * cr(K3,3)
}
