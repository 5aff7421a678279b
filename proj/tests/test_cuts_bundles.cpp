#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "crosskit/bundles.hpp"
#include "crosskit/cuts.hpp"
#include "crosskit/flow.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/named.hpp"
#include "crosskit/zip.hpp"
#include "oracles.hpp"

using namespace crosskit;

namespace {

MultiGraph two_triangles_bridge() {
  return make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
}

std::vector<std::vector<EdgeId>> cut_edge_sets(const std::vector<EdgeCut>& cuts) {
  std::vector<std::vector<EdgeId>> out;
  for (const EdgeCut& c : cuts) out.push_back(c.edges);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("the bridge between triangles is a size-1 cut with 3+3 sides", "[cuts]") {
  MultiGraph g = two_triangles_bridge();
  auto cuts = enumerate_min_cuts(g, 3, true);
  bool bridge_found = false;
  for (const EdgeCut& c : cuts)
    if (c.edges == std::vector<EdgeId>{6}) {
      bridge_found = true;
      CHECK(c.side1.size() == 3);
      CHECK(c.side2.size() == 3);
    }
  CHECK(bridge_found);
  // the only other nontrivial cuts pinch off a triangle's far pair
  CHECK(cuts.size() == 3);
  auto size1 = enumerate_min_cuts(g, 1, true);
  REQUIRE(size1.size() == 1);
  CHECK(size1[0].edges == std::vector<EdgeId>{6});
}

TEST_CASE("prism has exactly one nontrivial cut plus six trivial ones", "[cuts]") {
  MultiGraph prism = zip(make_zip_spec(complete_graph(4), 0, complete_graph(4), 0));
  auto nontrivial = enumerate_min_cuts(prism, 3, true);
  REQUIRE(nontrivial.size() == 1);
  CHECK(nontrivial[0].edges.size() == 3);
  CHECK(nontrivial[0].side1.size() == 3);
  CHECK(nontrivial[0].side2.size() == 3);

  auto all = enumerate_min_cuts(prism, 3, false);
  CHECK(all.size() == 7);  // six vertex stars plus the matching
}

TEST_CASE("K4 has no nontrivial cut of size at most 3", "[cuts]") {
  CHECK(enumerate_min_cuts(complete_graph(4), 3, true).empty());
}

TEST_CASE("cut enumeration preconditions", "[cuts]") {
  CHECK_THROWS_AS(enumerate_min_cuts(make_graph(4, {{0, 1}, {2, 3}}), 3, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_min_cuts(complete_graph(4), 5, false), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_min_cuts(complete_graph(4), 0, false), std::invalid_argument);
}

TEST_CASE("enumerated cuts satisfy their invariants and match brute force", "[cuts]") {
  std::mt19937 rng(20260808);
  for (int it = 0; it < 60; ++it) {
    MultiGraph g = oracles::random_connected_graph(rng, 4, 8, 13, 0.25);
    for (int max_size : {2, 3, 4}) {
      for (bool nontrivial : {false, true}) {
        auto cuts = enumerate_min_cuts(g, max_size, nontrivial);
        for (const EdgeCut& c : cuts) CHECK(cut_is_valid(g, c));
        auto ref = oracles::min_cuts(g, max_size, nontrivial);
        INFO("iteration " << it << " max_size " << max_size << " nontrivial " << nontrivial);
        CHECK(cut_edge_sets(cuts) == ref);
      }
    }
  }
}

TEST_CASE("every small cut yields a bundle on each side", "[cuts]") {
  std::mt19937 rng(11);
  std::vector<MultiGraph> corpus{
      two_triangles_bridge(),
      zip(make_zip_spec(complete_graph(4), 0, complete_graph(4), 0)),
      zip(make_zip_spec(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 0)),
  };
  for (int it = 0; it < 25; ++it)
    corpus.push_back(oracles::random_connected_graph(rng, 5, 8, 12, 0.2));
  for (const MultiGraph& g : corpus) {
    for (const EdgeCut& cut : enumerate_min_cuts(g, 3, true)) {
      SplitResult s = split_at_cut(g, cut);
      auto has_bundle_somewhere = [](const MultiGraph& side, VertexId apex) {
        for (VertexId w : side.vertices())
          if (w != apex && find_bundle(side, apex, w)) return true;
        return false;
      };
      INFO("cut of size " << cut.edges.size());
      CHECK(has_bundle_somewhere(s.g1, s.v1));
      CHECK(has_bundle_somewhere(s.g2, s.v2));
    }
  }
}

TEST_CASE("max flow basics", "[cuts]") {
  FlowNetwork net;
  int s = net.add_node(), t = net.add_node();
  net.add_arc(s, t, 1);
  FlowResult r = max_flow(net, s, t);
  CHECK(r.value == 1);
  REQUIRE(r.paths.size() == 1);

  FlowNetwork net2;
  int a = net2.add_node(), b = net2.add_node(), c = net2.add_node(), d = net2.add_node();
  net2.add_arc(a, b, 1);
  net2.add_arc(b, d, 1);
  net2.add_arc(a, c, 1);
  net2.add_arc(c, d, 1);
  CHECK(max_flow(net2, a, d).value == 2);

  // K4 with unit capacities between adjacent s, t: 3 edge-disjoint paths
  FlowNetwork net3;
  int v[4];
  for (int i = 0; i < 4; ++i) v[i] = net3.add_node();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) net3.add_arc(v[i], v[j], 1);
  FlowResult r3 = max_flow(net3, v[0], v[1]);
  CHECK(r3.value == 3);
  CHECK(r3.paths.size() == 3);
}

TEST_CASE("bundles in K4 and stars", "[cuts]") {
  MultiGraph k4 = complete_graph(4);
  for (VertexId w : {1, 2, 3}) {
    auto b = find_bundle(k4, 0, w);
    REQUIRE(b.has_value());
    CHECK(validate_bundle(k4, *b));
    CHECK(b->paths.size() == 3);
    bool has_zero_length = false;
    for (const BundlePath& p : b->paths)
      if (p.edges.empty() && p.start == w) has_zero_length = true;
    CHECK(has_zero_length);
  }

  MultiGraph star = complete_bipartite(1, 3);  // center 0
  CHECK_FALSE(find_bundle(star, 0, 1).has_value());

  MultiGraph k33 = complete_bipartite(3, 3);
  auto b = find_bundle(k33, 0, 3);  // sink in the opposite part
  REQUIRE(b.has_value());
  CHECK(validate_bundle(k33, *b));
  CHECK(oracles::has_bundle(k33, 0, 3));
}

TEST_CASE("flow bundles agree with exhaustive path systems", "[cuts]") {
  std::mt19937 rng(20260808);
  for (int it = 0; it < 60; ++it) {
    MultiGraph g = oracles::random_connected_graph(rng, 4, 7, 12, 0.35);
    std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
    for (int probe = 0; probe < 6; ++probe) {
      VertexId v = g.vertices()[static_cast<std::size_t>(vd(rng))];
      VertexId w = g.vertices()[static_cast<std::size_t>(vd(rng))];
      if (v == w) continue;
      auto mine = find_bundle(g, v, w);
      bool ref = oracles::has_bundle(g, v, w);
      INFO("iteration " << it << " v=" << v << " w=" << w);
      CHECK(mine.has_value() == ref);
      if (mine) CHECK(validate_bundle(g, *mine));
    }
  }
}

namespace {

MultiGraph apex_over_doubled_k4() {
  // v = 4 joined once to a,b,c,d = 0..3; every K4 edge doubled
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      pairs.push_back({i, j});
      pairs.push_back({i, j});
    }
  for (int i = 0; i < 4; ++i) pairs.push_back({i, 4});
  return make_graph(5, pairs);
}

}  // namespace

TEST_CASE("coherent bundles: K5 absent, doubled-K4 apex present", "[cuts]") {
  auto none = find_coherent_bundles(complete_graph(5), 0);
  CHECK_FALSE(none.has_value());
  CHECK_FALSE(oracles::has_coherent_bundles(complete_graph(5), 0));

  MultiGraph apex = apex_over_doubled_k4();
  auto pair = find_coherent_bundles(apex, 4);
  REQUIRE(pair.has_value());
  CHECK(validate_bundle(apex, pair->first));
  CHECK(validate_bundle(apex, pair->second));
  CHECK(pair->first.sink != pair->second.sink);
  std::set<EdgeId> used;
  for (const Bundle* b : {&pair->first, &pair->second})
    for (const BundlePath& p : b->paths)
      for (EdgeId e : p.edges) {
        INFO("edge " << e << " used twice across the pair");
        CHECK(used.insert(e).second);
      }
  CHECK(oracles::has_coherent_bundles(apex, 4));
}

TEST_CASE("coherent bundles absent when the center is a cut vertex", "[cuts]") {
  // two triangles sharing only v=0
  MultiGraph g = make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
  CHECK_FALSE(find_coherent_bundles(g, 0).has_value());
}

TEST_CASE("two-sink flow alone would overcount: parallel star", "[cuts]") {
  // v=0 adjacent to u1=1 and u2=2; u1==w1 (3) doubled, u2==w2 (4) doubled.
  // The doubled-supply two-sink flow reaches 2d, yet no bundle to either
  // sink exists, let alone a coherent pair.
  MultiGraph g = make_graph(5, {{0, 1}, {0, 2}, {1, 3}, {1, 3}, {2, 4}, {2, 4}});
  CHECK_FALSE(find_bundle(g, 0, 3).has_value());
  CHECK_FALSE(find_coherent_bundles(g, 0).has_value());
  CHECK_FALSE(oracles::has_coherent_bundles(g, 0));
}

TEST_CASE("coherent detection agrees with the exhaustive oracle", "[cuts]") {
  std::mt19937 rng(31337);
  int present = 0;
  for (int it = 0; it < 40; ++it) {
    MultiGraph g = oracles::random_connected_graph(rng, 4, 6, 11, 0.5);
    std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
    VertexId v = g.vertices()[static_cast<std::size_t>(vd(rng))];
    auto mine = find_coherent_bundles(g, v);
    bool ref = oracles::has_coherent_bundles(g, v);
    INFO("iteration " << it << " v=" << v);
    CHECK(mine.has_value() == ref);
    if (mine) {
      ++present;
      CHECK(validate_bundle(g, mine->first));
      CHECK(validate_bundle(g, mine->second));
    }
  }
  CHECK(present > 3);
}
