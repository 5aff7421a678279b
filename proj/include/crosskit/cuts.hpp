#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "crosskit/multigraph.hpp"

namespace crosskit {

/// A minimal edge cut: F is exactly the set of edges between the two sides,
/// and both sides induce connected subgraphs.
struct EdgeCut {
  std::vector<EdgeId> edges;     // sorted
  std::vector<VertexId> side1;   // sorted; contains the smallest vertex id
  std::vector<VertexId> side2;   // sorted
};

inline bool cut_is_valid(const MultiGraph& g, const EdgeCut& cut) {
  std::vector<VertexId> all(cut.side1);
  all.insert(all.end(), cut.side2.begin(), cut.side2.end());
  std::sort(all.begin(), all.end());
  if (all != g.vertices()) return false;
  if (cut.side1.empty() || cut.side2.empty()) return false;
  auto in1 = [&](VertexId v) {
    return std::binary_search(cut.side1.begin(), cut.side1.end(), v);
  };
  std::vector<EdgeId> boundary;
  for (const Edge& e : g.edges())
    if (in1(e.u) != in1(e.v)) boundary.push_back(e.id);
  std::sort(boundary.begin(), boundary.end());
  std::vector<EdgeId> cut_sorted(cut.edges);
  std::sort(cut_sorted.begin(), cut_sorted.end());
  if (boundary != cut_sorted) return false;
  return is_connected(induced_subgraph(g, cut.side1)) &&
         is_connected(induced_subgraph(g, cut.side2));
}

/// All minimal edge cuts of size <= max_size (max_size <= 4), each reported
/// once, by brute force over edge subsets with connectivity checks. With
/// nontrivial_only, cuts isolating a single vertex are suppressed.
inline std::vector<EdgeCut> enumerate_min_cuts(const MultiGraph& g, int max_size,
                                               bool nontrivial_only) {
  if (max_size < 1 || max_size > 4)
    throw std::invalid_argument("enumerate_min_cuts: max_size must be in 1..4");
  if (!is_connected(g))
    throw std::invalid_argument("enumerate_min_cuts: graph must be connected");

  VertexIndexer idx(g);
  const int n = idx.size();
  const int m = g.edge_count();
  const auto& edges = g.edges();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    int a = idx.index_of(edges[static_cast<std::size_t>(i)].u);
    int b = idx.index_of(edges[static_cast<std::size_t>(i)].v);
    adj[static_cast<std::size_t>(a)].push_back({b, i});
    adj[static_cast<std::size_t>(b)].push_back({a, i});
  }

  std::vector<char> skip(static_cast<std::size_t>(m), 0);
  std::vector<int> comp(static_cast<std::size_t>(n));
  std::vector<int> stack;

  // components of g minus the skipped edges; returns component count
  auto split_components = [&]() {
    std::fill(comp.begin(), comp.end(), -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[static_cast<std::size_t>(s)] >= 0) continue;
      comp[static_cast<std::size_t>(s)] = c;
      stack.assign(1, s);
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [y, ei] : adj[static_cast<std::size_t>(x)]) {
          if (skip[static_cast<std::size_t>(ei)]) continue;
          if (comp[static_cast<std::size_t>(y)] < 0) {
            comp[static_cast<std::size_t>(y)] = c;
            stack.push_back(y);
          }
        }
      }
      ++c;
    }
    return c;
  };

  std::vector<EdgeCut> out;
  std::vector<int> pick;
  auto consider = [&]() {
    if (split_components() != 2) return;
    for (int p : pick) {
      int a = idx.index_of(edges[static_cast<std::size_t>(p)].u);
      int b = idx.index_of(edges[static_cast<std::size_t>(p)].v);
      if (comp[static_cast<std::size_t>(a)] == comp[static_cast<std::size_t>(b)]) return;
    }
    EdgeCut cut;
    int side_of_zero = comp[0];
    for (int v = 0; v < n; ++v) {
      if (comp[static_cast<std::size_t>(v)] == side_of_zero)
        cut.side1.push_back(idx.id_of(v));
      else
        cut.side2.push_back(idx.id_of(v));
    }
    if (nontrivial_only && (cut.side1.size() == 1 || cut.side2.size() == 1)) return;
    for (int p : pick) cut.edges.push_back(edges[static_cast<std::size_t>(p)].id);
    std::sort(cut.edges.begin(), cut.edges.end());
    out.push_back(std::move(cut));
  };

  std::function<void(int, int)> choose = [&](int start, int remaining) {
    if (!pick.empty()) consider();
    if (remaining == 0) return;
    for (int i = start; i < m; ++i) {
      pick.push_back(i);
      skip[static_cast<std::size_t>(i)] = 1;
      choose(i + 1, remaining - 1);
      skip[static_cast<std::size_t>(i)] = 0;
      pick.pop_back();
    }
  };
  choose(0, max_size);

  std::sort(out.begin(), out.end(), [](const EdgeCut& a, const EdgeCut& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
  return out;
}

}  // namespace crosskit
