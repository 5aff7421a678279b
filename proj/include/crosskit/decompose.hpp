#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crosskit/bundles.hpp"
#include "crosskit/cuts.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/solver.hpp"
#include "crosskit/zip.hpp"

namespace crosskit {

struct DecompPolicy {
  int max_cut_size = 3;   // 3: exact splits only; 4: lower-bound splits allowed
  bool allow_lb = false;  // must be set for max_cut_size == 4
  int leaf_budget = -1;   // cap each leaf solve; the aggregate still reports soundly
  SolverLimits solver;
};

/// Recursive record of cut splits. A split at a cut of size <= 3 is exact
/// (the aggregate equals cr); a size-4 split gated on coherent bundles at
/// both apexes only certifies a lower bound.
struct DecompositionTree {
  MultiGraph graph;
  std::optional<EdgeCut> cut;  // present on split nodes
  bool exact_split = true;
  std::vector<std::unique_ptr<DecompositionTree>> children;
  std::optional<SolveResult> leaf;  // present on leaves

  int lower = 0;
  std::optional<int> upper;

  bool is_leaf() const { return leaf.has_value(); }
  bool exact() const { return upper.has_value() && *upper == lower; }
};

namespace detail {

inline const EdgeCut* pick_balanced(const std::vector<EdgeCut>& cuts) {
  const EdgeCut* best = nullptr;
  auto key = [](const EdgeCut& c) {
    long diff = std::labs(static_cast<long>(c.side1.size()) - static_cast<long>(c.side2.size()));
    return std::tuple<long, std::size_t, const std::vector<EdgeId>&>(diff, c.edges.size(),
                                                                     c.edges);
  };
  for (const EdgeCut& c : cuts)
    if (!best || key(c) < key(*best)) best = &c;
  return best;
}

inline std::unique_ptr<DecompositionTree> decompose_node(const MultiGraph& g,
                                                         const DecompPolicy& policy,
                                                         MemoTable* memo) {
  auto node = std::make_unique<DecompositionTree>();
  node->graph = g;

  std::vector<EdgeCut> small = enumerate_min_cuts(g, std::min(3, policy.max_cut_size), true);
  const EdgeCut* chosen = pick_balanced(small);
  bool lb_split = false;
  SplitResult split;
  if (chosen) {
    split = split_at_cut(g, *chosen);
  } else if (policy.max_cut_size >= 4 && policy.allow_lb) {
    std::vector<EdgeCut> four;
    for (EdgeCut& c : enumerate_min_cuts(g, 4, true))
      if (c.edges.size() == 4) four.push_back(std::move(c));
    std::sort(four.begin(), four.end(), [](const EdgeCut& a, const EdgeCut& b) {
      long da = std::labs(static_cast<long>(a.side1.size()) - static_cast<long>(a.side2.size()));
      long db = std::labs(static_cast<long>(b.side1.size()) - static_cast<long>(b.side2.size()));
      if (da != db) return da < db;
      return a.edges < b.edges;
    });
    for (const EdgeCut& c : four) {
      SplitResult s = split_at_cut(g, c);
      if (find_coherent_bundles(s.g1, s.v1) && find_coherent_bundles(s.g2, s.v2)) {
        chosen = &c;
        split = std::move(s);
        lb_split = true;
        node->cut = c;
        break;
      }
    }
  }

  if (!chosen) {
    SolverLimits lim = policy.solver;
    lim.budget = policy.leaf_budget;
    SolveResult r = crossing_number(g, lim, memo);
    node->lower = r.lower;
    node->upper = r.upper;
    node->leaf = std::move(r);
    return node;
  }

  if (!lb_split) node->cut = *chosen;
  node->exact_split = !lb_split;
  node->children.push_back(decompose_node(split.g1, policy, memo));
  node->children.push_back(decompose_node(split.g2, policy, memo));
  node->lower = node->children[0]->lower + node->children[1]->lower;
  if (!lb_split && node->children[0]->upper && node->children[1]->upper)
    node->upper = *node->children[0]->upper + *node->children[1]->upper;
  return node;
}

}  // namespace detail

/// Divide and conquer on small cuts: split at the most vertex-balanced
/// nontrivial minimal cut of size <= 3 (exact by additivity), optionally at
/// size-4 cuts whose factors both carry coherent bundles (lower bound only),
/// and solve cut-free leaves exactly.
inline DecompositionTree cr_via_decomposition(const MultiGraph& g,
                                              const DecompPolicy& policy = {},
                                              MemoTable* memo = nullptr) {
  if (!is_connected(g))
    throw std::invalid_argument("cr_via_decomposition: graph must be connected");
  if (policy.max_cut_size == 4 && !policy.allow_lb)
    throw std::invalid_argument("cr_via_decomposition: size-4 splits require allow_lb");
  if (policy.max_cut_size < 3 || policy.max_cut_size > 4)
    throw std::invalid_argument("cr_via_decomposition: max_cut_size must be 3 or 4");
  MemoTable local;
  if (!memo) memo = &local;
  return std::move(*detail::decompose_node(g, policy, memo));
}

/// Engine-backed crossing-number interval: decomposition per connected
/// component, summed. Exact whenever every split is exact and every leaf
/// solved to completion.
struct ValueInterval {
  int lower = 0;
  std::optional<int> upper;
  bool exact() const { return upper.has_value() && *upper == lower; }
};

inline ValueInterval engine_value(const MultiGraph& g, const DecompPolicy& policy = {},
                                  MemoTable* memo = nullptr) {
  MemoTable local;
  if (!memo) memo = &local;
  ValueInterval total{0, 0};
  for (auto& comp : connected_components(g)) {
    MultiGraph sub = induced_subgraph(g, comp);
    if (sub.edge_count() == 0) continue;
    DecompositionTree t = cr_via_decomposition(sub, policy, memo);
    total.lower += t.lower;
    if (total.upper && t.upper)
      *total.upper += *t.upper;
    else
      total.upper.reset();
  }
  return total;
}

}  // namespace crosskit
