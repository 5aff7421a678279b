#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crosskit/decompose.hpp"
#include "crosskit/multigraph.hpp"

namespace crosskit {

enum class Tri { yes, no, unknown };

namespace detail {

// cr(g) <= cap, decided through the decomposition engine with per-leaf
// budgets (sound: a leaf that exceeds the cap already pushes the sum over).
inline Tri cr_at_most(const MultiGraph& g, int cap, const DecompPolicy& base, MemoTable* memo) {
  DecompPolicy p = base;
  p.leaf_budget = cap;
  ValueInterval v = engine_value(g, p, memo);
  if (v.exact()) return v.lower <= cap ? Tri::yes : Tri::no;
  if (v.lower > cap) return Tri::no;
  if (v.upper && *v.upper <= cap) return Tri::yes;
  return Tri::unknown;
}

}  // namespace detail

struct CriticalityReport {
  Tri critical = Tri::unknown;
  ValueInterval cr;
  std::vector<EdgeId> slack_edges;  // deletions that keep cr unchanged
};

/// Is every edge deletion strictly cr-decreasing? Uses budget queries
/// cr(G - e) <= cr(G) - 1 through the decomposition engine.
inline CriticalityReport is_crossing_critical(const MultiGraph& g,
                                              const DecompPolicy& policy = {},
                                              MemoTable* memo = nullptr) {
  MemoTable local;
  if (!memo) memo = &local;
  CriticalityReport rep;
  rep.cr = engine_value(g, policy, memo);
  if (!rep.cr.exact()) {
    rep.critical = Tri::unknown;
    return rep;
  }
  const int c = rep.cr.lower;
  bool unknown = false;
  for (const Edge& e : g.edges()) {
    Tri q = detail::cr_at_most(delete_edge(g, e.id), c - 1, policy, memo);
    if (q == Tri::no) rep.slack_edges.push_back(e.id);
    if (q == Tri::unknown) unknown = true;
  }
  if (!rep.slack_edges.empty())
    rep.critical = Tri::no;
  else
    rep.critical = unknown ? Tri::unknown : Tri::yes;
  return rep;
}

struct CriticalExtraction {
  MultiGraph subgraph;
  bool critical = false;
  Tri verdict = Tri::unknown;
  std::vector<EdgeId> blocking_protected;  // protected edges whose deletion keeps cr
  std::vector<EdgeId> removed;
};

/// Greedily delete unprotected edges whose removal keeps cr (ascending edge
/// id; deletability is monotone under deletion, so one pass reaches the
/// fixpoint), then report whether the result is crossing-critical and which
/// protected edges block it if not.
inline CriticalExtraction extract_critical_subgraph(const MultiGraph& g,
                                                    const std::vector<EdgeId>& protected_edges,
                                                    const DecompPolicy& policy = {},
                                                    MemoTable* memo = nullptr) {
  MemoTable local;
  if (!memo) memo = &local;
  CriticalExtraction out;
  ValueInterval base = engine_value(g, policy, memo);
  if (!base.exact()) {
    out.subgraph = g;
    out.verdict = Tri::unknown;
    return out;
  }
  const int c = base.lower;
  auto is_protected = [&](EdgeId e) {
    return std::find(protected_edges.begin(), protected_edges.end(), e) != protected_edges.end();
  };
  MultiGraph cur = g;
  bool hit_unknown = false;
  std::vector<EdgeId> all_ids;
  for (const Edge& e : g.edges()) all_ids.push_back(e.id);
  for (EdgeId e : all_ids) {
    if (is_protected(e)) continue;
    MultiGraph trial = delete_edge(cur, e);
    Tri q = detail::cr_at_most(trial, c - 1, policy, memo);
    if (q == Tri::unknown) {
      hit_unknown = true;
    } else if (q == Tri::no) {
      // deletion keeps cr == c: the edge is removable
      cur = std::move(trial);
      out.removed.push_back(e);
    }
  }
  for (EdgeId e : protected_edges) {
    if (!cur.find_edge(e)) continue;
    Tri q = detail::cr_at_most(delete_edge(cur, e), c - 1, policy, memo);
    if (q == Tri::no) out.blocking_protected.push_back(e);
    if (q == Tri::unknown) hit_unknown = true;
  }
  out.subgraph = std::move(cur);
  if (hit_unknown) {
    out.verdict = Tri::unknown;
  } else {
    out.critical = out.blocking_protected.empty();
    out.verdict = out.critical ? Tri::yes : Tri::no;
  }
  return out;
}

struct FactorDecomposition {
  std::vector<MultiGraph> factors;
  std::vector<int> values;
  bool complete = true;  // false when some verdict degraded to unknown
};

/// Split at nontrivial cuts of size <= 3, extracting the critical subgraph of
/// each factor (the side edges are kept; only apex edges are candidates for
/// deletion), until every factor is free of nontrivial small cuts.
inline FactorDecomposition decompose_internally_4ec(const MultiGraph& g,
                                                    const DecompPolicy& policy = {},
                                                    MemoTable* memo = nullptr) {
  MemoTable local;
  if (!memo) memo = &local;
  if (!is_connected(g))
    throw std::invalid_argument("decompose_internally_4ec: graph must be connected");
  for (VertexId v : g.vertices())
    if (g.degree(v) < 3)
      throw std::invalid_argument("decompose_internally_4ec: vertex " + std::to_string(v) +
                                  " has degree under 3");
  CriticalityReport crit = is_crossing_critical(g, policy, memo);
  if (crit.critical == Tri::no)
    throw std::invalid_argument("decompose_internally_4ec: input is not crossing-critical");

  FactorDecomposition out;
  if (crit.critical == Tri::unknown) out.complete = false;

  std::vector<MultiGraph> work{g};
  while (!work.empty()) {
    MultiGraph cur = std::move(work.back());
    work.pop_back();
    if (!is_connected(cur)) {
      for (auto& comp : connected_components(cur)) {
        MultiGraph sub = induced_subgraph(cur, comp);
        if (sub.edge_count() > 0) work.push_back(std::move(sub));
      }
      continue;
    }
    std::vector<EdgeCut> cuts = enumerate_min_cuts(cur, 3, true);
    const EdgeCut* chosen = detail::pick_balanced(cuts);
    if (!chosen) {
      ValueInterval v = engine_value(cur, policy, memo);
      if (!v.exact()) out.complete = false;
      out.values.push_back(v.lower);
      out.factors.push_back(std::move(cur));
      continue;
    }
    SplitResult split = split_at_cut(cur, *chosen);
    for (MultiGraph* side : {&split.g1, &split.g2}) {
      VertexId apex = (side == &split.g1) ? split.v1 : split.v2;
      std::vector<EdgeId> keep;  // protect the side's own edges per the H_i containment
      for (const Edge& e : side->edges())
        if (!e.incident_to(apex)) keep.push_back(e.id);
      CriticalExtraction ex = extract_critical_subgraph(*side, keep, policy, memo);
      if (ex.verdict == Tri::unknown) out.complete = false;
      work.push_back(std::move(ex.subgraph));
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const MultiGraph& a, const MultiGraph& b) {
              if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
              return a.edge_count() < b.edge_count();
            });
  out.values.clear();
  for (const MultiGraph& f : out.factors) {
    ValueInterval v = engine_value(f, policy, memo);
    if (!v.exact()) out.complete = false;
    out.values.push_back(v.lower);
  }
  return out;
}

}  // namespace crosskit
