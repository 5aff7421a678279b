#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "crosskit/canonical.hpp"
#include "crosskit/critical.hpp"
#include "crosskit/expansion.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/solver.hpp"
#include "crosskit/zip.hpp"

namespace crosskit {

struct McrResult {
  SolveStatus status = SolveStatus::inconclusive;
  int lower = 0;
  std::optional<int> upper;
  std::optional<Expansion> witness;
  bool class_exact = false;  // provably equal to mcr (cubic inputs)
  long long expansions_total = 0;
  long long expansions_solved = 0;

  int value() const {
    if (status != SolveStatus::exact) throw std::logic_error("McrResult: no exact value");
    return lower;
  }
};

/// Minimum crossing number over the cubic-expansion class of g, with the
/// realizing expansion. For cubic g the stream is {g} itself and the value is
/// mcr(g) exactly; otherwise it is the class-restricted minimum. A cap on the
/// number of expansions degrades the result to a still-valid interval.
inline McrResult minor_crossing_number(const MultiGraph& g, int degree_cap = 6,
                                       const SolverLimits& limits = {},
                                       MemoTable* memo = nullptr,
                                       long long max_expansions = -1) {
  MemoTable local;
  if (!memo) memo = &local;
  McrResult res;
  int maxdeg = 0;
  for (VertexId v : g.vertices()) maxdeg = std::max(maxdeg, g.degree(v));
  res.class_exact = maxdeg <= 3;

  // every expansion has g as a minor, so nonplanar g floors the minimum at 1
  const int floor = planar(g) ? 0 : 1;

  std::set<std::string> seen;
  std::optional<int> best;
  Expansion best_witness;
  int unresolved_low = INT_MAX;
  bool any_unresolved = false;

  res.expansions_total = expansions(g, degree_cap, [&](const Expansion& exp) {
    if (max_expansions >= 0 && res.expansions_solved >= max_expansions) {
      any_unresolved = true;  // unseen expansions could be anything >= floor
      unresolved_low = std::min(unresolved_low, floor);
      return false;
    }
    if (exp.host.vertex_count() <= 16) {
      CanonicalKey k = canonical_key(exp.host);
      if (!seen.insert(k.bytes).second) return true;
    }
    ++res.expansions_solved;
    SolverLimits lim = limits;
    if (best) lim.budget = *best - 1;
    SolveResult r = crossing_number(exp.host, lim, memo);
    switch (r.status) {
      case SolveStatus::exact:
        if (!best || r.value() < *best) {
          best = r.value();
          best_witness = exp;
        }
        break;
      case SolveStatus::exceeds_budget:
        break;  // cannot beat the incumbent
      case SolveStatus::inconclusive:
        any_unresolved = true;
        unresolved_low = std::min(unresolved_low, r.lower);
        break;
    }
    return !(best && *best <= floor);  // at the floor nothing can do better
  });

  if (best && (*best <= floor || !any_unresolved || unresolved_low >= *best)) {
    res.status = SolveStatus::exact;
    res.lower = *best;
    res.upper = *best;
    res.witness = std::move(best_witness);
  } else if (best) {
    res.status = SolveStatus::inconclusive;
    res.lower = std::max(floor, std::min(*best, unresolved_low));
    res.upper = *best;
    res.witness = std::move(best_witness);
  } else {
    res.status = SolveStatus::inconclusive;
    res.lower = std::max(floor, any_unresolved ? unresolved_low : 0);
  }
  return res;
}

struct McrZipReport {
  int degree = 0;
  ValueInterval zip_value, g1_value, g2_value;
  Tri lower_bound_holds = Tri::unknown;  // mcr(zip) >= mcr(g1) + mcr(g2)
  bool equality_expected = false;        // degree <= 3
  Tri equality_holds = Tri::unknown;
};

namespace detail {

inline ValueInterval to_interval(const McrResult& r) {
  return ValueInterval{r.lower, r.upper};
}

}  // namespace detail

/// Evaluates the zip additivity of the minor crossing number: the lower bound
/// must always hold, with equality at degree <= 3.
inline McrZipReport mcr_zip_check(const ZipSpec& spec, int degree_cap = 6,
                                  const SolverLimits& limits = {}, MemoTable* memo = nullptr) {
  MemoTable local;
  if (!memo) memo = &local;
  McrZipReport rep;
  rep.degree = spec.g1.degree(spec.v1);
  rep.equality_expected = rep.degree <= 3;
  MultiGraph zipped = zip(spec);
  rep.zip_value = detail::to_interval(minor_crossing_number(zipped, degree_cap, limits, memo));
  rep.g1_value = detail::to_interval(minor_crossing_number(spec.g1, degree_cap, limits, memo));
  rep.g2_value = detail::to_interval(minor_crossing_number(spec.g2, degree_cap, limits, memo));

  if (rep.zip_value.exact() && rep.g1_value.exact() && rep.g2_value.exact()) {
    int sum = rep.g1_value.lower + rep.g2_value.lower;
    rep.lower_bound_holds = rep.zip_value.lower >= sum ? Tri::yes : Tri::no;
    rep.equality_holds = rep.zip_value.lower == sum ? Tri::yes : Tri::no;
  } else {
    // settle what the intervals allow
    int sum_hi_known = (rep.g1_value.upper && rep.g2_value.upper)
                           ? *rep.g1_value.upper + *rep.g2_value.upper
                           : -1;
    if (sum_hi_known >= 0 && rep.zip_value.lower >= sum_hi_known)
      rep.lower_bound_holds = Tri::yes;
    if (rep.zip_value.upper && *rep.zip_value.upper < rep.g1_value.lower + rep.g2_value.lower)
      rep.lower_bound_holds = Tri::no;
  }
  return rep;
}

/// Standard Cartesian product A x B on dense vertex ids ia*|V(B)|+ib;
/// parallel edges multiply through.
inline MultiGraph cartesian_product(const MultiGraph& a, const MultiGraph& b) {
  VertexIndexer ia(a), ib(b);
  const int nb = ib.size();
  std::vector<VertexId> vs;
  for (int x = 0; x < ia.size(); ++x)
    for (int y = 0; y < nb; ++y) vs.push_back(x * nb + y);
  std::vector<Edge> es;
  EdgeId id = 0;
  for (const Edge& e : a.edges()) {
    int x = ia.index_of(e.u), z = ia.index_of(e.v);
    for (int y = 0; y < nb; ++y) es.push_back(Edge{id++, x * nb + y, z * nb + y});
  }
  for (const Edge& e : b.edges()) {
    int y = ib.index_of(e.u), w = ib.index_of(e.v);
    for (int x = 0; x < ia.size(); ++x) es.push_back(Edge{id++, x * nb + y, x * nb + w});
  }
  return MultiGraph::build(std::move(vs), std::move(es));
}

struct TreeProductBound {
  int total = 0;
  bool all_exact = true;  // false when some term fell back to a lower bound
  std::vector<std::pair<int, int>> terms;  // (tree degree, mcr lower bound)
};

/// Lower bound on mcr(T box G): the sum over tree vertices of
/// mcr(G joined with d_T(v) independent vertices). Interval terms degrade to
/// their lower ends, keeping the output a valid bound.
inline TreeProductBound tree_product_bound(const MultiGraph& tree, const MultiGraph& g,
                                           int degree_cap = 6, const SolverLimits& limits = {},
                                           MemoTable* memo = nullptr,
                                           long long max_expansions = -1) {
  if (!is_connected(tree) || tree.edge_count() != tree.vertex_count() - 1)
    throw std::invalid_argument("tree_product_bound: first argument is not a tree");
  MemoTable local;
  if (!memo) memo = &local;
  TreeProductBound out;
  for (VertexId v : tree.vertices()) {
    int d = tree.degree(v);
    McrResult r =
        minor_crossing_number(join_independent(g, d), degree_cap, limits, memo, max_expansions);
    out.total += r.lower;
    if (r.status != SolveStatus::exact) out.all_exact = false;
    out.terms.push_back({d, r.lower});
  }
  return out;
}

}  // namespace crosskit
