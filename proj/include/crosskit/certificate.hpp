#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crosskit/multigraph.hpp"
#include "crosskit/planarity.hpp"

namespace crosskit {

/// Addresses an edge of an evolving planarization: base edges by index into
/// the certificate's edge list (step == -1), edges created by an earlier
/// trace step as (step, slot) with slot in 0..3.
struct EdgeRef {
  int step = -1;
  int slot = 0;
  friend bool operator==(const EdgeRef& a, const EdgeRef& b) {
    return a.step == b.step && a.slot == b.slot;
  }
};

/// A replayable planarization trace: applying cross_identify along the trace
/// from the base graph ends in a planar graph, witnessing cr <= value.
struct CrossingCertificate {
  int base_n = 0;
  std::vector<std::pair<int, int>> base_edges;  // dense endpoints, ascending edge-id order
  std::vector<std::pair<EdgeRef, EdgeRef>> trace;
  int claimed_value = 0;
};

inline CrossingCertificate make_certificate(const MultiGraph& base,
                                            const std::vector<std::pair<EdgeId, EdgeId>>& steps) {
  CrossingCertificate cert;
  VertexIndexer idx(base);
  cert.base_n = base.vertex_count();
  std::unordered_map<EdgeId, EdgeRef> ref;
  int i = 0;
  for (const Edge& e : base.edges()) {
    cert.base_edges.push_back({idx.index_of(e.u), idx.index_of(e.v)});
    ref[e.id] = EdgeRef{-1, i++};
  }
  MultiGraph cur = base;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    auto [e, f] = steps[s];
    cert.trace.push_back({ref.at(e), ref.at(f)});
    CrossIdentify ci = cross_identify_traced(cur, e, f);
    for (int slot = 0; slot < 4; ++slot)
      ref[ci.new_edges[static_cast<std::size_t>(slot)]] = EdgeRef{static_cast<int>(s), slot};
    cur = std::move(ci.graph);
  }
  cert.claimed_value = static_cast<int>(cert.trace.size());
  return cert;
}

struct VerifyOutcome {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline VerifyOutcome verify_certificate_detail(const MultiGraph& g,
                                               const CrossingCertificate& cert) {
  VertexIndexer idx(g);
  if (cert.base_n != g.vertex_count()) return {false, "base vertex count mismatch"};
  std::vector<std::pair<int, int>> pairs;
  std::vector<EdgeId> base_ids;
  for (const Edge& e : g.edges()) {
    int a = idx.index_of(e.u), b = idx.index_of(e.v);
    pairs.push_back({a, b});
    base_ids.push_back(e.id);
  }
  if (pairs != cert.base_edges) return {false, "base edge list mismatch"};
  if (cert.claimed_value != static_cast<int>(cert.trace.size()))
    return {false, "claimed value differs from trace length"};

  std::vector<std::array<EdgeId, 4>> created;
  MultiGraph cur = g;
  for (std::size_t s = 0; s < cert.trace.size(); ++s) {
    auto resolve = [&](const EdgeRef& r) -> std::optional<EdgeId> {
      if (r.step < 0) {
        if (r.slot < 0 || r.slot >= static_cast<int>(base_ids.size())) return std::nullopt;
        return base_ids[static_cast<std::size_t>(r.slot)];
      }
      if (r.step >= static_cast<int>(s) || r.slot < 0 || r.slot > 3) return std::nullopt;
      return created[static_cast<std::size_t>(r.step)][static_cast<std::size_t>(r.slot)];
    };
    auto ea = resolve(cert.trace[s].first), eb = resolve(cert.trace[s].second);
    if (!ea || !eb)
      return {false, "step " + std::to_string(s) + ": edge reference out of range"};
    const Edge* pa = cur.find_edge(*ea);
    const Edge* pb = cur.find_edge(*eb);
    if (!pa || !pb)
      return {false, "step " + std::to_string(s) + ": edge already consumed"};
    if (*ea == *eb || pa->adjacent_to(*pb))
      return {false, "step " + std::to_string(s) + ": edges identical or adjacent"};
    CrossIdentify ci = cross_identify_traced(cur, *ea, *eb);
    created.push_back(ci.new_edges);
    cur = std::move(ci.graph);
  }
  if (!planar(cur)) return {false, "replayed graph is not planar"};
  return {true, ""};
}

inline bool verify_certificate(const MultiGraph& g, const CrossingCertificate& cert) {
  return verify_certificate_detail(g, cert).ok;
}

}  // namespace crosskit
