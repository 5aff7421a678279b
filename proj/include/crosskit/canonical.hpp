#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosskit/multigraph.hpp"

namespace crosskit {

/// Exact canonical form of a multigraph up to isomorphism: equal keys iff
/// isomorphic. Edge colors are ignored (two graphs differing only in color
/// tags canonicalize identically). Not a hash.
struct CanonicalKey {
  std::string bytes;
  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
    return a.bytes == b.bytes;
  }
  friend bool operator!=(const CanonicalKey& a, const CanonicalKey& b) {
    return a.bytes != b.bytes;
  }
  friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
    return a.bytes < b.bytes;
  }
};

namespace detail {

// Iterated refinement to a stable vertex partition; class ids are assigned by
// sorted signature order, so they are isomorphism-invariant.
inline std::vector<int> refine_classes(int n, const std::vector<std::vector<int>>& mult) {
  std::vector<int> cls(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    int d = 0;
    for (int u = 0; u < n; ++u) d += mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
    cls[static_cast<std::size_t>(v)] = d;
  }
  auto normalize = [&](std::vector<std::vector<int>>& sigs) {
    std::vector<std::vector<int>> sorted(sigs);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      out[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[static_cast<std::size_t>(v)]) -
          sorted.begin());
    return out;
  };
  {
    std::vector<std::vector<int>> sigs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) sigs[static_cast<std::size_t>(v)] = {cls[static_cast<std::size_t>(v)]};
    cls = normalize(sigs);
  }
  while (true) {
    std::vector<std::vector<int>> sigs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sigs[static_cast<std::size_t>(v)];
      s.push_back(cls[static_cast<std::size_t>(v)]);
      std::vector<std::pair<int, int>> nb;
      for (int u = 0; u < n; ++u) {
        int m = mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
        if (m > 0) nb.push_back({cls[static_cast<std::size_t>(u)], m});
      }
      std::sort(nb.begin(), nb.end());
      for (auto& [c, m] : nb) {
        s.push_back(c);
        s.push_back(m);
      }
    }
    std::vector<int> next = normalize(sigs);
    if (next == cls) break;
    int old_classes = 1 + *std::max_element(cls.begin(), cls.end());
    int new_classes = 1 + *std::max_element(next.begin(), next.end());
    cls = std::move(next);
    if (new_classes == old_classes || new_classes == n) break;
  }
  return cls;
}

}  // namespace detail

inline CanonicalKey canonical_key(const MultiGraph& g, int vertex_cap = 16) {
  const int n = g.vertex_count();
  if (n > vertex_cap)
    throw std::invalid_argument(
        "canonical_key: graph has " + std::to_string(n) + " vertices, over the cap of " +
        std::to_string(vertex_cap) + "; disable memoization for graphs this large");

  VertexIndexer idx(g);
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : g.edges()) {
    int a = idx.index_of(e.u), b = idx.index_of(e.v);
    ++mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    ++mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    if (mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] > 250)
      throw std::invalid_argument("canonical_key: edge multiplicity over 250");
  }
  std::vector<int> cls = detail::refine_classes(n, mult);

  // Minimized string: per position, the vertex class byte then its
  // multiplicities toward previously placed vertices.
  const std::size_t total = static_cast<std::size_t>(n) + static_cast<std::size_t>(n) *
                                                              static_cast<std::size_t>(n - 1) / 2;
  std::string best(total, '\xff');
  std::string cur(total, '\0');
  std::vector<int> placed;
  placed.reserve(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  // Discrete partition: ordering forced by class.
  bool discrete = true;
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (seen[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])]) {
        discrete = false;
        break;
      }
      seen[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])] = 1;
    }
  }
  if (discrete && n > 0) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])] = v;
    std::size_t off = 0;
    for (int k = 0; k < n; ++k) {
      int v = order[static_cast<std::size_t>(k)];
      best[off++] = static_cast<char>(cls[static_cast<std::size_t>(v)]);
      for (int j = 0; j < k; ++j)
        best[off++] = static_cast<char>(
            mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
    }
  } else if (n > 0) {
    std::function<void(int, std::size_t)> dfs = [&](int k, std::size_t off) {
      if (k == n) {
        if (cur < best) best = cur;
        return;
      }
      struct Cand {
        std::string piece;
        int v;
      };
      std::vector<Cand> cands;
      for (int v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        std::string piece;
        piece.reserve(static_cast<std::size_t>(k) + 1);
        piece.push_back(static_cast<char>(cls[static_cast<std::size_t>(v)]));
        for (int j = 0; j < k; ++j)
          piece.push_back(static_cast<char>(
              mult[static_cast<std::size_t>(v)]
                  [static_cast<std::size_t>(placed[static_cast<std::size_t>(j)])]));
        cands.push_back({std::move(piece), v});
      }
      std::sort(cands.begin(), cands.end(),
                [](const Cand& a, const Cand& b) { return a.piece < b.piece; });
      const std::size_t len = static_cast<std::size_t>(k) + 1;
      // homogeneous remainder: every unused vertex has the same piece and the
      // same multiplicity toward each other unused vertex, so all completions
      // spell the same bytes and one branch suffices
      if (cands.size() >= 2) {
        bool homogeneous = true;
        for (std::size_t i = 1; i < cands.size() && homogeneous; ++i)
          if (cands[i].piece != cands[0].piece) homogeneous = false;
        int inner = mult[static_cast<std::size_t>(cands[0].v)][static_cast<std::size_t>(cands[1].v)];
        for (std::size_t i = 0; i < cands.size() && homogeneous; ++i)
          for (std::size_t j = i + 1; j < cands.size() && homogeneous; ++j)
            if (mult[static_cast<std::size_t>(cands[i].v)][static_cast<std::size_t>(cands[j].v)] !=
                inner)
              homogeneous = false;
        if (homogeneous) cands.resize(1);
      }
      for (auto& c : cands) {
        // prune against the current best prefix
        int cmp = std::char_traits<char>::compare(cur.data(), best.data(), off);
        if (cmp == 0)
          cmp = std::char_traits<char>::compare(c.piece.data(), best.data() + off,
                                                std::min(len, total - off));
        if (cmp > 0) continue;
        std::copy(c.piece.begin(), c.piece.end(), cur.begin() + static_cast<std::ptrdiff_t>(off));
        used[static_cast<std::size_t>(c.v)] = 1;
        placed.push_back(c.v);
        dfs(k + 1, off + len);
        placed.pop_back();
        used[static_cast<std::size_t>(c.v)] = 0;
      }
    };
    dfs(0, 0);
  }

  CanonicalKey key;
  key.bytes.reserve(total + 2);
  key.bytes.push_back(static_cast<char>(n));
  key.bytes.push_back(static_cast<char>(g.edge_count() & 0xff));
  key.bytes += best;
  return key;
}

}  // namespace crosskit

template <>
struct std::hash<crosskit::CanonicalKey> {
  std::size_t operator()(const crosskit::CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};
