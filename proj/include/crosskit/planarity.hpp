#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crosskit/multigraph.hpp"

namespace crosskit {

namespace detail {

// Demoucron-style planar embedding of one biconnected simple graph in dense
// local vertex space (at most 64 vertices per block). When collect_faces is
// set and the block is planar, faces() holds the directed boundary walks of
// an embedding: every edge appears exactly once per direction.
class DmpBlock {
 public:
  DmpBlock(std::vector<int> verts, std::vector<std::pair<int, int>> edges, bool collect_faces)
      : verts_(std::move(verts)), edges_(std::move(edges)), collect_(collect_faces) {
    n_ = static_cast<int>(verts_.size());
    if (n_ > 64) throw std::invalid_argument("planarity: block exceeds 64 vertices");
  }

  bool run() {
    const int m = static_cast<int>(edges_.size());
    if (m == 1) {
      if (collect_) faces_.push_back({edges_[0].first, edges_[0].second});
      return true;
    }
    if (n_ >= 3 && m > 3 * n_ - 6) return false;
    if (!collect_ && m <= n_ + 2) return true;  // cycle space dim <= 3: planar

    adj_.assign(static_cast<std::size_t>(n_), {});
    for (int i = 0; i < m; ++i) {
      adj_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(i)].first)].push_back(i);
      adj_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(i)].second)].push_back(i);
    }
    edge_done_.assign(static_cast<std::size_t>(m), 0);
    vert_done_ = 0;

    std::vector<int> cyc = find_cycle();
    faces_.push_back(cyc);
    faces_.emplace_back(cyc.rbegin(), cyc.rend());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      vert_done_ |= (1ULL << cyc[i]);
      mark_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
    }
    done_count_ = static_cast<int>(cyc.size());

    while (done_count_ < m) {
      if (!embed_one()) return false;
    }
    return true;
  }

  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<int>& verts() const { return verts_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int other(int eidx, int v) const {
    const auto& e = edges_[static_cast<std::size_t>(eidx)];
    return e.first == v ? e.second : e.first;
  }

  void mark_edge(int u, int v) {
    for (int ei : adj_[static_cast<std::size_t>(u)])
      if (other(ei, u) == v && !edge_done_[static_cast<std::size_t>(ei)]) {
        edge_done_[static_cast<std::size_t>(ei)] = 1;
        ++done_count_;
        return;
      }
    throw std::logic_error("planarity: walk edge not found");
  }

  std::vector<int> find_cycle() const {
    std::vector<int> parent(static_cast<std::size_t>(n_), -2);
    std::vector<int> num(static_cast<std::size_t>(n_), -1);
    struct Frame {
      int v;
      std::size_t next;
    };
    std::vector<Frame> st;
    st.push_back({0, 0});
    parent[0] = -1;
    num[0] = 0;
    int timer = 1;
    while (!st.empty()) {
      int v = st.back().v;
      auto& lst = adj_[static_cast<std::size_t>(v)];
      if (st.back().next >= lst.size()) {
        st.pop_back();
        continue;
      }
      int ei = lst[st.back().next++];
      int y = other(ei, v);
      if (y == parent[static_cast<std::size_t>(v)]) continue;
      if (num[static_cast<std::size_t>(y)] < 0) {
        parent[static_cast<std::size_t>(y)] = v;
        num[static_cast<std::size_t>(y)] = timer++;
        st.push_back({y, 0});
      } else if (num[static_cast<std::size_t>(y)] < num[static_cast<std::size_t>(v)]) {
        std::vector<int> path{v};
        int t = v;
        while (t != y) {
          t = parent[static_cast<std::size_t>(t)];
          path.push_back(t);
        }
        return path;
      }
    }
    throw std::logic_error("planarity: biconnected block has no cycle");
  }

  struct Fragment {
    std::vector<int> edge_idxs;
    std::uint64_t attach = 0;
    bool chord = false;
  };

  std::uint64_t face_mask(const std::vector<int>& f) const {
    std::uint64_t m = 0;
    for (int v : f) m |= (1ULL << v);
    return m;
  }

  bool embed_one() {
    std::vector<Fragment> frags;
    const int m = static_cast<int>(edges_.size());
    std::vector<int> comp(static_cast<std::size_t>(n_), -1);
    for (int v = 0; v < n_; ++v) {
      if ((vert_done_ >> v) & 1) continue;
      if (comp[static_cast<std::size_t>(v)] >= 0) continue;
      if (adj_[static_cast<std::size_t>(v)].empty()) continue;
      Fragment fr;
      int ci = static_cast<int>(frags.size());
      std::vector<int> stack{v};
      comp[static_cast<std::size_t>(v)] = ci;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int ei : adj_[static_cast<std::size_t>(x)]) {
          int y = other(ei, x);
          fr.edge_idxs.push_back(ei);
          if ((vert_done_ >> y) & 1) {
            fr.attach |= (1ULL << y);
          } else if (comp[static_cast<std::size_t>(y)] < 0) {
            comp[static_cast<std::size_t>(y)] = ci;
            stack.push_back(y);
          }
        }
      }
      std::sort(fr.edge_idxs.begin(), fr.edge_idxs.end());
      fr.edge_idxs.erase(std::unique(fr.edge_idxs.begin(), fr.edge_idxs.end()),
                         fr.edge_idxs.end());
      frags.push_back(std::move(fr));
    }
    for (int ei = 0; ei < m; ++ei) {
      if (edge_done_[static_cast<std::size_t>(ei)]) continue;
      const auto& e = edges_[static_cast<std::size_t>(ei)];
      bool eu = (vert_done_ >> e.first) & 1, ev = (vert_done_ >> e.second) & 1;
      if (eu && ev) {
        Fragment fr;
        fr.edge_idxs = {ei};
        fr.attach = (1ULL << e.first) | (1ULL << e.second);
        fr.chord = true;
        frags.push_back(std::move(fr));
      }
    }
    if (frags.empty()) throw std::logic_error("planarity: pending edges but no fragment");

    int chosen = 0, chosen_face = -1;
    for (std::size_t fi = 0; fi < frags.size(); ++fi) {
      int count = 0, last = -1;
      for (std::size_t k = 0; k < faces_.size(); ++k) {
        if ((frags[fi].attach & ~face_mask(faces_[k])) == 0) {
          ++count;
          last = static_cast<int>(k);
        }
      }
      if (count == 0) return false;
      if (fi == 0) chosen_face = last;
      if (count == 1) {
        chosen = static_cast<int>(fi);
        chosen_face = last;
        break;
      }
    }

    std::vector<int> path = fragment_path(frags[static_cast<std::size_t>(chosen)]);
    embed_path(path, chosen_face);
    return true;
  }

  std::vector<int> fragment_path(const Fragment& fr) const {
    if (fr.chord) {
      const auto& e = edges_[static_cast<std::size_t>(fr.edge_idxs[0])];
      return {e.first, e.second};
    }
    int a1 = -1;
    for (int v = 0; v < n_; ++v)
      if ((fr.attach >> v) & 1) {
        a1 = v;
        break;
      }
    std::vector<int> prev(static_cast<std::size_t>(n_), -2);
    std::vector<int> queue;
    for (int ei : fr.edge_idxs) {
      const auto& e = edges_[static_cast<std::size_t>(ei)];
      int to = -1;
      if (e.first == a1) to = e.second;
      if (e.second == a1) to = e.first;
      if (to < 0 || ((vert_done_ >> to) & 1)) continue;
      if (prev[static_cast<std::size_t>(to)] == -2) {
        prev[static_cast<std::size_t>(to)] = a1;
        queue.push_back(to);
      }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int x = queue[qi];
      for (int ei : adj_[static_cast<std::size_t>(x)]) {
        int y = other(ei, x);
        if ((vert_done_ >> y) & 1) {
          if (y != a1) {
            std::vector<int> path{y, x};
            int t = x;
            while (prev[static_cast<std::size_t>(t)] != a1) {
              t = prev[static_cast<std::size_t>(t)];
              path.push_back(t);
            }
            path.push_back(a1);
            std::reverse(path.begin(), path.end());
            return path;
          }
          continue;
        }
        if (prev[static_cast<std::size_t>(y)] == -2) {
          prev[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        }
      }
    }
    throw std::logic_error("planarity: fragment with one attachment in a biconnected block");
  }

  void embed_path(const std::vector<int>& path, int face_idx) {
    const int a1 = path.front(), a2 = path.back();
    std::vector<int> f = faces_[static_cast<std::size_t>(face_idx)];
    const int L = static_cast<int>(f.size());
    int i = -1, j = -1;
    for (int k = 0; k < L; ++k) {
      if (f[static_cast<std::size_t>(k)] == a1) i = k;
      if (f[static_cast<std::size_t>(k)] == a2) j = k;
    }
    std::vector<int> f1, f2;
    for (int k = i; k != j; k = (k + 1) % L) f1.push_back(f[static_cast<std::size_t>(k)]);
    f1.push_back(a2);
    for (int k = j; k != i; k = (k + 1) % L) f2.push_back(f[static_cast<std::size_t>(k)]);
    f2.push_back(a1);
    for (int k = static_cast<int>(path.size()) - 2; k >= 1; --k)
      f1.push_back(path[static_cast<std::size_t>(k)]);
    for (int k = 1; k + 1 < static_cast<int>(path.size()); ++k)
      f2.push_back(path[static_cast<std::size_t>(k)]);
    faces_[static_cast<std::size_t>(face_idx)] = std::move(f1);
    faces_.push_back(std::move(f2));

    for (std::size_t k = 0; k + 1 < path.size(); ++k) mark_edge(path[k], path[k + 1]);
    for (int v : path) vert_done_ |= (1ULL << v);
  }

  std::vector<int> verts_;
  std::vector<std::pair<int, int>> edges_;
  bool collect_;
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<char> edge_done_;
  int done_count_ = 0;
  std::uint64_t vert_done_ = 0;
  std::vector<std::vector<int>> faces_;
};

struct SimpleView {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // deduped, dense indices
  std::vector<EdgeId> representative;      // original edge id per simple edge
};

inline SimpleView simple_view(const MultiGraph& g) {
  SimpleView sv;
  VertexIndexer idx(g);
  sv.n = idx.size();
  for (const Edge& e : g.edges()) {
    int a = idx.index_of(e.u), b = idx.index_of(e.v);
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (std::find(sv.edges.begin(), sv.edges.end(), key) == sv.edges.end()) {
      sv.edges.push_back(key);
      sv.representative.push_back(e.id);
    }
  }
  return sv;
}

// Biconnected components (as edge-index lists) of a dense simple graph.
inline std::vector<std::vector<int>> biconnected_blocks(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[static_cast<std::size_t>(i)];
    adj[static_cast<std::size_t>(e.first)].push_back({e.second, i});
    adj[static_cast<std::size_t>(e.second)].push_back({e.first, i});
  }
  std::vector<int> num(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> estack;
  std::vector<std::vector<int>> blocks;
  int timer = 0;

  struct Frame {
    int v, parent_edge;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (num[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<Frame> st;
    st.push_back({root, -1, 0});
    num[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!st.empty()) {
      int v = st.back().v;
      int pe = st.back().parent_edge;
      auto& lst = adj[static_cast<std::size_t>(v)];
      if (st.back().next < lst.size()) {
        auto [w, ei] = lst[st.back().next++];
        if (ei == pe) continue;
        if (num[static_cast<std::size_t>(w)] < 0) {
          estack.push_back(ei);
          num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          st.push_back({w, ei, 0});
        } else if (num[static_cast<std::size_t>(w)] < num[static_cast<std::size_t>(v)]) {
          estack.push_back(ei);
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
        }
      } else {
        st.pop_back();
        if (st.empty()) continue;
        int u = st.back().v;
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] >= num[static_cast<std::size_t>(u)]) {
          blocks.emplace_back();
          while (true) {
            int ei = estack.back();
            estack.pop_back();
            blocks.back().push_back(ei);
            if (ei == pe) break;
          }
        }
      }
    }
  }
  return blocks;
}

// Planarity of a dense simple graph. Optionally returns the per-block DMP
// embeddings (blocks in biconnected_blocks order).
inline bool planar_simple(int n, const std::vector<std::pair<int, int>>& edges,
                          std::vector<DmpBlock>* embeddings = nullptr) {
  if (n >= 3 && static_cast<long>(edges.size()) > 3L * n - 6) return false;
  for (const auto& blk : biconnected_blocks(n, edges)) {
    std::vector<int> verts;
    verts.reserve(blk.size() * 2);
    for (int ei : blk) {
      verts.push_back(edges[static_cast<std::size_t>(ei)].first);
      verts.push_back(edges[static_cast<std::size_t>(ei)].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto lidx = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    std::vector<std::pair<int, int>> local;
    local.reserve(blk.size());
    for (int ei : blk)
      local.push_back({lidx(edges[static_cast<std::size_t>(ei)].first),
                       lidx(edges[static_cast<std::size_t>(ei)].second)});
    DmpBlock dmp(std::move(verts), std::move(local), embeddings != nullptr);
    if (!dmp.run()) return false;
    if (embeddings) embeddings->push_back(std::move(dmp));
  }
  return true;
}

}  // namespace detail

/// Planarity verdict; parallel edges never change it.
inline bool planar(const MultiGraph& g) {
  if (g.vertex_count() <= 4) return true;
  detail::SimpleView sv = detail::simple_view(g);
  return detail::planar_simple(sv.n, sv.edges);
}

/// Edge ids of a Kuratowski (K5 or K3,3) subdivision inside a nonplanar
/// graph: one deletion pass leaves an edge-minimal nonplanar subgraph, which
/// is exactly such a subdivision.
inline std::vector<EdgeId> kuratowski_edges(const MultiGraph& g) {
  detail::SimpleView sv = detail::simple_view(g);
  if (detail::planar_simple(sv.n, sv.edges))
    throw std::invalid_argument("kuratowski_edges: graph is planar");
  std::vector<std::pair<int, int>> cur = sv.edges;
  std::vector<EdgeId> ids = sv.representative;
  std::size_t i = 0;
  while (i < cur.size()) {
    std::vector<std::pair<int, int>> trial = cur;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!detail::planar_simple(sv.n, trial)) {
      cur = std::move(trial);
      ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return ids;
}

struct PlanarityResult {
  bool planar = false;
  // Cyclic edge order around each vertex (only when planar).
  std::vector<std::pair<VertexId, std::vector<EdgeId>>> rotation;
  // A Kuratowski subdivision witness (only when nonplanar).
  std::vector<EdgeId> kuratowski;
};

/// Full verdict: a combinatorial embedding on success, a Kuratowski witness
/// on failure.
inline PlanarityResult is_planar(const MultiGraph& g) {
  PlanarityResult out;
  detail::SimpleView sv = detail::simple_view(g);
  std::vector<detail::DmpBlock> blocks;
  if (!detail::planar_simple(sv.n, sv.edges, &blocks)) {
    out.planar = false;
    out.kuratowski = kuratowski_edges(g);
    return out;
  }
  out.planar = true;

  VertexIndexer idx(g);
  std::vector<std::vector<int>> rot(static_cast<std::size_t>(sv.n));  // simple-edge indices
  auto simple_index = [&](int a, int b) {
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    for (std::size_t i = 0; i < sv.edges.size(); ++i)
      if (sv.edges[i] == key) return static_cast<int>(i);
    throw std::logic_error("is_planar: unknown simple edge");
  };

  for (const auto& blk : blocks) {
    const auto& verts = blk.verts();
    const int L = static_cast<int>(verts.size());
    // dart successor pairs per local vertex: arriving from a, leave toward c
    std::vector<std::vector<std::pair<int, int>>> succ(static_cast<std::size_t>(L));
    for (const auto& f : blk.faces()) {
      const int fl = static_cast<int>(f.size());
      for (int k = 0; k < fl; ++k) {
        int a = f[static_cast<std::size_t>(k)];
        int b = f[static_cast<std::size_t>((k + 1) % fl)];
        int c = f[static_cast<std::size_t>((k + 2) % fl)];
        succ[static_cast<std::size_t>(b)].push_back({a, c});
      }
    }
    for (int lv = 0; lv < L; ++lv) {
      auto& pairs = succ[static_cast<std::size_t>(lv)];
      if (pairs.empty()) continue;
      int cur = pairs[0].first;  // block-local neighbor
      for (std::size_t step = 0; step < pairs.size(); ++step) {
        rot[static_cast<std::size_t>(verts[static_cast<std::size_t>(lv)])].push_back(
            simple_index(verts[static_cast<std::size_t>(lv)],
                         verts[static_cast<std::size_t>(cur)]));
        int nxt = -1;
        for (auto& [a, c] : pairs)
          if (a == cur) {
            nxt = c;
            break;
          }
        cur = nxt;
      }
    }
  }

  // Expand to edge ids; parallel copies nest right next to their
  // representative (forward order at the lower endpoint, reversed at the
  // other) so the rotation stays planar.
  for (int dv = 0; dv < sv.n; ++dv) {
    VertexId v = idx.id_of(dv);
    std::vector<EdgeId> cyc;
    for (int sei : rot[static_cast<std::size_t>(dv)]) {
      EdgeId rep = sv.representative[static_cast<std::size_t>(sei)];
      const Edge& re = g.edge(rep);
      std::vector<EdgeId> parallels;
      for (const Edge& e : g.edges())
        if (e.id != rep && ((e.u == re.u && e.v == re.v) || (e.u == re.v && e.v == re.u)))
          parallels.push_back(e.id);
      bool forward = (std::min(re.u, re.v) == v);
      if (!forward) cyc.insert(cyc.end(), parallels.rbegin(), parallels.rend());
      cyc.push_back(rep);
      if (forward) cyc.insert(cyc.end(), parallels.begin(), parallels.end());
    }
    out.rotation.push_back({v, std::move(cyc)});
  }
  return out;
}

}  // namespace crosskit
