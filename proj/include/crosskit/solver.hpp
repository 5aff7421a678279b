#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <unordered_map>
#include <vector>

#include "crosskit/canonical.hpp"
#include "crosskit/certificate.hpp"
#include "crosskit/multigraph.hpp"
#include "crosskit/planarity.hpp"

namespace crosskit {

/// Classical edge-count lower bound on the simplification: m - (3n - 6), or
/// m - (2n - 4) when triangle-free (n >= 3), clamped at zero.
inline int euler_lower_bound(const MultiGraph& g) {
  detail::SimpleView sv = detail::simple_view(g);
  const int n = sv.n, m = static_cast<int>(sv.edges.size());
  if (n < 3) return 0;
  int bound = m - (3 * n - 6);
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  if (n <= 64) {
    for (auto& [a, b] : sv.edges) {
      adj[static_cast<std::size_t>(a)] |= (1ULL << b);
      adj[static_cast<std::size_t>(b)] |= (1ULL << a);
    }
    bool triangle = false;
    for (auto& [a, b] : sv.edges)
      if (adj[static_cast<std::size_t>(a)] & adj[static_cast<std::size_t>(b)]) {
        triangle = true;
        break;
      }
    if (!triangle) bound = std::max(bound, m - (2 * n - 4));
  }
  return std::max(0, bound);
}

struct SolverLimits {
  long long node_cap = -1;  // < 0: unlimited
  int time_cap_ms = -1;     // < 0: unlimited
  int budget = -1;          // < 0: none; else answer "cr <= budget?" only
  bool use_memo = true;
  int memo_vertex_cap = 16;
  int threads = 1;
  unsigned order_seed = 0;  // nonzero shuffles branch order (results must not change)
};

struct SolverStats {
  long long nodes = 0;
  long long planarity_checks = 0;
  double wall_ms = 0.0;
};

enum class SolveStatus { exact, exceeds_budget, inconclusive };

struct SolveResult {
  SolveStatus status = SolveStatus::inconclusive;
  int lower = 0;             // proven cr >= lower
  std::optional<int> upper;  // proven cr <= upper
  std::optional<CrossingCertificate> certificate;
  SolverStats stats;

  int value() const {
    if (status != SolveStatus::exact) throw std::logic_error("SolveResult: no exact value");
    return lower;
  }
};

/// Shared memo of crossing-number bounds keyed by canonical form. Bounds only
/// tighten (lb joins by max, ub by min), so concurrent use is a monotone join.
class MemoTable {
 public:
  struct Entry {
    int lb = 0;
    int ub = INT_MAX;
  };

  explicit MemoTable(std::size_t max_entries = (1u << 20)) : max_entries_(max_entries) {}

  std::optional<Entry> lookup(const CanonicalKey& k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void update_lb(const CanonicalKey& k, int lb) {
    std::lock_guard<std::mutex> lock(mu_);
    Entry& e = slot(k);
    e.lb = std::max(e.lb, lb);
  }

  void update_ub(const CanonicalKey& k, int ub) {
    std::lock_guard<std::mutex> lock(mu_);
    Entry& e = slot(k);
    e.ub = std::min(e.ub, ub);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
  }

 private:
  Entry& slot(const CanonicalKey& k) {
    auto it = map_.find(k);
    if (it != map_.end()) return it->second;
    if (map_.size() >= max_entries_ && !fifo_.empty()) {
      map_.erase(fifo_.front());
      fifo_.pop_front();
    }
    fifo_.push_back(k);
    return map_[k];
  }

  mutable std::mutex mu_;
  std::unordered_map<CanonicalKey, Entry> map_;
  std::deque<CanonicalKey> fifo_;
  std::size_t max_entries_;
};

namespace detail {

struct SearchCtx {
  const SolverLimits* lim = nullptr;
  MemoTable* memo = nullptr;
  std::atomic<long long> nodes{0};
  std::atomic<long long> planarity_checks{0};
  std::atomic<bool> aborted{false};
  bool has_deadline = false;
  std::chrono::steady_clock::time_point deadline;

  bool over_limit() {
    if (aborted.load(std::memory_order_relaxed)) return true;
    if (lim->node_cap >= 0 && nodes.load(std::memory_order_relaxed) > lim->node_cap) {
      aborted.store(true);
      return true;
    }
    if (has_deadline && std::chrono::steady_clock::now() > deadline) {
      aborted.store(true);
      return true;
    }
    return false;
  }

  bool memo_usable(const MultiGraph& g) const {
    return memo && lim->use_memo && g.vertex_count() <= lim->memo_vertex_cap;
  }
};

// Branch pairs: first edge restricted to a Kuratowski witness (sound: every
// optimal drawing crosses two witness edges), witness-witness pairs first.
inline std::vector<std::pair<EdgeId, EdgeId>> branch_pairs(const MultiGraph& g,
                                                           const std::vector<EdgeId>& witness,
                                                           unsigned seed) {
  std::vector<char> in_w;
  EdgeId maxid = g.next_edge_id();
  in_w.assign(static_cast<std::size_t>(maxid), 0);
  for (EdgeId w : witness) in_w[static_cast<std::size_t>(w)] = 1;
  std::vector<std::pair<EdgeId, EdgeId>> both, mixed;
  for (EdgeId e : witness) {
    const Edge& ee = g.edge(e);
    for (const Edge& f : g.edges()) {
      if (f.id == e || ee.adjacent_to(f)) continue;
      if (in_w[static_cast<std::size_t>(f.id)]) {
        if (f.id > e) both.push_back({e, f.id});
      } else {
        mixed.push_back({e, f.id});
      }
    }
  }
  std::sort(both.begin(), both.end());
  std::sort(mixed.begin(), mixed.end());
  if (seed != 0) {
    std::mt19937 rng(seed);
    std::shuffle(both.begin(), both.end(), rng);
    std::shuffle(mixed.begin(), mixed.end(), rng);
  }
  both.insert(both.end(), mixed.begin(), mixed.end());
  return both;
}

// cr(g) <= k for connected nonempty g? Appends the successful planarization
// steps to *trace leaf-first (callers reverse).
inline bool decide(const MultiGraph& g, int k, SearchCtx& ctx,
                   std::vector<std::pair<EdgeId, EdgeId>>* trace) {
  if (ctx.over_limit()) return false;
  ctx.nodes.fetch_add(1, std::memory_order_relaxed);

  const int elb = euler_lower_bound(g);
  if (elb > k) return false;
  if (elb == 0) {
    ctx.planarity_checks.fetch_add(1, std::memory_order_relaxed);
    if (planar(g)) return true;
  }
  if (k <= 0) return false;

  std::optional<CanonicalKey> key;
  if (ctx.memo_usable(g)) {
    key = canonical_key(g, ctx.lim->memo_vertex_cap);
    if (auto e = ctx.memo->lookup(*key); e && e->lb > k) return false;
  }

  std::vector<EdgeId> witness = kuratowski_edges(g);
  ctx.planarity_checks.fetch_add(1 + g.edge_count(), std::memory_order_relaxed);

  bool saw_abort = false;
  for (auto [e, f] : branch_pairs(g, witness, ctx.lim->order_seed)) {
    MultiGraph child = cross_identify(g, e, f);
    if (decide(child, k - 1, ctx, trace)) {
      if (trace) trace->push_back({e, f});
      if (key) ctx.memo->update_ub(*key, k);
      return true;
    }
    if (ctx.aborted.load(std::memory_order_relaxed)) {
      saw_abort = true;
      break;
    }
  }
  if (!saw_abort && key) ctx.memo->update_lb(*key, k + 1);
  return false;
}

// One iterative-deepening level, optionally parallel over root branches.
// Returns the trace root-first on success.
inline std::optional<std::vector<std::pair<EdgeId, EdgeId>>> run_level(const MultiGraph& g,
                                                                       int k, SearchCtx& ctx) {
  std::vector<EdgeId> witness = kuratowski_edges(g);
  ctx.planarity_checks.fetch_add(1 + g.edge_count(), std::memory_order_relaxed);
  auto pairs = branch_pairs(g, witness, ctx.lim->order_seed);
  ctx.nodes.fetch_add(1, std::memory_order_relaxed);

  const int threads = std::max(1, ctx.lim->threads);
  if (threads == 1 || pairs.size() <= 1) {
    for (auto [e, f] : pairs) {
      if (ctx.over_limit()) return std::nullopt;
      MultiGraph child = cross_identify(g, e, f);
      std::vector<std::pair<EdgeId, EdgeId>> tr;
      if (decide(child, k - 1, ctx, &tr)) {
        tr.push_back({e, f});
        std::reverse(tr.begin(), tr.end());
        return tr;
      }
    }
    return std::nullopt;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{pairs.size()};
  std::mutex best_mu;
  std::vector<std::pair<EdgeId, EdgeId>> best_trace;
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pairs.size() || i >= best.load()) return;
      if (ctx.over_limit()) return;
      auto [e, f] = pairs[i];
      MultiGraph child = cross_identify(g, e, f);
      std::vector<std::pair<EdgeId, EdgeId>> tr;
      if (decide(child, k - 1, ctx, &tr)) {
        tr.push_back({e, f});
        std::reverse(tr.begin(), tr.end());
        std::lock_guard<std::mutex> lock(best_mu);
        std::size_t cur = best.load();
        if (i < cur) {
          best.store(i);
          best_trace = std::move(tr);
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (best.load() < pairs.size()) return best_trace;
  return std::nullopt;
}

// Exact search on one connected component.
inline SolveResult solve_connected(const MultiGraph& g, const SolverLimits& lim,
                                   MemoTable* memo) {
  SolveResult res;
  SearchCtx ctx;
  ctx.lim = &lim;
  ctx.memo = memo;
  if (lim.time_cap_ms >= 0) {
    ctx.has_deadline = true;
    ctx.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(lim.time_cap_ms);
  }

  ctx.planarity_checks.fetch_add(1, std::memory_order_relaxed);
  if (planar(g)) {
    res.status = SolveStatus::exact;
    res.lower = 0;
    res.upper = 0;
    res.certificate = make_certificate(g, {});
    res.stats.nodes = ctx.nodes.load();
    res.stats.planarity_checks = ctx.planarity_checks.load();
    return res;
  }

  int lb = std::max(1, euler_lower_bound(g));
  for (int k = lb;; ++k) {
    if (lim.budget >= 0 && k > lim.budget) {
      res.status = SolveStatus::exceeds_budget;
      res.lower = k;  // levels below k are exhausted (or k == lb from valid bounds)
      break;
    }
    auto tr = run_level(g, k, ctx);
    if (tr) {
      res.status = SolveStatus::exact;
      res.lower = k;
      res.upper = k;
      res.certificate = make_certificate(g, *tr);
      break;
    }
    if (ctx.aborted.load()) {
      res.status = SolveStatus::inconclusive;
      res.lower = k;  // level k-1 exhausted before the abort
      break;
    }
  }
  res.stats.nodes = ctx.nodes.load();
  res.stats.planarity_checks = ctx.planarity_checks.load();
  return res;
}

// Remap a component certificate into whole-graph index space.
inline void append_certificate(const MultiGraph& whole, const MultiGraph& comp,
                               const CrossingCertificate& part, CrossingCertificate& out,
                               int step_offset) {
  VertexIndexer widx(whole);
  std::unordered_map<EdgeId, int> whole_index;
  int i = 0;
  for (const Edge& e : whole.edges()) whole_index[e.id] = i++;
  std::vector<int> base_map;  // component base index -> whole base index
  for (const Edge& e : comp.edges()) base_map.push_back(whole_index.at(e.id));
  auto remap = [&](const EdgeRef& r) {
    if (r.step < 0) return EdgeRef{-1, base_map[static_cast<std::size_t>(r.slot)]};
    return EdgeRef{r.step + step_offset, r.slot};
  };
  for (auto& [a, b] : part.trace) out.trace.push_back({remap(a), remap(b)});
}

}  // namespace detail

/// Exact crossing number with a verifiable certificate. Disconnected input is
/// solved per component and summed. With a budget, answers the decision
/// question "cr(g) <= budget?" and reports exceeds_budget otherwise; on
/// resource exhaustion reports an interval, never an unflagged value.
inline SolveResult crossing_number(const MultiGraph& g, const SolverLimits& limits = {},
                                   MemoTable* memo = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  MemoTable local;
  if (!memo) memo = &local;

  SolveResult total;
  total.status = SolveStatus::exact;
  total.lower = 0;
  total.upper = 0;
  CrossingCertificate cert;
  VertexIndexer idx(g);
  cert.base_n = g.vertex_count();
  for (const Edge& e : g.edges())
    cert.base_edges.push_back({idx.index_of(e.u), idx.index_of(e.v)});

  auto comps = connected_components(g);
  std::vector<MultiGraph> parts;
  for (auto& c : comps) parts.push_back(induced_subgraph(g, c));
  std::sort(parts.begin(), parts.end(), [](const MultiGraph& a, const MultiGraph& b) {
    return a.edge_count() < b.edge_count();
  });

  int remaining_budget = limits.budget;
  for (const MultiGraph& comp : parts) {
    if (comp.edge_count() == 0) continue;
    SolverLimits lim = limits;
    lim.budget = remaining_budget;
    SolveResult r = detail::solve_connected(comp, lim, memo);
    total.stats.nodes += r.stats.nodes;
    total.stats.planarity_checks += r.stats.planarity_checks;
    if (r.status == SolveStatus::exact) {
      detail::append_certificate(g, comp, *r.certificate,
                                 cert, static_cast<int>(cert.trace.size()));
      total.lower += r.value();
      if (total.upper) *total.upper += r.value();
      if (remaining_budget >= 0) remaining_budget -= r.value();
    } else {
      total.status = r.status;
      total.lower += r.lower;
      total.upper.reset();
      break;
    }
  }

  if (total.status == SolveStatus::exact) {
    cert.claimed_value = static_cast<int>(cert.trace.size());
    total.certificate = std::move(cert);
  }
  total.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return total;
}

}  // namespace crosskit
