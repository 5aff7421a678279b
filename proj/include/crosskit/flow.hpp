#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crosskit {

/// Small integral max-flow network (augmenting paths). Arcs come in
/// forward/reverse pairs; arc i's reverse is i ^ 1.
class FlowNetwork {
 public:
  int add_node() { return node_count_++; }

  int add_nodes(int k) {
    int first = node_count_;
    node_count_ += k;
    return first;
  }

  // Returns the forward arc index.
  int add_arc(int from, int to, int cap) {
    int i = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    head_of(from).push_back(i);
    to_.push_back(from);
    cap_.push_back(0);
    head_of(to).push_back(i + 1);
    return i;
  }

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(to_.size()); }
  int arc_to(int i) const { return to_[static_cast<std::size_t>(i)]; }
  int arc_cap(int i) const { return cap_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& arcs_at(int v) const { return adj_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<int>& head_of(int v) {
    if (static_cast<int>(adj_.size()) <= v) adj_.resize(static_cast<std::size_t>(v) + 1);
    return adj_[static_cast<std::size_t>(v)];
  }

  int node_count_ = 0;
  std::vector<int> to_, cap_;
  std::vector<std::vector<int>> adj_;
};

struct FlowResult {
  int value = 0;
  std::vector<int> flow;                    // per forward arc (net, >= 0)
  std::vector<std::vector<int>> paths;      // arc-index paths s -> t, one per unit
};

/// BFS-augmenting max flow plus a decomposition of the flow into unit paths
/// (cycles in the raw flow are excised during the walk).
inline FlowResult max_flow(const FlowNetwork& net, int s, int t) {
  if (s == t) throw std::invalid_argument("max_flow: source equals sink");
  const int m = net.arc_count();
  std::vector<int> residual(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) residual[static_cast<std::size_t>(i)] = net.arc_cap(i);

  FlowResult res;
  const int n = net.node_count();
  std::vector<int> pred_arc(static_cast<std::size_t>(n));
  while (true) {
    std::fill(pred_arc.begin(), pred_arc.end(), -1);
    std::vector<int> queue{s};
    pred_arc[static_cast<std::size_t>(s)] = -2;
    bool reached = false;
    for (std::size_t qi = 0; qi < queue.size() && !reached; ++qi) {
      int x = queue[qi];
      for (int ai : net.arcs_at(x)) {
        if (residual[static_cast<std::size_t>(ai)] <= 0) continue;
        int y = net.arc_to(ai);
        if (pred_arc[static_cast<std::size_t>(y)] != -1) continue;
        pred_arc[static_cast<std::size_t>(y)] = ai;
        if (y == t) {
          reached = true;
          break;
        }
        queue.push_back(y);
      }
    }
    if (!reached) break;
    int bottleneck = INT32_MAX;
    for (int y = t; y != s;) {
      int ai = pred_arc[static_cast<std::size_t>(y)];
      bottleneck = std::min(bottleneck, residual[static_cast<std::size_t>(ai)]);
      y = net.arc_to(ai ^ 1);
    }
    for (int y = t; y != s;) {
      int ai = pred_arc[static_cast<std::size_t>(y)];
      residual[static_cast<std::size_t>(ai)] -= bottleneck;
      residual[static_cast<std::size_t>(ai ^ 1)] += bottleneck;
      y = net.arc_to(ai ^ 1);
    }
    res.value += bottleneck;
  }

  res.flow.assign(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; i += 2) {
    int f = net.arc_cap(i) - residual[static_cast<std::size_t>(i)];
    res.flow[static_cast<std::size_t>(i)] = std::max(0, f);
  }
  // cancel opposite flows on paired forward arcs (undirected edges are
  // modeled as two forward arcs)
  // note: pairing of opposite arcs is the caller's concern; here we only
  // decompose whatever nonnegative net flow remains.

  std::vector<int> remaining = res.flow;
  for (int unit = 0; unit < res.value; ++unit) {
    std::vector<int> walk_nodes{s};
    std::vector<int> walk_arcs;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    pos[static_cast<std::size_t>(s)] = 0;
    int cur = s;
    while (cur != t) {
      int chosen = -1;
      for (int ai : net.arcs_at(cur)) {
        if ((ai & 1) == 0 && remaining[static_cast<std::size_t>(ai)] > 0) {
          chosen = ai;
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("max_flow: flow conservation violated");
      int y = net.arc_to(chosen);
      if (pos[static_cast<std::size_t>(y)] >= 0) {
        // excise the cycle from the walk
        int p = pos[static_cast<std::size_t>(y)];
        remaining[static_cast<std::size_t>(chosen)] -= 1;
        for (std::size_t k = static_cast<std::size_t>(p); k < walk_arcs.size(); ++k)
          remaining[static_cast<std::size_t>(walk_arcs[k])] -= 1;
        for (std::size_t k = static_cast<std::size_t>(p) + 1; k < walk_nodes.size(); ++k)
          pos[static_cast<std::size_t>(walk_nodes[k])] = -1;
        walk_nodes.resize(static_cast<std::size_t>(p) + 1);
        walk_arcs.resize(static_cast<std::size_t>(p));
        cur = y;
        continue;
      }
      walk_arcs.push_back(chosen);
      walk_nodes.push_back(y);
      pos[static_cast<std::size_t>(y)] = static_cast<int>(walk_nodes.size()) - 1;
      cur = y;
    }
    for (int ai : walk_arcs) remaining[static_cast<std::size_t>(ai)] -= 1;
    res.paths.push_back(std::move(walk_arcs));
  }
  return res;
}

}  // namespace crosskit
