#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "crosskit/mcr.hpp"
#include "crosskit/multigraph.hpp"

namespace crosskit {

inline MultiGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return make_graph(n, pairs);
}

inline MultiGraph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) pairs.push_back({i, a + j});
  return make_graph(a + b, pairs);
}

inline MultiGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({i, (i + 1) % n});
  return make_graph(n, pairs);
}

inline MultiGraph path_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  return make_graph(n, pairs);
}

inline MultiGraph petersen_graph() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i) {
    pairs.push_back({i, (i + 1) % 5});          // outer cycle
    pairs.push_back({i, i + 5});                // spokes
    pairs.push_back({i + 5, (i + 2) % 5 + 5});  // pentagram
  }
  return make_graph(10, pairs);
}

inline MultiGraph prism_graph(int n) { return cartesian_product(cycle_graph(n), path_graph(2)); }

/// Names accepted on the command line: K5, K3,3, C6, P4, Q3, Petersen,
/// prism<n>, star<n>.
inline std::optional<MultiGraph> named_graph(const std::string& name) {
  auto num = [](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(s);
  };
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "petersen") return petersen_graph();
  if (lower == "q3") return cartesian_product(cartesian_product(path_graph(2), path_graph(2)),
                                              path_graph(2));
  if (lower.size() >= 2 && (lower[0] == 'k')) {
    std::size_t comma = lower.find(',');
    if (comma != std::string::npos) {
      auto a = num(lower.substr(1, comma - 1)), b = num(lower.substr(comma + 1));
      if (a && b && *a > 0 && *b > 0) return complete_bipartite(*a, *b);
      return std::nullopt;
    }
    if (auto n = num(lower.substr(1)); n && *n > 0) return complete_graph(*n);
  }
  if (lower.size() >= 2 && lower[0] == 'c')
    if (auto n = num(lower.substr(1)); n && *n >= 3) return cycle_graph(*n);
  if (lower.size() >= 2 && lower[0] == 'p')
    if (auto n = num(lower.substr(1)); n && *n >= 1) return path_graph(*n);
  if (lower.rfind("prism", 0) == 0)
    if (auto n = num(lower.substr(5)); n && *n >= 3) return prism_graph(*n);
  if (lower.rfind("star", 0) == 0)
    if (auto n = num(lower.substr(4)); n && *n >= 1) return complete_bipartite(1, *n);
  return std::nullopt;
}

}  // namespace crosskit
