#pragma once

// Plain combinatorial inputs shared by the threshold solvers, instance
// builders and samplers.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcl/error.hpp"

namespace lcl {

/// L_1..L_n: the symbols allowed at each position.
using ListAssignment = std::vector<std::vector<std::string>>;

inline void require_lists(const ListAssignment& lists) {
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].empty()) throw InvalidArgument("list L_" + std::to_string(i + 1) + " is empty");
    std::set<std::string> unique(lists[i].begin(), lists[i].end());
    if (unique.size() != lists[i].size()) {
      throw InvalidArgument("list L_" + std::to_string(i + 1) + " repeats a symbol");
    }
  }
}

/// Hypergraph on vertices 0..n-1. Edges are sorted vertex lists.
struct Hypergraph {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::size_t>> edges;

  Hypergraph() = default;
  Hypergraph(std::size_t n, std::vector<std::vector<std::size_t>> e)
      : vertex_count(n), edges(std::move(e)) {
    for (auto& edge : edges) {
      if (edge.empty()) throw InvalidArgument("hypergraph edges must be nonempty");
      std::sort(edge.begin(), edge.end());
      if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
        throw InvalidArgument("hypergraph edge repeats a vertex");
      }
      if (edge.back() >= vertex_count) throw InvalidArgument("hypergraph edge references an unknown vertex");
    }
  }

  std::vector<std::vector<std::size_t>> incidence() const {
    std::vector<std::vector<std::size_t>> inc(vertex_count);
    for (std::size_t h = 0; h < edges.size(); ++h) {
      for (std::size_t v : edges[h]) inc[v].push_back(h);
    }
    return inc;
  }

  bool is_uniform(std::size_t k) const {
    return std::all_of(edges.begin(), edges.end(), [k](const auto& e) { return e.size() == k; });
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& inc : incidence()) best = std::max(best, inc.size());
    return best;
  }
};

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  Graph() = default;
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> e)
      : vertex_count(n), edges(std::move(e)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& [u, v] : edges) {
      if (u == v) throw InvalidArgument("graph has a loop");
      if (u >= n || v >= n) throw InvalidArgument("graph edge references an unknown vertex");
      if (!seen.insert(std::minmax(u, v)).second) throw InvalidArgument("graph has a parallel edge");
    }
  }

  /// Per vertex: (neighbor, edge index) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertex_count);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].first].emplace_back(edges[e].second, e);
      adj[edges[e].second].emplace_back(edges[e].first, e);
    }
    return adj;
  }

  std::size_t max_degree() const {
    std::vector<std::size_t> deg(vertex_count, 0);
    for (const auto& [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  }
};

}  // namespace lcl
