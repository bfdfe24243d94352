#pragma once

// Randomized constructions with independent verifiers: 2-colorings of
// hypergraphs by resampling, nonrepetitive sequences from lists, and acyclic
// edge colorings. Also random instance generators used by the batch runs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcl/error.hpp"
#include "lcl/random.hpp"
#include "lcl/structures.hpp"

namespace lcl {

struct SamplerReport {
  bool success = false;
  std::size_t resamples = 0;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------- hypergraph 2-coloring

/// 0/1 per vertex.
using TwoColoring = std::vector<std::uint8_t>;

struct ColoringCheck {
  bool ok = true;
  /// A monochromatic edge (index into H.edges) when !ok.
  std::optional<std::size_t> witness;
};

inline ColoringCheck verify_proper_2coloring(const Hypergraph& h, const TwoColoring& phi) {
  if (phi.size() != h.vertex_count) throw InvalidArgument("coloring must cover every vertex");
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& edge = h.edges[e];
    const bool mono = std::all_of(edge.begin(), edge.end(), [&](std::size_t v) { return phi[v] == phi[edge[0]]; });
    if (mono) return {false, e};
  }
  return {};
}

struct TwoColoringRun {
  TwoColoring coloring;
  SamplerReport report;
};

/// Uniform random coloring; while some edge is monochromatic, recolor the
/// vertices of the lowest-numbered such edge.
inline TwoColoringRun mt_two_coloring(const Hypergraph& h, std::uint64_t seed, std::size_t cap = 1000000) {
  if (h.vertex_count == 0) throw InvalidArgument("hypergraph has no vertices");
  SplitMix64 rng(seed);
  TwoColoringRun run;
  run.report.seed = seed;
  run.coloring.resize(h.vertex_count);
  for (auto& c : run.coloring) c = static_cast<std::uint8_t>(rng() >> 63);
  const auto incidence = h.incidence();
  auto mono = [&](std::size_t e) {
    const auto& edge = h.edges[e];
    return std::all_of(edge.begin(), edge.end(), [&](std::size_t v) { return run.coloring[v] == run.coloring[edge[0]]; });
  };
  std::set<std::size_t> queue;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (mono(e)) queue.insert(e);
  }
  while (!queue.empty() && run.report.resamples < cap) {
    const std::size_t e = *queue.begin();
    ++run.report.resamples;
    for (std::size_t v : h.edges[e]) run.coloring[v] = static_cast<std::uint8_t>(rng() >> 63);
    for (std::size_t v : h.edges[e]) {
      for (std::size_t f : incidence[v]) {
        if (mono(f)) {
          queue.insert(f);
        } else {
          queue.erase(f);
        }
      }
    }
  }
  run.report.steps = run.report.resamples;
  run.report.success = queue.empty() && verify_proper_2coloring(h, run.coloring).ok;
  return run;
}

/// d-regular k-uniform hypergraph on n vertices from the configuration model,
/// with point swaps until no edge repeats a vertex.
inline Hypergraph random_regular_uniform_hypergraph(std::size_t n, std::size_t k, std::size_t d, SplitMix64& rng,
                                                    std::size_t swap_cap = 1000000) {
  if (k < 2 || k > n) throw InvalidArgument("need 2 <= k <= n");
  if ((n * d) % k != 0) throw InvalidArgument("n*d must be divisible by k");
  std::vector<std::size_t> points;
  points.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), d, v);
  for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[rng.below(i)]);
  const std::size_t m = points.size() / k;
  auto slot_ok = [&](std::size_t edge, std::size_t pos, std::size_t v) {
    for (std::size_t j = edge * k; j < (edge + 1) * k; ++j) {
      if (j != pos && points[j] == v) return false;
    }
    return true;
  };
  for (std::size_t attempt = 0;; ++attempt) {
    std::optional<std::size_t> dup;
    for (std::size_t e = 0; e < m && !dup; ++e) {
      for (std::size_t j = e * k; j < (e + 1) * k && !dup; ++j) {
        if (!slot_ok(e, j, points[j])) dup = j;
      }
    }
    if (!dup) break;
    if (attempt >= swap_cap) throw CapExceeded("could not repair the configuration into a simple hypergraph");
    const std::size_t other = rng.below(points.size());
    const std::size_t e1 = *dup / k, e2 = other / k;
    if (e1 == e2) continue;
    if (slot_ok(e1, *dup, points[other]) && slot_ok(e2, other, points[*dup])) std::swap(points[*dup], points[other]);
  }
  std::vector<std::vector<std::size_t>> edges(m);
  for (std::size_t e = 0; e < m; ++e) edges[e].assign(points.begin() + e * k, points.begin() + (e + 1) * k);
  return Hypergraph(n, std::move(edges));
}

// ---------------------------------------------------------------- nonrepetitive sequences

struct Repetition {
  /// 1-based start s and half-length t: a_j = a_{j+t} for s ≤ j ≤ s+t−1.
  std::size_t s = 0;
  std::size_t t = 0;
};

/// First repetition in order of s, then t; nullopt if the sequence is nonrepetitive.
template <typename T>
std::optional<Repetition> find_repetition(const std::vector<T>& seq) {
  const std::size_t n = seq.size();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 1; s + 2 * t <= n; ++t) {
      bool same = true;
      for (std::size_t j = 0; j < t && same; ++j) same = seq[s + j] == seq[s + t + j];
      if (same) return Repetition{s + 1, t};
    }
  }
  return std::nullopt;
}

template <typename T>
bool is_nonrepetitive(const std::vector<T>& seq) {
  return !find_repetition(seq).has_value();
}

struct SequenceRun {
  std::vector<std::string> sequence;
  SamplerReport report;
};

/// Appends a uniform symbol of L_{i}; when the new suffix is a square x x,
/// drops the second copy of x (shortest square first).
inline SequenceRun nonrep_sequence_build(const ListAssignment& lists, std::uint64_t seed, std::size_t cap = 0) {
  require_lists(lists);
  const std::size_t n = lists.size();
  if (cap == 0) cap = 1000 * std::max<std::size_t>(n, 1);
  std::unordered_map<std::string, int> code;
  std::vector<std::vector<int>> coded(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& sym : lists[i]) {
      auto [it, _] = code.emplace(sym, static_cast<int>(code.size()));
      coded[i].push_back(it->second);
    }
  }
  SplitMix64 rng(seed);
  SequenceRun run;
  run.report.seed = seed;
  std::vector<int> seq;
  std::vector<std::size_t> picks;
  seq.reserve(n);
  while (seq.size() < n && run.report.steps < cap) {
    const std::size_t i = seq.size();
    const std::size_t pick = rng.below(coded[i].size());
    seq.push_back(coded[i][pick]);
    picks.push_back(pick);
    ++run.report.steps;
    const std::size_t len = seq.size();
    for (std::size_t t = 1; 2 * t <= len; ++t) {
      bool same = true;
      for (std::size_t j = 0; j < t && same; ++j) same = seq[len - 2 * t + j] == seq[len - t + j];
      if (same) {
        seq.resize(len - t);
        picks.resize(len - t);
        ++run.report.resamples;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < seq.size(); ++i) run.sequence.push_back(lists[i][picks[i]]);
  run.report.success = seq.size() == n && is_nonrepetitive(run.sequence);
  return run;
}

// ---------------------------------------------------------------- acyclic edge coloring

/// Color per edge index; −1 means uncolored.
using EdgeColoring = std::vector<int>;

struct AcyclicCheck {
  bool ok = true;
  /// "uncolored", "improper" or "bichromatic-cycle" when !ok.
  std::string kind;
  /// Offending edge indices: one uncolored edge, an adjacent same-colored pair, or a cycle in order.
  std::vector<std::size_t> witness;
};

/// Proper, and every pair of color classes induces a forest.
inline AcyclicCheck is_acyclic_edge_coloring(const Graph& g, const EdgeColoring& phi) {
  if (phi.size() != g.edges.size()) throw InvalidArgument("coloring must cover every edge");
  AcyclicCheck out;
  for (std::size_t e = 0; e < phi.size(); ++e) {
    if (phi[e] < 0) return {false, "uncolored", {e}};
  }
  const auto adj = g.adjacency();
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    std::map<int, std::size_t> seen;
    for (const auto& [w, e] : adj[v]) {
      auto [it, fresh] = seen.emplace(phi[e], e);
      if (!fresh) return {false, "improper", {std::min(it->second, e), std::max(it->second, e)}};
    }
  }
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t e = 0; e < phi.size(); ++e) classes[phi[e]].push_back(e);
  std::vector<int> colors;
  for (const auto& [c, _] : classes) colors.push_back(c);

  std::vector<std::size_t> parent(g.vertex_count);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < colors.size(); ++a) {
    for (std::size_t b = a + 1; b < colors.size(); ++b) {
      std::vector<std::size_t> edges = classes[colors[a]];
      edges.insert(edges.end(), classes[colors[b]].begin(), classes[colors[b]].end());
      std::sort(edges.begin(), edges.end());
      for (std::size_t e : edges) {
        parent[g.edges[e].first] = g.edges[e].first;
        parent[g.edges[e].second] = g.edges[e].second;
      }
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forest(g.vertex_count);
      for (std::size_t e : edges) {
        const auto [u, v] = g.edges[e];
        const std::size_t ru = find(u), rv = find(v);
        if (ru != rv) {
          parent[ru] = rv;
          forest[u].emplace_back(v, e);
          forest[v].emplace_back(u, e);
          continue;
        }
        // Close the cycle: path from v back to u inside the forest.
        std::vector<std::optional<std::pair<std::size_t, std::size_t>>> via(g.vertex_count);
        std::vector<bool> visited(g.vertex_count, false);
        std::vector<std::size_t> stack{v};
        visited[v] = true;
        while (!stack.empty()) {
          const std::size_t x = stack.back();
          stack.pop_back();
          for (const auto& [y, f] : forest[x]) {
            if (visited[y]) continue;
            visited[y] = true;
            via[y] = std::make_pair(x, f);
            stack.push_back(y);
          }
        }
        out.ok = false;
        out.kind = "bichromatic-cycle";
        out.witness.push_back(e);
        for (std::size_t x = u; x != v; x = via[x]->first) out.witness.push_back(via[x]->second);
        return out;
      }
    }
  }
  return out;
}

struct AcyclicRun {
  EdgeColoring coloring;
  SamplerReport report;
};

/// Colors the lowest uncolored edge with a uniform color that keeps the
/// coloring proper and creates no bichromatic 4-cycle. A longer bichromatic
/// cycle e_1 = e, e_2, …, e_2t through the new edge is undone by uncoloring
/// e_1..e_{2t−2}. With no admissible color, the edges adjacent to e are uncolored.
inline AcyclicRun ep_acyclic_edge_coloring(const Graph& g, std::size_t k, std::uint64_t seed,
                                           std::size_t cap = 1000000) {
  const std::size_t delta = g.max_degree();
  if (k < delta) throw InvalidArgument("k must be at least the maximum degree");
  const auto adj = g.adjacency();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
  for (std::size_t e = 0; e < g.edges.size(); ++e) edge_of[std::minmax(g.edges[e].first, g.edges[e].second)] = e;
  auto lookup = [&](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
    auto it = edge_of.find(std::minmax(x, y));
    if (it == edge_of.end()) return std::nullopt;
    return it->second;
  };

  SplitMix64 rng(seed);
  AcyclicRun run;
  run.report.seed = seed;
  EdgeColoring& phi = run.coloring;
  phi.assign(g.edges.size(), -1);
  // Neighbor of v along the edge colored c, if any.
  auto along = [&](std::size_t v, int c) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (const auto& [w, e] : adj[v]) {
      if (phi[e] == c) return std::make_pair(w, e);
    }
    return std::nullopt;
  };

  while (run.report.steps < cap) {
    auto next = std::find(phi.begin(), phi.end(), -1);
    if (next == phi.end()) break;
    const std::size_t e = static_cast<std::size_t>(next - phi.begin());
    const auto [u, v] = g.edges[e];
    ++run.report.steps;

    std::vector<bool> forbidden(k, false);
    std::map<int, std::size_t> at_u;
    for (const auto& [y, f] : adj[u]) {
      if (phi[f] >= 0) {
        forbidden[phi[f]] = true;
        at_u[phi[f]] = y;
      }
    }
    for (const auto& [x, f] : adj[v]) {
      if (phi[f] < 0) continue;
      forbidden[phi[f]] = true;
      auto it = at_u.find(phi[f]);
      if (it == at_u.end()) continue;
      if (auto xy = lookup(x, it->second); xy && phi[*xy] >= 0) forbidden[phi[*xy]] = true;
    }
    std::vector<int> free;
    for (std::size_t c = 0; c < k; ++c) {
      if (!forbidden[c]) free.push_back(static_cast<int>(c));
    }
    if (free.empty()) {
      ++run.report.resamples;
      for (const auto& [y, f] : adj[u]) phi[f] = -1;
      for (const auto& [x, f] : adj[v]) phi[f] = -1;
      continue;
    }
    const int c = free[rng.below(free.size())];
    phi[e] = c;

    // Alternating walk from v: c' then c then c' ... reaching u closes a cycle.
    for (const auto& [y, f0] : adj[u]) {
      const int c2 = phi[f0];
      if (f0 == e || c2 < 0) continue;
      std::vector<std::size_t> path;
      std::size_t at = v;
      int want = c2;
      bool closed = false;
      while (auto step = along(at, want)) {
        path.push_back(step->second);
        at = step->first;
        if (at == u) {
          closed = want == c2;
          break;
        }
        want = want == c2 ? c : c2;
      }
      if (!closed) continue;
      ++run.report.resamples;
      phi[e] = -1;
      for (std::size_t j = 0; j + 2 < path.size(); ++j) phi[path[j]] = -1;
      break;
    }
  }
  run.report.success = std::find(phi.begin(), phi.end(), -1) == phi.end() && is_acyclic_edge_coloring(g, phi).ok;
  return run;
}

/// Random simple graph with maximum degree at most delta: `attempts` uniform
/// vertex pairs, each kept when both endpoints still have room.
inline Graph random_bounded_degree_graph(std::size_t n, std::size_t delta, std::size_t attempts, SplitMix64& rng) {
  if (n < 2) throw InvalidArgument("need at least two vertices");
  std::vector<std::size_t> deg(n, 0);
  std::set<std::pair<std::size_t, std::size_t>> present;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < attempts; ++a) {
    const std::size_t x = rng.below(n), y = rng.below(n);
    if (x == y || deg[x] >= delta || deg[y] >= delta) continue;
    if (!present.insert(std::minmax(x, y)).second) continue;
    ++deg[x];
    ++deg[y];
    edges.emplace_back(std::min(x, y), std::max(x, y));
  }
  return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------- nonrepetitive graph colorings

struct PathCheck {
  bool ok = true;
  /// Vertices of a repetitively colored path when !ok.
  std::vector<std::size_t> witness;
  std::size_t paths_examined = 0;
};

/// Searches every path with an even number of vertices, at most `max_vertices`,
/// for one whose first half is colored like its second half.
inline PathCheck is_nonrepetitive_coloring(const Graph& g, const std::vector<int>& phi, std::size_t max_vertices,
                                           std::size_t budget = 10000000) {
  if (phi.size() != g.vertex_count) throw InvalidArgument("coloring must cover every vertex");
  const auto adj = g.adjacency();
  PathCheck out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(g.vertex_count, false);
  auto repetitive = [&]() {
    const std::size_t t = path.size() / 2;
    for (std::size_t j = 0; j < t; ++j) {
      if (phi[path[j]] != phi[path[t + j]]) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t v) -> bool {
    if (++out.paths_examined > budget) throw CapExceeded("path enumeration exceeded its budget");
    path.push_back(v);
    on_path[v] = true;
    if (path.size() % 2 == 0 && repetitive()) return true;
    if (path.size() < max_vertices) {
      for (const auto& [w, e] : adj[v]) {
        if (!on_path[w] && self(self, w)) return true;
      }
    }
    path.pop_back();
    on_path[v] = false;
    return false;
  };
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (dfs(dfs, v)) {
      out.ok = false;
      out.witness = path;
      return out;
    }
  }
  return out;
}

}  // namespace lcl
