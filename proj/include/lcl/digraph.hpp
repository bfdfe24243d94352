#pragma once

// Finite directed multigraphs, their simple projections, reachability,
// min-product path weights, out-closed sets and A-cuts.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcl/error.hpp"

namespace lcl {

/// Membership vector over vertex indices.
using VertexSet = std::vector<bool>;
/// Membership vector over multigraph edge indices.
using EdgeSet = std::vector<bool>;
/// Weight per arc of a SimpleDigraph, indexed by arc index.
using ArcWeights = std::vector<double>;

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
};

struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
};

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Finite directed multigraph. Parallel edges and loops are allowed.
/// Vertex and edge ids are opaque strings; operations work on dense indices.
class MultiDigraph {
 public:
  MultiDigraph() = default;

  MultiDigraph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
    for (const auto& v : vertices) add_vertex(v);
    for (const auto& e : edges) add_edge(e.id, e.tail, e.head);
  }

  std::size_t add_vertex(const std::string& name) {
    if (vertex_index_.contains(name)) throw InvalidArgument("duplicate vertex id '" + name + "'");
    vertex_index_.emplace(name, vertices_.size());
    vertices_.push_back(name);
    return vertices_.size() - 1;
  }

  std::size_t add_edge(const std::string& id, std::size_t tail, std::size_t head) {
    if (tail >= vertices_.size() || head >= vertices_.size()) {
      throw InvalidArgument("edge '" + id + "' references an unknown vertex");
    }
    if (edge_index_.contains(id)) throw InvalidArgument("duplicate edge id '" + id + "'");
    edge_index_.emplace(id, edges_.size());
    by_pair_[{tail, head}].push_back(edges_.size());
    edges_.push_back(Edge{id, tail, head});
    return edges_.size() - 1;
  }

  std::size_t add_edge(const std::string& id, const std::string& tail, const std::string& head) {
    return add_edge(id, vertex_index(tail), vertex_index(head));
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) throw InvalidArgument("unknown vertex id '" + name + "'");
    return it->second;
  }

  std::size_t edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw InvalidArgument("unknown edge id '" + id + "'");
    return it->second;
  }

  /// E(x, y): indices of all edges with tail x and head y.
  const std::vector<std::size_t>& edges_between(std::size_t x, std::size_t y) const {
    static const std::vector<std::size_t> kNone;
    auto it = by_pair_.find({x, y});
    return it == by_pair_.end() ? kNone : it->second;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_pair_;
};

/// Simple digraph: at most one arc per ordered pair. Arcs are kept sorted.
class SimpleDigraph {
 public:
  SimpleDigraph() = default;

  SimpleDigraph(std::vector<std::string> vertices, std::vector<Arc> arcs)
      : vertices_(std::move(vertices)), out_(vertices_.size()) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (arcs_[a].tail >= vertices_.size() || arcs_[a].head >= vertices_.size()) {
        throw InvalidArgument("arc references an unknown vertex");
      }
      out_[arcs_[a].tail].push_back(a);
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t a) const { return arcs_.at(a); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
  /// Indices of arcs leaving v.
  const std::vector<std::size_t>& out_arcs(std::size_t v) const { return out_.at(v); }

  std::optional<std::size_t> arc_index(std::size_t tail, std::size_t head) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{tail, head});
    if (it == arcs_.end() || *it != Arc{tail, head}) return std::nullopt;
    return static_cast<std::size_t>(it - arcs_.begin());
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

/// D^s: the arc (x,y) is present iff E(x,y) is nonempty.
inline SimpleDigraph underlying_simple(const MultiDigraph& d) {
  std::vector<Arc> arcs;
  arcs.reserve(d.edge_count());
  for (const auto& e : d.edges()) arcs.push_back(Arc{e.tail, e.head});
  return SimpleDigraph(d.vertex_names(), std::move(arcs));
}

/// R_D(x): every vertex with a directed path from x, including x itself.
inline VertexSet reachable(const SimpleDigraph& ds, std::size_t x) {
  if (x >= ds.vertex_count()) throw InvalidArgument("unknown vertex index");
  VertexSet seen(ds.vertex_count(), false);
  std::vector<std::size_t> stack{x};
  seen[x] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t a : ds.out_arcs(v)) {
      const std::size_t w = ds.arc(a).head;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

inline void require_weights(const SimpleDigraph& ds, const ArcWeights& w) {
  if (w.size() != ds.arc_count()) throw InvalidArgument("weight assignment is not total on the arcs");
  for (double v : w) {
    if (!(v >= 1.0)) throw InvalidArgument("arc weights must be >= 1");
  }
}

/// Min-product weights from x to every vertex; nullopt where unreachable.
/// Cheapest-product-first search: with all weights >= 1 a path's product never
/// decreases when it is extended, so the first settled value is optimal.
inline std::vector<std::optional<double>> min_product_weights_from(const SimpleDigraph& ds,
                                                                   const ArcWeights& w,
                                                                   std::size_t x) {
  if (x >= ds.vertex_count()) throw InvalidArgument("unknown vertex index");
  require_weights(ds, w);
  std::vector<std::optional<double>> best(ds.vertex_count());
  std::vector<bool> done(ds.vertex_count(), false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  best[x] = 1.0;
  queue.emplace(1.0, x);
  while (!queue.empty()) {
    auto [value, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    for (std::size_t a : ds.out_arcs(v)) {
      const std::size_t u = ds.arc(a).head;
      const double candidate = value * w[a];
      if (!best[u] || candidate < *best[u]) {
        best[u] = candidate;
        queue.emplace(candidate, u);
      }
    }
  }
  return best;
}

/// ω̄(x, z): minimum over directed xz-paths of the product of arc weights.
inline std::optional<double> min_product_weight(const SimpleDigraph& ds, const ArcWeights& w,
                                                std::size_t x, std::size_t z) {
  if (z >= ds.vertex_count()) throw InvalidArgument("unknown vertex index");
  return min_product_weights_from(ds, w, x)[z];
}

/// True iff x ∈ A implies y ∈ A for every arc (x, y).
inline bool is_out_closed(const SimpleDigraph& ds, const VertexSet& a) {
  if (a.size() != ds.vertex_count()) throw InvalidArgument("vertex set has wrong size");
  return std::all_of(ds.arcs().begin(), ds.arcs().end(),
                     [&](const Arc& arc) { return !a[arc.tail] || a[arc.head]; });
}

inline bool is_out_closed(const MultiDigraph& d, const VertexSet& a) {
  if (a.size() != d.vertex_count()) throw InvalidArgument("vertex set has wrong size");
  return std::all_of(d.edges().begin(), d.edges().end(),
                     [&](const Edge& e) { return !a[e.tail] || a[e.head]; });
}

/// True iff F contains an edge of E(x,y) for every arc with x ∉ A and y ∈ A.
/// A must be out-closed.
inline bool is_a_cut(const MultiDigraph& d, const VertexSet& a, const EdgeSet& f) {
  if (f.size() != d.edge_count()) throw InvalidArgument("edge set has wrong size");
  if (!is_out_closed(d, a)) throw InvalidArgument("A is not out-closed");
  std::map<std::pair<std::size_t, std::size_t>, bool> hit;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto& edge = d.edge(e);
    if (a[edge.tail] || !a[edge.head]) continue;
    bool& h = hit[{edge.tail, edge.head}];
    h = h || f[e];
  }
  return std::all_of(hit.begin(), hit.end(), [](const auto& kv) { return kv.second; });
}

/// Out-closure of a seed set: everything reachable from it.
inline VertexSet out_closure(const SimpleDigraph& ds, const VertexSet& seed) {
  VertexSet closed(ds.vertex_count(), false);
  for (std::size_t v = 0; v < seed.size(); ++v) {
    if (!seed[v] || closed[v]) continue;
    const VertexSet r = reachable(ds, v);
    for (std::size_t u = 0; u < r.size(); ++u) closed[u] = closed[u] || r[u];
  }
  return closed;
}

}  // namespace lcl
