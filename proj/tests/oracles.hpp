#pragma once

// Brute-force reference computations used to cross-check the library. Nothing
// here calls the library's own algorithms for the quantity being checked.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcl/lcl.hpp"

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Weighted simple digraph as an adjacency matrix; NaN-free, weight 0 marks "no arc".
struct Matrix {
  std::size_t n = 0;
  std::vector<std::vector<double>> w;
};

/// ω̄(x, z) by enumerating every simple path; ω̄(x, x) = 1 and unreachable pairs are +inf.
inline std::vector<std::vector<double>> path_minima(const Matrix& m) {
  std::vector<std::vector<double>> best(m.n, std::vector<double>(m.n, kInf));
  std::vector<bool> used(m.n, false);
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t src, std::size_t v, double prod) {
    best[src][v] = std::min(best[src][v], prod);
    used[v] = true;
    for (std::size_t u = 0; u < m.n; ++u) {
      if (!used[u] && m.w[v][u] > 0.0) walk(src, u, prod * m.w[v][u]);
    }
    used[v] = false;
  };
  for (std::size_t x = 0; x < m.n; ++x) walk(x, x, 1.0);
  return best;
}

inline Matrix matrix_of(const lcl::LclInstance& inst, const lcl::ArcWeights& w) {
  Matrix m;
  m.n = inst.digraph().vertex_count();
  m.w.assign(m.n, std::vector<double>(m.n, 0.0));
  for (std::size_t a = 0; a < inst.simple().arc_count(); ++a) {
    m.w[inst.simple().arc(a).tail][inst.simple().arc(a).head] = w[a];
  }
  return m;
}

inline std::vector<std::vector<bool>> reach_sets(const lcl::MultiDigraph& d) {
  const std::size_t n = d.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
  for (const auto& e : d.edges()) r[e.tail][e.head] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

/// Risks of every edge and margins ω(xy) − 1 − Σ ρ(e) of every arc.
struct ConditionOracle {
  std::vector<double> risks;
  std::vector<double> margins;
};

inline ConditionOracle condition(const lcl::LclInstance& inst, const lcl::ArcWeights& w) {
  const auto& d = inst.digraph();
  const auto bar = path_minima(matrix_of(inst, w));
  const auto reach = reach_sets(d);
  ConditionOracle out;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    double r = kInf;
    for (std::size_t z = 0; z < d.vertex_count(); ++z) {
      if (!reach[d.edge(e).head][z]) continue;
      r = std::min(r, *inst.risks().get(e, z) * bar[d.edge(e).tail][z]);
    }
    out.risks.push_back(r);
  }
  for (std::size_t a = 0; a < inst.simple().arc_count(); ++a) {
    const auto& arc = inst.simple().arc(a);
    double rhs = 1.0;
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      if (d.edge(e).tail == arc.tail && d.edge(e).head == arc.head) rhs += out.risks[e];
    }
    out.margins.push_back(w[a] - rhs);
  }
  return out;
}

/// Every outcome of a product space with its probability, by mixed-radix counting.
inline void enumerate(const lcl::ProductSpace& space,
                      const std::function<void(const lcl::SamplePoint&, double)>& fn) {
  const auto& vars = space.variables();
  std::uint64_t total = 1;
  for (const auto& v : vars) total *= v.values.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    lcl::SamplePoint pt;
    std::uint64_t rest = idx;
    double p = 1.0;
    for (const auto& v : vars) {
      const std::size_t k = rest % v.values.size();
      rest /= v.values.size();
      pt.values.push_back(k);
      p *= v.weights[k];
    }
    fn(pt, p);
  }
}

/// Pr(pred) summed in long double.
inline long double probability(const lcl::ProductSpace& space, const std::function<bool(const lcl::SamplePoint&)>& pred) {
  long double total = 0;
  enumerate(space, [&](const lcl::SamplePoint& pt, double p) {
    if (pred(pt)) total += p;
  });
  return total;
}

inline std::vector<double> vertex_probabilities(const lcl::ProductSpace& space, const lcl::CutModel& model) {
  std::vector<long double> acc(model.digraph.vertex_count(), 0.0L);
  enumerate(space, [&](const lcl::SamplePoint& pt, double p) {
    const auto a = model.a_of(pt);
    for (std::size_t v = 0; v < acc.size(); ++v) {
      if (a[v]) acc[v] += p;
    }
  });
  return {acc.begin(), acc.end()};
}

/// Pr(e ∈ F | z ∈ A) for every edge e and reachable z (0 when Pr(z ∈ A) = 0).
inline std::map<std::pair<std::size_t, std::size_t>, double> conditional_risks(const lcl::ProductSpace& space,
                                                                              const lcl::CutModel& model) {
  const auto& d = model.digraph;
  const auto reach = reach_sets(d);
  std::vector<long double> pz(d.vertex_count(), 0.0L);
  std::map<std::pair<std::size_t, std::size_t>, long double> joint;
  enumerate(space, [&](const lcl::SamplePoint& pt, double p) {
    const auto a = model.a_of(pt);
    const auto f = model.f_of(pt);
    for (std::size_t z = 0; z < d.vertex_count(); ++z) {
      if (!a[z]) continue;
      pz[z] += p;
      for (std::size_t e = 0; e < d.edge_count(); ++e) {
        if (f[e] && reach[d.edge(e).head][z]) joint[{e, z}] += p;
      }
    }
  });
  std::map<std::pair<std::size_t, std::size_t>, double> out;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    for (std::size_t z = 0; z < d.vertex_count(); ++z) {
      if (!reach[d.edge(e).head][z]) continue;
      out[{e, z}] = pz[z] > 0 ? static_cast<double>(joint[{e, z}] / pz[z]) : 0.0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random LCL instances with an exact out-closed A and an A-cut F.

struct RandomLcl {
  lcl::MultiDigraph digraph;
  lcl::ProductSpace space;
  lcl::CutModel model;
};

inline std::uint64_t outcome_index(const lcl::ProductSpace& space, const lcl::SamplePoint& pt) {
  std::uint64_t idx = 0, scale = 1;
  for (std::size_t i = 0; i < space.size(); ++i) {
    idx += pt[i] * scale;
    scale *= space.variables()[i].values.size();
  }
  return idx;
}

inline lcl::Variable random_variable(const std::string& name, std::size_t size, lcl::SplitMix64& rng) {
  std::vector<std::string> values;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    values.push_back(std::to_string(k));
    weights.push_back(0.05 + rng.uniform());
    total += weights.back();
  }
  double head = 0.0;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    weights[k] /= total;
    head += weights[k];
  }
  weights.back() = 1.0 - head;
  return lcl::Variable{name, values, weights};
}

/// Up to `max_vertices` vertices, up to `max_edges` edges, at most 4096 outcomes.
inline RandomLcl random_lcl(lcl::SplitMix64& rng, std::size_t max_vertices = 5, std::size_t max_edges = 8) {
  RandomLcl out;
  const std::size_t n = 2 + rng.below(max_vertices - 1);
  for (std::size_t v = 0; v < n; ++v) out.digraph.add_vertex("v" + std::to_string(v));
  const std::size_t m = 1 + rng.below(max_edges);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t x = rng.below(n);
    std::size_t y = rng.below(n - 1);
    if (y >= x) ++y;
    out.digraph.add_edge("e" + std::to_string(e), x, y);
  }

  std::vector<lcl::Variable> vars;
  std::uint64_t outcomes = 1;
  const std::size_t want = 1 + rng.below(6);
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t size = 2 + rng.below(3);
    if (outcomes * size > 4096) break;
    outcomes *= size;
    vars.push_back(random_variable("x" + std::to_string(i), size, rng));
  }
  out.space = lcl::ProductSpace(vars);

  // Per-outcome tables drive A and F; A is the out-closure of a random seed set.
  const double keep = 0.6 + 0.38 * rng.uniform();
  const double extra = 0.15 * rng.uniform();
  std::vector<std::vector<bool>> seed(outcomes, std::vector<bool>(n));
  std::vector<std::vector<bool>> noise(outcomes, std::vector<bool>(m));
  std::vector<std::uint64_t> pick(outcomes);
  for (std::uint64_t o = 0; o < outcomes; ++o) {
    for (std::size_t v = 0; v < n; ++v) seed[o][v] = rng.uniform() < keep;
    for (std::size_t e = 0; e < m; ++e) noise[o][e] = rng.uniform() < extra;
    pick[o] = rng();
  }
  const lcl::MultiDigraph d = out.digraph;
  const lcl::ProductSpace space = out.space;
  auto closure = [d, n](std::vector<bool> a) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& e : d.edges()) {
        if (a[e.tail] && !a[e.head]) {
          a[e.head] = true;
          changed = true;
        }
      }
    }
    return a;
  };
  out.model.digraph = d;
  out.model.a_of = [=](const lcl::SamplePoint& pt) { return closure(seed[outcome_index(space, pt)]); };
  out.model.f_of = [=](const lcl::SamplePoint& pt) {
    const std::uint64_t o = outcome_index(space, pt);
    const auto a = closure(seed[o]);
    std::vector<bool> f = noise[o];
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> entering;
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      if (!a[d.edge(e).tail] && a[d.edge(e).head]) entering[{d.edge(e).tail, d.edge(e).head}].push_back(e);
    }
    for (const auto& [arc, es] : entering) {
      const bool hit = std::any_of(es.begin(), es.end(), [&](std::size_t e) { return f[e]; });
      if (!hit) f[es[(pick[o] + arc.first * 7 + arc.second) % es.size()]] = true;
    }
    return f;
  };
  return out;
}

inline lcl::LclInstance exact_instance(const RandomLcl& r) {
  lcl::RiskTable risks = lcl::risk_table_exact(r.space, r.model);
  return lcl::LclInstance(r.digraph, std::move(risks), lcl::ExactModel{r.space, r.model});
}

// ---------------------------------------------------------------------------
// Scalar conditions.

/// Peak of h(τ) = τ − 1 − g(τ) and its least nonnegative point on a dense grid over [1, hi].
struct GridScan {
  double peak_tau = 1.0;
  double peak = -kInf;
  std::optional<double> first_feasible;
};

inline GridScan scan(const std::function<double(double)>& g, double hi, std::size_t points = 2000000) {
  GridScan s;
  for (std::size_t i = 0; i <= points; ++i) {
    const double t = 1.0 + (hi - 1.0) * static_cast<double>(i) / static_cast<double>(points);
    const double h = t - 1.0 - g(t);
    if (!std::isfinite(h)) continue;
    if (h > s.peak) {
      s.peak = h;
      s.peak_tau = t;
    }
    if (!s.first_feasible && h >= 0.0) s.first_feasible = t;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Combinatorial verifiers.

/// True when no edge of H is monochromatic under a 0/1 coloring.
inline bool proper_two_coloring(const lcl::Hypergraph& h, const std::vector<std::uint8_t>& phi) {
  for (const auto& e : h.edges) {
    std::set<std::uint8_t> colors;
    for (std::size_t v : e) colors.insert(phi[v]);
    if (colors.size() < 2) return false;
  }
  return true;
}

/// True when no block x x occurs, by checking every (start, half-length) pair.
template <typename T>
bool square_free(const std::vector<T>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t t = 1; i + 2 * t <= s.size(); ++t) {
      if (std::equal(s.begin() + i, s.begin() + i + t, s.begin() + i + t)) return false;
    }
  }
  return true;
}

/// Proper, total, and every two-colored subgraph is a forest (checked by edge/vertex/component counts).
inline bool acyclic_edge_coloring(const lcl::Graph& g, const std::vector<int>& phi) {
  if (phi.size() != g.edges.size()) return false;
  std::map<std::pair<std::size_t, int>, int> seen;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (phi[e] < 0) return false;
    if (++seen[{g.edges[e].first, phi[e]}] > 1 || ++seen[{g.edges[e].second, phi[e]}] > 1) return false;
  }
  std::set<int> colors(phi.begin(), phi.end());
  for (int c1 : colors) {
    for (int c2 : colors) {
      if (c2 <= c1) continue;
      std::vector<std::size_t> parent(g.vertex_count);
      for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
      std::function<std::size_t(std::size_t)> root = [&](std::size_t v) {
        return parent[v] == v ? v : parent[v] = root(parent[v]);
      };
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (phi[e] != c1 && phi[e] != c2) continue;
        const std::size_t a = root(g.edges[e].first), b = root(g.edges[e].second);
        if (a == b) return false;
        parent[a] = b;
      }
    }
  }
  return true;
}

/// Smallest palette admitting an acyclic edge coloring, by exhaustive search (tiny graphs only).
inline std::size_t acyclic_chromatic_index(const lcl::Graph& g) {
  for (std::size_t k = 1;; ++k) {
    std::vector<int> phi(g.edges.size(), 0);
    std::function<bool(std::size_t)> place = [&](std::size_t e) {
      if (e == g.edges.size()) return acyclic_edge_coloring(g, phi);
      for (int c = 0; c < static_cast<int>(k); ++c) {
        phi[e] = c;
        if (place(e + 1)) return true;
      }
      return false;
    };
    if (g.edges.empty() || place(0)) return g.edges.empty() ? 0 : k;
  }
}

}  // namespace oracle
