#pragma once

// Risks, the monotone operator f, the weight condition, least-fixed-point
// weight solving and exact probability-bound assertions for a random
// out-closed set A with an A-cut F.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcl/digraph.hpp"
#include "lcl/error.hpp"
#include "lcl/probability.hpp"
#include "lcl/solve_status.hpp"
#include "lcl/structures.hpp"

namespace lcl {

/// Probability space plus cut model, for exact validation.
struct ExactModel {
  ProductSpace space;
  CutModel model;
};

/// A digraph with its risk table p(e, z), optionally backed by an exact model.
class LclInstance {
 public:
  LclInstance(MultiDigraph digraph, RiskTable risks, std::optional<ExactModel> exact = std::nullopt)
      : digraph_(std::move(digraph)), risks_(std::move(risks)), exact_(std::move(exact)),
        simple_(underlying_simple(digraph_)) {
    risks_.check_domain(digraph_);
    arc_edges_.resize(simple_.arc_count());
    for (std::size_t a = 0; a < simple_.arc_count(); ++a) {
      arc_edges_[a] = digraph_.edges_between(simple_.arc(a).tail, simple_.arc(a).head);
    }
    reach_.reserve(digraph_.vertex_count());
    for (std::size_t v = 0; v < digraph_.vertex_count(); ++v) reach_.push_back(reachable(simple_, v));
  }

  const MultiDigraph& digraph() const { return digraph_; }
  const SimpleDigraph& simple() const { return simple_; }
  const RiskTable& risks() const { return risks_; }
  const std::optional<ExactModel>& exact() const { return exact_; }
  /// E(x, y) for arc index a.
  const std::vector<std::size_t>& arc_edges(std::size_t a) const { return arc_edges_.at(a); }
  const VertexSet& reach(std::size_t v) const { return reach_.at(v); }

 private:
  MultiDigraph digraph_;
  RiskTable risks_;
  std::optional<ExactModel> exact_;
  SimpleDigraph simple_;
  std::vector<std::vector<std::size_t>> arc_edges_;
  std::vector<VertexSet> reach_;
};

namespace detail {

inline bool all_zero(const ArcWeights& w) {
  return std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; });
}

// ρ(e) given ω̄ from tail(e).
inline double edge_risk(const LclInstance& inst, std::size_t e,
                        const std::vector<std::optional<double>>& from_tail) {
  const VertexSet& r = inst.reach(inst.digraph().edge(e).head);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < r.size(); ++z) {
    if (!r[z]) continue;
    const double p = *inst.risks().get(e, z);
    best = std::min(best, p * *from_tail[z]);
  }
  return best;
}

// ω̄ from every vertex that is the tail of some arc.
inline std::vector<std::vector<std::optional<double>>> weights_from_tails(const LclInstance& inst,
                                                                         const ArcWeights& w) {
  std::vector<std::vector<std::optional<double>>> from(inst.digraph().vertex_count());
  for (const auto& arc : inst.simple().arcs()) {
    if (from[arc.tail].empty()) from[arc.tail] = min_product_weights_from(inst.simple(), w, arc.tail);
  }
  return from;
}

}  // namespace detail

/// ρ(e) = min over z ∈ R(head(e)) of p(e, z) · ω̄(tail(e), z).
inline double risk_of_edge(const LclInstance& inst, const ArcWeights& w, std::size_t e) {
  if (e >= inst.digraph().edge_count()) throw InvalidArgument("unknown edge index");
  const auto from = min_product_weights_from(inst.simple(), w, inst.digraph().edge(e).tail);
  return detail::edge_risk(inst, e, from);
}

inline double risk_of_edge(const LclInstance& inst, const ArcWeights& w, const std::string& edge_id) {
  return risk_of_edge(inst, w, inst.digraph().edge_index(edge_id));
}

/// Risks of all edges under ω (ω >= 1).
inline std::vector<double> edge_risks(const LclInstance& inst, const ArcWeights& w) {
  const auto from = detail::weights_from_tails(inst, w);
  std::vector<double> risks(inst.digraph().edge_count());
  for (std::size_t e = 0; e < risks.size(); ++e) {
    risks[e] = detail::edge_risk(inst, e, from[inst.digraph().edge(e).tail]);
  }
  return risks;
}

/// f(ω)(xy) = 1 + Σ_{e ∈ E(x,y)} ρ_ω(e); f(0) = 1.
inline ArcWeights apply_f(const LclInstance& inst, const ArcWeights& w) {
  const std::size_t arcs = inst.simple().arc_count();
  if (w.size() != arcs) throw InvalidArgument("weight assignment is not total on the arcs");
  if (detail::all_zero(w)) return ArcWeights(arcs, 1.0);
  const std::vector<double> risks = edge_risks(inst, w);
  ArcWeights out(arcs, 1.0);
  for (std::size_t a = 0; a < arcs; ++a) {
    for (std::size_t e : inst.arc_edges(a)) out[a] += risks[e];
  }
  return out;
}

struct WeightReport {
  ArcWeights weights;
  /// ω(xy) − 1 − Σ ρ(e) per arc.
  std::vector<double> margins;
  /// ρ_ω(e) per edge.
  std::vector<double> risks;
  bool feasible = false;
  std::size_t iterations = 0;
};

/// Evaluates ω(xy) ≥ 1 + Σ_{e ∈ E(x,y)} ρ_ω(e) on every arc.
inline WeightReport check_condition(const LclInstance& inst, const ArcWeights& w, double tol = 1e-12) {
  require_weights(inst.simple(), w);
  WeightReport report;
  report.weights = w;
  report.risks = edge_risks(inst, w);
  report.margins.assign(w.size(), 0.0);
  report.feasible = true;
  for (std::size_t a = 0; a < w.size(); ++a) {
    double rhs = 1.0;
    for (std::size_t e : inst.arc_edges(a)) rhs += report.risks[e];
    report.margins[a] = w[a] - rhs;
    if (report.margins[a] < -tol) report.feasible = false;
  }
  return report;
}

struct FixedPointResult {
  SolveStatus status = SolveStatus::kIndeterminate;
  /// Last iterate. For kConverged this is the least solution ω_∞.
  WeightReport report;
  std::size_t iterations = 0;
  /// ω_n ≤ ω_{n+1} held on every arc at every step.
  bool chain_monotone = true;
};

using IterateObserver = std::function<void(std::size_t, const ArcWeights&)>;

/// Kleene iteration ω_0 = 0, ω_{n+1} = f(ω_n). The observer sees every iterate.
inline FixedPointResult least_weight_solution(const LclInstance& inst, const SolveOptions& opts = {},
                                              const IterateObserver& observer = {}) {
  if (!(opts.tol > 0.0) || opts.iter_cap == 0 || !(opts.value_cap > 0.0)) {
    throw InvalidArgument("solver caps and tolerance must be positive");
  }
  FixedPointResult result;
  ArcWeights current(inst.simple().arc_count(), 0.0);
  if (observer) observer(0, current);
  for (std::size_t n = 1; n <= opts.iter_cap; ++n) {
    ArcWeights next = apply_f(inst, current);
    double step = 0.0;
    bool blew_up = false;
    for (std::size_t a = 0; a < next.size(); ++a) {
      if (next[a] < current[a]) result.chain_monotone = false;
      step = std::max(step, std::abs(next[a] - current[a]));
      if (!(next[a] <= opts.value_cap)) blew_up = true;
    }
    current = std::move(next);
    result.iterations = n;
    if (observer) observer(n, current);
    if (blew_up) {
      result.status = SolveStatus::kDiverged;
      break;
    }
    if (step < opts.tol) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  if (result.status == SolveStatus::kDiverged) {
    result.report.weights = current;
    result.report.feasible = false;
  } else {
    result.report = check_condition(inst, current, std::numeric_limits<double>::infinity());
    result.report.feasible = result.status == SolveStatus::kConverged;
  }
  result.report.iterations = result.iterations;
  return result;
}

struct ArcBound {
  std::size_t tail = 0;
  std::size_t head = 0;
  double lhs = 0.0;  ///< Pr(y ∈ A)
  double rhs = 0.0;  ///< Pr(x ∈ A) · ω(xy)
  bool pass = false;
};

struct ReachBound {
  std::size_t from = 0;
  std::size_t to = 0;
  double lhs = 0.0;  ///< Pr(z ∈ A) / ω̄(x, z)
  double rhs = 0.0;  ///< Pr(x ∈ A)
  bool pass = false;
};

struct BoundReport {
  std::vector<ArcBound> arcs;
  std::vector<ReachBound> pairs;
  std::vector<double> vertex_probabilities;
  bool all_pass = true;
};

/// Every arc of the instance as an (x, y) query.
inline std::vector<std::pair<std::size_t, std::size_t>> all_arc_queries(const LclInstance& inst) {
  std::vector<std::pair<std::size_t, std::size_t>> q;
  for (const auto& a : inst.simple().arcs()) q.emplace_back(a.tail, a.head);
  return q;
}

/// Every (x, z) with z ∈ R(x) and z ≠ x.
inline std::vector<std::pair<std::size_t, std::size_t>> all_reach_queries(const LclInstance& inst) {
  std::vector<std::pair<std::size_t, std::size_t>> q;
  for (std::size_t x = 0; x < inst.digraph().vertex_count(); ++x) {
    for (std::size_t z = 0; z < inst.digraph().vertex_count(); ++z) {
      if (z != x && inst.reach(x)[z]) q.emplace_back(x, z);
    }
  }
  return q;
}

/// Exact check of Pr(y ∈ A) ≤ Pr(x ∈ A)·ω(xy) on arcs and
/// Pr(x ∈ A) ≥ Pr(z ∈ A)/ω̄(x, z) on reachable pairs. ω must satisfy the condition.
inline BoundReport probability_bounds(const LclInstance& inst, const ArcWeights& w,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& arc_queries,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& reach_queries,
                                      double tol = 1e-9, std::uint64_t cap = kDefaultEnumerationCap) {
  if (!inst.exact()) throw InvalidArgument("probability bounds need an exact space and cut model");
  if (!check_condition(inst, w, tol).feasible) {
    throw InvalidArgument("ω does not satisfy the weight condition");
  }
  BoundReport report;
  report.vertex_probabilities = vertex_probabilities(inst.exact()->space, inst.exact()->model, cap);
  const auto& pr = report.vertex_probabilities;
  for (auto [x, y] : arc_queries) {
    const auto a = inst.simple().arc_index(x, y);
    if (!a) throw InvalidArgument("query is not an arc of the digraph");
    ArcBound b{x, y, pr[y], pr[x] * w[*a], false};
    b.pass = b.lhs <= b.rhs + tol;
    report.all_pass = report.all_pass && b.pass;
    report.arcs.push_back(b);
  }
  for (auto [x, z] : reach_queries) {
    const auto bar = min_product_weight(inst.simple(), w, x, z);
    if (!bar) throw InvalidArgument("query pair is not reachable");
    ReachBound b{x, z, pr[z] / *bar, pr[x], false};
    b.pass = b.lhs <= b.rhs + tol;
    report.all_pass = report.all_pass && b.pass;
    report.pairs.push_back(b);
  }
  return report;
}

/// Both sides of Σ_i (Π_{j<i} a_j)(b_i − a_i) ≤ Π b_i − Π a_i.
inline std::pair<double, double> telescoping_sides(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InvalidArgument("sequences must have equal length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0) || !(b[i] >= std::max(a[i], 1.0))) {
      throw InvalidArgument("need a_i >= 0 and b_i >= max(a_i, 1)");
    }
  }
  double lhs = 0.0;
  double prefix = 1.0;
  double prod_a = 1.0;
  double prod_b = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lhs += prefix * (b[i] - a[i]);
    prefix *= a[i];
    prod_a *= a[i];
    prod_b *= b[i];
  }
  return {lhs, prod_b - prod_a};
}

inline bool telescoping_check(const std::vector<double>& a, const std::vector<double>& b) {
  const auto [lhs, rhs] = telescoping_sides(a, b);
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

// ---------------------------------------------------------------------------
// Nonrepetitive sequences as a cut model on a path digraph.

/// Risk table flavor for the path instance.
enum class RiskMode {
  kExact,       ///< exact conditional probabilities by enumeration
  kListBound,  ///< Π 1/|L_{k+t}| at z = v_j, j ≤ s+t−1; 1 elsewhere
};

namespace detail {

inline std::string nonrep_edge_id(std::size_t s, std::size_t t) {
  return "e(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

// Position (1-based) where the first repetition ends, or n+1 if none.
template <typename Eq>
std::size_t first_repetition_end(std::size_t n, Eq&& same) {
  for (std::size_t end = 2; end <= n; ++end) {
    for (std::size_t t = 1; 2 * t <= end; ++t) {
      const std::size_t s = end - 2 * t + 1;
      bool rep = true;
      for (std::size_t k = s; k < s + t && rep; ++k) rep = same(k, k + t);
      if (rep) return end;
    }
  }
  return n + 1;
}

}  // namespace detail

/// Path digraph v_1..v_n with parallel edges e(s,t) from v_{i+1} to v_i for
/// every s + 2t − 1 = i + 1. A = prefixes that are nonrepetitive, and
/// e(s,t) ∈ F iff a_k = a_{k+t} for s ≤ k ≤ s+t−1.
inline LclInstance build_nonrep_instance(const ListAssignment& lists, RiskMode mode = RiskMode::kExact,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  if (lists.empty()) throw InvalidArgument("need at least one list");
  require_lists(lists);
  const std::size_t n = lists.size();

  MultiDigraph d;
  for (std::size_t i = 1; i <= n; ++i) d.add_vertex("v" + std::to_string(i));
  struct Block {
    std::size_t s, t;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 1; 2 * t <= i + 1; ++t) {
      const std::size_t s = i + 2 - 2 * t;
      d.add_edge(detail::nonrep_edge_id(s, t), i, i - 1);
      blocks.push_back({s, t});
    }
  }

  std::vector<Variable> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(ProductSpace::uniform("a" + std::to_string(i + 1), lists[i]));
  ProductSpace space(std::move(vars));

  CutModel model;
  model.digraph = d;
  model.a_of = [n, space](const SamplePoint& pt) {
    const auto same = [&](std::size_t i, std::size_t j) {
      return space.value_of(pt, i - 1) == space.value_of(pt, j - 1);
    };
    const std::size_t end = detail::first_repetition_end(n, same);
    VertexSet a(n, false);
    for (std::size_t i = 1; i < end && i <= n; ++i) a[i - 1] = true;
    return a;
  };
  model.f_of = [blocks, space](const SamplePoint& pt) {
    EdgeSet f(blocks.size(), false);
    for (std::size_t e = 0; e < blocks.size(); ++e) {
      const auto [s, t] = blocks[e];
      bool rep = true;
      for (std::size_t k = s; k < s + t && rep; ++k) rep = space.value_of(pt, k - 1) == space.value_of(pt, k + t - 1);
      f[e] = rep;
    }
    return f;
  };

  RiskTable risks;
  if (mode == RiskMode::kExact) {
    risks = risk_table_exact(space, model, cap);
  } else {
    risks = RiskTable::over(d, 1.0);
    for (std::size_t e = 0; e < blocks.size(); ++e) {
      const auto [s, t] = blocks[e];
      double bound = 1.0;
      for (std::size_t k = s; k < s + t; ++k) bound /= static_cast<double>(lists[k + t - 1].size());
      // Heads are v_i with i = s + 2t − 2; reachable z are v_1..v_i.
      for (std::size_t j = 1; j <= s + t - 1; ++j) risks.set(e, j - 1, bound);
    }
  }
  return LclInstance(std::move(d), std::move(risks), ExactModel{std::move(space), std::move(model)});
}

/// Alphabet {0, .., size-1} at each of n positions.
inline ListAssignment uniform_lists(std::size_t n, std::size_t size) {
  std::vector<std::string> alphabet;
  for (std::size_t c = 0; c < size; ++c) alphabet.push_back(std::to_string(c));
  return ListAssignment(n, alphabet);
}

}  // namespace lcl
