#pragma once

// Finite product probability spaces: exact enumeration, Monte-Carlo
// estimation, random cut models (A, F) and their exact risk tables.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcl/digraph.hpp"
#include "lcl/error.hpp"
#include "lcl/random.hpp"

namespace lcl {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct Variable {
  std::string name;
  std::vector<std::string> values;
  std::vector<double> weights;
};

/// One outcome: the chosen value index for every variable, in space order.
struct SamplePoint {
  std::vector<std::size_t> values;

  std::size_t operator[](std::size_t var) const { return values[var]; }
  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

using Predicate = std::function<bool(const SamplePoint&)>;

/// Independent finite random variables.
class ProductSpace {
 public:
  ProductSpace() = default;

  explicit ProductSpace(std::vector<Variable> variables) : variables_(std::move(variables)) {
    std::set<std::string> names;
    for (const auto& v : variables_) {
      if (!names.insert(v.name).second) throw InvalidArgument("duplicate variable '" + v.name + "'");
      if (v.values.empty()) throw InvalidArgument("variable '" + v.name + "' has no values");
      if (v.values.size() != v.weights.size()) {
        throw InvalidArgument("variable '" + v.name + "' has mismatched values and weights");
      }
      CompensatedSum total;
      for (double w : v.weights) {
        if (!(w >= 0.0)) throw InvalidArgument("variable '" + v.name + "' has a negative weight");
        total.add(w);
      }
      if (std::abs(total.value() - 1.0) > 1e-12) {
        throw InvalidArgument("weights of variable '" + v.name + "' do not sum to 1");
      }
    }
  }

  /// Variable with uniformly weighted values.
  static Variable uniform(std::string name, std::vector<std::string> values) {
    std::vector<double> weights(values.size(), 1.0 / static_cast<double>(values.size()));
    return Variable{std::move(name), std::move(values), std::move(weights)};
  }

  const std::vector<Variable>& variables() const { return variables_; }
  std::size_t size() const { return variables_.size(); }

  std::size_t variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == name) return i;
    }
    throw InvalidArgument("unknown variable '" + name + "'");
  }

  const std::string& value_of(const SamplePoint& point, std::size_t var) const {
    return variables_.at(var).values.at(point[var]);
  }

  double probability(const SamplePoint& point) const {
    double p = 1.0;
    for (std::size_t i = 0; i < variables_.size(); ++i) p *= variables_[i].weights[point[i]];
    return p;
  }

  /// Number of outcomes, saturated at the maximum uint64 value.
  std::uint64_t outcome_count() const {
    std::uint64_t n = 1;
    for (const auto& v : variables_) {
      const std::uint64_t k = v.values.size();
      if (n > UINT64_MAX / k) return UINT64_MAX;
      n *= k;
    }
    return n;
  }

  SamplePoint sample(SplitMix64& rng) const {
    SamplePoint point;
    point.values.reserve(variables_.size());
    for (const auto& v : variables_) point.values.push_back(rng.pick(v.weights));
    return point;
  }

 private:
  std::vector<Variable> variables_;
};

/// Calls fn(point, probability) for every outcome, in odometer order.
template <typename Fn>
void for_each_outcome(const ProductSpace& space, std::uint64_t cap, Fn&& fn) {
  const std::uint64_t count = space.outcome_count();
  if (count > cap) {
    throw CapExceeded("product space has " + std::to_string(count) +
                      " outcomes, enumeration cap is " + std::to_string(cap));
  }
  SamplePoint point{std::vector<std::size_t>(space.size(), 0)};
  const auto& vars = space.variables();
  for (std::uint64_t n = 0; n < count; ++n) {
    fn(static_cast<const SamplePoint&>(point), space.probability(point));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (++point.values[i] < vars[i].values.size()) break;
      point.values[i] = 0;
    }
  }
}

inline double exact_prob(const ProductSpace& space, const Predicate& event,
                         std::uint64_t cap = kDefaultEnumerationCap) {
  CompensatedSum sum;
  for_each_outcome(space, cap, [&](const SamplePoint& pt, double p) {
    if (event(pt)) sum.add(p);
  });
  return sum.value();
}

/// Pr(P | Q), with Pr(P | Q) = 0 whenever Pr(Q) = 0.
inline double cond_prob(const ProductSpace& space, const Predicate& p, const Predicate& q,
                        std::uint64_t cap = kDefaultEnumerationCap) {
  CompensatedSum both;
  CompensatedSum given;
  for_each_outcome(space, cap, [&](const SamplePoint& pt, double w) {
    if (!q(pt)) return;
    given.add(w);
    if (p(pt)) both.add(w);
  });
  return given.value() > 0.0 ? both.value() / given.value() : 0.0;
}

struct CondEstimate {
  double estimate = 0.0;
  /// 95% normal-approximation half-width.
  double half_width = 0.0;
  /// No trial satisfied Q; the estimate is the conventional 0.
  bool unconditioned = false;
  std::uint64_t conditioned_trials = 0;
};

/// Monte-Carlo estimate of Pr(P | Q). Trial i draws from derive_stream(seed, i).
inline CondEstimate estimate_cond_prob(const ProductSpace& space, const Predicate& p,
                                       const Predicate& q, std::uint64_t trials,
                                       std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  std::uint64_t hits_q = 0;
  std::uint64_t hits_pq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = derive_stream(seed, t);
    const SamplePoint pt = space.sample(rng);
    if (!q(pt)) continue;
    ++hits_q;
    if (p(pt)) ++hits_pq;
  }
  CondEstimate out;
  out.conditioned_trials = hits_q;
  if (hits_q == 0) {
    out.unconditioned = true;
    return out;
  }
  const double n = static_cast<double>(hits_q);
  out.estimate = static_cast<double>(hits_pq) / n;
  out.half_width = 1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

/// The random pair (A, F) as functions of the outcome.
struct CutModel {
  MultiDigraph digraph;
  std::function<VertexSet(const SamplePoint&)> a_of;
  std::function<EdgeSet(const SamplePoint&)> f_of;
};

struct CutValidation {
  bool valid = true;
  std::optional<SamplePoint> witness;
  std::string reason;
};

/// Checks that every positive-probability outcome yields an out-closed A and an A-cut F.
inline CutValidation validate_cut_model(const ProductSpace& space, const CutModel& model,
                                        std::uint64_t cap = kDefaultEnumerationCap) {
  CutValidation result;
  for_each_outcome(space, cap, [&](const SamplePoint& pt, double p) {
    if (!result.valid || p <= 0.0) return;
    const VertexSet a = model.a_of(pt);
    const EdgeSet f = model.f_of(pt);
    if (a.size() != model.digraph.vertex_count() || f.size() != model.digraph.edge_count()) {
      result = {false, pt, "model produced sets of the wrong size"};
    } else if (!is_out_closed(model.digraph, a)) {
      result = {false, pt, "A is not out-closed"};
    } else if (!is_a_cut(model.digraph, a, f)) {
      result = {false, pt, "F is not an A-cut"};
    }
  });
  return result;
}

/// p(e, z) = Pr(e ∈ F | z ∈ A), defined for z ∈ R_D(head(e)).
class RiskTable {
 public:
  RiskTable() = default;
  RiskTable(std::size_t edges, std::size_t vertices)
      : edges_(edges), vertices_(vertices), values_(edges * vertices, 0.0),
        defined_(edges * vertices, false) {}

  /// Table with the domain of `d` and every entry set to `fill`.
  static RiskTable over(const MultiDigraph& d, double fill) {
    RiskTable t(d.edge_count(), d.vertex_count());
    const SimpleDigraph ds = underlying_simple(d);
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      const VertexSet r = reachable(ds, d.edge(e).head);
      for (std::size_t z = 0; z < r.size(); ++z) {
        if (r[z]) t.set(e, z, fill);
      }
    }
    return t;
  }

  std::size_t edge_count() const { return edges_; }
  std::size_t vertex_count() const { return vertices_; }

  void set(std::size_t e, std::size_t z, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("risk entries must lie in [0, 1]");
    values_.at(e * vertices_ + z) = p;
    defined_.at(e * vertices_ + z) = true;
  }

  std::optional<double> get(std::size_t e, std::size_t z) const {
    const std::size_t k = e * vertices_ + z;
    if (!defined_.at(k)) return std::nullopt;
    return values_[k];
  }

  /// Throws unless the domain is exactly {(e, z) : z ∈ R_D(head(e))}.
  void check_domain(const MultiDigraph& d) const {
    if (edges_ != d.edge_count() || vertices_ != d.vertex_count()) {
      throw InvalidArgument("risk table dimensions do not match the digraph");
    }
    const SimpleDigraph ds = underlying_simple(d);
    for (std::size_t e = 0; e < edges_; ++e) {
      const VertexSet r = reachable(ds, d.edge(e).head);
      for (std::size_t z = 0; z < vertices_; ++z) {
        if (r[z] != defined_[e * vertices_ + z]) {
          throw InvalidArgument("risk table entry (" + d.edge(e).id + ", " + d.vertex_name(z) +
                                (r[z] ? ") is missing" : ") is outside the reachable domain"));
        }
      }
    }
  }

 private:
  std::size_t edges_ = 0;
  std::size_t vertices_ = 0;
  std::vector<double> values_;
  std::vector<bool> defined_;
};

/// Exact Pr(v ∈ A) for every vertex.
inline std::vector<double> vertex_probabilities(const ProductSpace& space, const CutModel& model,
                                                std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<CompensatedSum> sums(model.digraph.vertex_count());
  for_each_outcome(space, cap, [&](const SamplePoint& pt, double p) {
    if (p <= 0.0) return;
    const VertexSet a = model.a_of(pt);
    for (std::size_t v = 0; v < sums.size(); ++v) {
      if (a[v]) sums[v].add(p);
    }
  });
  std::vector<double> out;
  out.reserve(sums.size());
  for (const auto& s : sums) out.push_back(s.value());
  return out;
}

/// Exact risk table: a single enumeration pass accumulates Pr(z ∈ A) and
/// Pr(e ∈ F ∧ z ∈ A) for every pair in the reachable domain.
inline RiskTable risk_table_exact(const ProductSpace& space, const CutModel& model,
                                  std::uint64_t cap = kDefaultEnumerationCap) {
  const MultiDigraph& d = model.digraph;
  const SimpleDigraph ds = underlying_simple(d);
  std::vector<std::vector<std::size_t>> domain(d.edge_count());
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const VertexSet r = reachable(ds, d.edge(e).head);
    for (std::size_t z = 0; z < r.size(); ++z) {
      if (r[z]) domain[e].push_back(z);
    }
  }
  std::vector<CompensatedSum> in_a(d.vertex_count());
  std::vector<CompensatedSum> joint(d.edge_count() * d.vertex_count());
  for_each_outcome(space, cap, [&](const SamplePoint& pt, double p) {
    if (p <= 0.0) return;
    const VertexSet a = model.a_of(pt);
    const EdgeSet f = model.f_of(pt);
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a[v]) in_a[v].add(p);
    }
    for (std::size_t e = 0; e < f.size(); ++e) {
      if (!f[e]) continue;
      for (std::size_t z : domain[e]) {
        if (a[z]) joint[e * d.vertex_count() + z].add(p);
      }
    }
  });
  RiskTable table(d.edge_count(), d.vertex_count());
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    for (std::size_t z : domain[e]) {
      const double pz = in_a[z].value();
      const double pj = joint[e * d.vertex_count() + z].value();
      table.set(e, z, pz > 0.0 ? std::min(1.0, pj / pz) : 0.0);
    }
  }
  return table;
}

}  // namespace lcl
