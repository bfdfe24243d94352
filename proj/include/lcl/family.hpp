#pragma once

// Downward-closed random families over a finite ground set I: boundaries,
// σ values for witness sets, the τ condition with its 1/τ(I) bound, and the
// reduction to a cut model on the subset-lattice digraph.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcl/digraph.hpp"
#include "lcl/error.hpp"
#include "lcl/lcl_engine.hpp"
#include "lcl/probability.hpp"
#include "lcl/solve_status.hpp"
#include "lcl/structures.hpp"

namespace lcl {

/// Sorted indices into the ground set.
using Subset = std::vector<std::size_t>;
/// τ(i) per ground element.
using TauAssignment = std::vector<double>;

inline constexpr std::size_t kMaxExactComplement = 20;
inline constexpr std::size_t kMaxHypercubeGround = 4;

inline Subset subset_of_mask(std::uint64_t mask) {
  Subset s;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) s.push_back(i);
  }
  return s;
}

inline std::uint64_t mask_of_subset(const Subset& s) {
  std::uint64_t m = 0;
  for (std::size_t i : s) m |= std::uint64_t{1} << i;
  return m;
}

/// τ(X) = Π_{i ∈ X} τ(i).
inline double tau_of(const TauAssignment& tau, const Subset& x) {
  double p = 1.0;
  for (std::size_t i : x) p *= tau.at(i);
  return p;
}

/// An explicitly listed family of subsets of {0, .., n−1}, n ≤ 20.
struct SetFamily {
  std::size_t ground_size = 0;
  std::vector<bool> members;  // indexed by mask

  explicit SetFamily(std::size_t n) : ground_size(n), members(std::size_t{1} << n, false) {
    if (n > kMaxExactComplement) throw InvalidArgument("explicit families are limited to 20 elements");
  }

  void insert(const Subset& s) { members.at(mask_of_subset(s)) = true; }
  bool contains(std::uint64_t mask) const { return members.at(mask); }
};

inline bool is_downward_closed(const SetFamily& family) {
  for (std::uint64_t m = 0; m < family.members.size(); ++m) {
    if (!family.members[m]) continue;
    for (std::size_t i = 0; i < family.ground_size; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((m & bit) && !family.members[m & ~bit]) return false;
    }
  }
  return true;
}

/// ∂A = { i : S ∈ A and S ∪ {i} ∉ A for some S ⊆ I∖{i} }.
inline Subset boundary(const SetFamily& family) {
  if (!is_downward_closed(family)) throw InvalidArgument("family is not downward-closed");
  Subset out;
  for (std::size_t i = 0; i < family.ground_size; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t m = 0; m < family.members.size(); ++m) {
      if (!(m & bit) && family.members[m] && !family.members[m | bit]) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

struct FamilyEvent {
  std::string name;
  /// Outcome predicate; may be empty for instances used only in bound mode.
  Predicate holds;
};

/// S ∈ A for the family realized at an outcome.
using FamilyMembership = std::function<bool(const SamplePoint&, const Subset&)>;

struct FamilyInstance {
  std::vector<std::string> ground;
  /// B(i) per ground element.
  std::vector<std::vector<FamilyEvent>> events;
  /// Absent for instances that are checked purely with supplied bounds.
  std::optional<ProductSpace> space;
  FamilyMembership contains;

  std::size_t size() const { return ground.size(); }
};

/// Witness set X ∋ i for one event of B(i), with an optional analytic bound
/// p ≥ max_Z Pr(B | Z ∈ A).
struct Witness {
  Subset set;
  std::optional<double> p_bound;
};

/// Parallel to FamilyInstance::events.
using WitnessMap = std::vector<std::vector<Witness>>;

inline std::string subset_name(const FamilyInstance& inst, const Subset& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += inst.ground.at(s[k]);
  }
  return out + "}";
}

/// The realized family at one outcome, listed explicitly (|I| ≤ 20).
inline SetFamily realized_family(const FamilyInstance& inst, const SamplePoint& pt) {
  SetFamily fam(inst.size());
  for (std::uint64_t m = 0; m < fam.members.size(); ++m) fam.members[m] = inst.contains(pt, subset_of_mask(m));
  return fam;
}

/// σ(B, X) = max_{Z ⊆ I∖X} Pr(B | Z ∈ A) · τ(X). Uses the supplied bound if
/// present, otherwise enumerates every Z (|I∖X| ≤ 20) against the space.
inline double sigma_of_witness(const FamilyInstance& inst, const FamilyEvent& event, const Subset& x,
                               const TauAssignment& tau, std::optional<double> p_bound = std::nullopt,
                               std::uint64_t cap = kDefaultEnumerationCap) {
  if (tau.size() != inst.size()) throw InvalidArgument("τ is not total on the ground set");
  if (p_bound) {
    if (!(*p_bound >= 0.0)) throw InvalidArgument("probability bounds must be nonnegative");
    return *p_bound * tau_of(tau, x);
  }
  if (!inst.space || !inst.contains || !event.holds) {
    throw InvalidArgument("exact σ needs a probability space, a family model and event predicates");
  }
  std::vector<bool> in_x(inst.size(), false);
  for (std::size_t i : x) in_x.at(i) = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!in_x[i]) rest.push_back(i);
  }
  if (rest.size() > kMaxExactComplement) {
    throw CapExceeded("|I∖X| exceeds 20; supply an analytic bound p(B, X)");
  }
  const std::size_t zs = std::size_t{1} << rest.size();
  std::vector<Subset> candidates(zs);
  for (std::size_t m = 0; m < zs; ++m) {
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (m >> k & 1U) candidates[m].push_back(rest[k]);
    }
  }
  std::vector<CompensatedSum> given(zs);
  std::vector<CompensatedSum> both(zs);
  for_each_outcome(*inst.space, cap, [&](const SamplePoint& pt, double p) {
    if (p <= 0.0) return;
    const bool b = event.holds(pt);
    for (std::size_t m = 0; m < zs; ++m) {
      if (!inst.contains(pt, candidates[m])) continue;
      given[m].add(p);
      if (b) both[m].add(p);
    }
  });
  double best = 0.0;
  for (std::size_t m = 0; m < zs; ++m) {
    const double pz = given[m].value();
    if (pz > 0.0) best = std::max(best, both[m].value() / pz);
  }
  return best * tau_of(tau, x);
}

struct FamilyReport {
  bool feasible = true;
  /// τ(i) − 1 − Σ_B σ(B, X(i, B)).
  std::vector<double> margins;
  /// σ per (i, event).
  std::vector<std::vector<double>> sigmas;
  /// Lower bound 1/τ(I) on Pr(I ∈ A).
  double bound = 0.0;
};

inline void require_witnesses(const FamilyInstance& inst, const WitnessMap& witnesses) {
  if (witnesses.size() != inst.size()) throw InvalidArgument("witness map does not cover the ground set");
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (witnesses[i].size() != inst.events[i].size()) {
      throw InvalidArgument("missing witness for an event of B(" + inst.ground[i] + ")");
    }
    for (const auto& w : witnesses[i]) {
      if (std::find(w.set.begin(), w.set.end(), i) == w.set.end()) {
        throw InvalidArgument("witness set for " + inst.ground[i] + " must contain it");
      }
      for (std::size_t k : w.set) {
        if (k >= inst.size()) throw InvalidArgument("witness set references an unknown element");
      }
    }
  }
}

/// Checks τ(i) ≥ 1 + Σ_{B ∈ B(i)} σ(B, X(i, B)) for every i.
inline FamilyReport check_family_condition(const FamilyInstance& inst, const TauAssignment& tau,
                                    const WitnessMap& witnesses, double tol = 1e-12) {
  if (inst.events.size() != inst.size()) throw InvalidArgument("B(i) must be given for every element");
  if (tau.size() != inst.size()) throw InvalidArgument("τ is not total on the ground set");
  for (double t : tau) {
    if (!(t >= 1.0)) throw InvalidArgument("τ values must be >= 1");
  }
  require_witnesses(inst, witnesses);
  FamilyReport report;
  report.margins.resize(inst.size());
  report.sigmas.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    double rhs = 1.0;
    for (std::size_t j = 0; j < inst.events[i].size(); ++j) {
      const Witness& w = witnesses[i][j];
      const double s = sigma_of_witness(inst, inst.events[i][j], w.set, tau, w.p_bound);
      report.sigmas[i].push_back(s);
      rhs += s;
    }
    report.margins[i] = tau[i] - rhs;
    if (report.margins[i] < -tol) report.feasible = false;
  }
  double total = 1.0;
  for (double t : tau) total *= t;
  report.bound = 1.0 / total;
  return report;
}

struct HypercubeReduction {
  LclInstance instance;
  /// ω((S ∪ {i}, S)) = τ(i).
  ArcWeights omega;
  /// Vertex index of the subset with the given mask.
  std::vector<std::size_t> vertex_of_mask;
};

/// The subset-lattice digraph: vertices 2^I, edges e[i,S,B] from S ∪ {i} to S,
/// F = { e[i,S,B] : B holds }. Risks are computed exactly.
inline HypercubeReduction hypercube_digraph(const FamilyInstance& inst, const TauAssignment& tau,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
  const std::size_t m = inst.size();
  if (m > kMaxHypercubeGround) throw InvalidArgument("hypercube reduction is limited to |I| <= 4");
  if (!inst.space || !inst.contains) throw InvalidArgument("hypercube reduction needs a space and family model");
  if (tau.size() != m) throw InvalidArgument("τ is not total on the ground set");
  const std::size_t subsets = std::size_t{1} << m;

  // B(i) with the impossible event standing in for an empty bundle.
  std::vector<std::vector<FamilyEvent>> bundles = inst.events;
  for (auto& b : bundles) {
    if (b.empty()) b.push_back(FamilyEvent{"never", [](const SamplePoint&) { return false; }});
  }

  MultiDigraph d;
  std::vector<std::size_t> vertex_of_mask(subsets);
  for (std::uint64_t s = 0; s < subsets; ++s) vertex_of_mask[s] = d.add_vertex(subset_name(inst, subset_of_mask(s)));
  struct EdgeInfo {
    std::size_t element;
    std::size_t event;
  };
  std::vector<EdgeInfo> info;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      if (s & bit) continue;
      for (std::size_t j = 0; j < bundles[i].size(); ++j) {
        d.add_edge("e[" + inst.ground[i] + "," + subset_name(inst, subset_of_mask(s)) + "," + bundles[i][j].name + "]",
                   vertex_of_mask[s | bit], vertex_of_mask[s]);
        info.push_back({i, j});
      }
    }
  }

  CutModel model;
  model.digraph = d;
  model.a_of = [inst, subsets, vertex_of_mask](const SamplePoint& pt) {
    VertexSet a(subsets, false);
    for (std::uint64_t s = 0; s < subsets; ++s) a[vertex_of_mask[s]] = inst.contains(pt, subset_of_mask(s));
    return a;
  };
  model.f_of = [bundles, info](const SamplePoint& pt) {
    EdgeSet f(info.size(), false);
    std::vector<std::vector<int>> cache(bundles.size());
    for (std::size_t i = 0; i < bundles.size(); ++i) cache[i].assign(bundles[i].size(), -1);
    for (std::size_t e = 0; e < info.size(); ++e) {
      int& c = cache[info[e].element][info[e].event];
      if (c < 0) c = bundles[info[e].element][info[e].event].holds(pt) ? 1 : 0;
      f[e] = c == 1;
    }
    return f;
  };

  RiskTable risks = risk_table_exact(*inst.space, model, cap);
  const SimpleDigraph ds = underlying_simple(d);
  ArcWeights omega(ds.arc_count(), 1.0);
  for (std::size_t a = 0; a < ds.arc_count(); ++a) {
    const std::uint64_t diff = ds.arc(a).tail ^ ds.arc(a).head;
    omega[a] = tau[static_cast<std::size_t>(std::countr_zero(diff))];
  }
  // vertex index == mask by construction, which the weight lookup above relies on.
  LclInstance lcl_inst(std::move(d), std::move(risks), ExactModel{*inst.space, std::move(model)});
  return HypercubeReduction{std::move(lcl_inst), std::move(omega), std::move(vertex_of_mask)};
}

struct TauSolveResult {
  SolveStatus status = SolveStatus::kIndeterminate;
  TauAssignment tau;
  std::size_t iterations = 0;
};

/// Least τ with τ(i) ≥ 1 + Σ_B p(B, X)·τ(X) by Kleene iteration from τ ≡ 1.
/// Every witness must carry a bound p.
inline TauSolveResult least_tau_solution(const FamilyInstance& inst, const WitnessMap& witnesses,
                                         const SolveOptions& opts = {}) {
  require_witnesses(inst, witnesses);
  for (const auto& row : witnesses) {
    for (const auto& w : row) {
      if (!w.p_bound) throw InvalidArgument("least τ solving needs a bound p(B, X) for every witness");
    }
  }
  TauSolveResult result;
  TauAssignment tau(inst.size(), 1.0);
  for (std::size_t n = 1; n <= opts.iter_cap; ++n) {
    TauAssignment next(inst.size(), 1.0);
    double step = 0.0;
    bool blew_up = false;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (const auto& w : witnesses[i]) next[i] += *w.p_bound * tau_of(tau, w.set);
      step = std::max(step, std::abs(next[i] - tau[i]));
      if (!(next[i] <= opts.value_cap)) blew_up = true;
    }
    tau = std::move(next);
    result.iterations = n;
    if (blew_up) {
      result.status = SolveStatus::kDiverged;
      break;
    }
    if (step < opts.tol) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.tau = std::move(tau);
  return result;
}

// ---------------------------------------------------------------------------
// Builders.

/// Uniform `colors`-coloring of a hypergraph: A = { S : no monochromatic edge
/// inside S }, B(v) = { B_H : v ∈ H }.
inline FamilyInstance build_hypergraph_coloring_family(const Hypergraph& h, std::size_t colors) {
  if (colors == 0) throw InvalidArgument("need at least one color");
  FamilyInstance inst;
  std::vector<std::string> palette;
  for (std::size_t c = 0; c < colors; ++c) palette.push_back(std::to_string(c));
  std::vector<Variable> vars;
  for (std::size_t v = 0; v < h.vertex_count; ++v) {
    inst.ground.push_back(std::to_string(v + 1));
    vars.push_back(ProductSpace::uniform("c" + std::to_string(v + 1), palette));
  }
  inst.space = ProductSpace(std::move(vars));
  const auto mono = [](const std::vector<std::size_t>& edge, const SamplePoint& pt) {
    for (std::size_t v : edge) {
      if (pt[v] != pt[edge.front()]) return false;
    }
    return true;
  };
  inst.events.resize(h.vertex_count);
  const auto inc = h.incidence();
  for (std::size_t v = 0; v < h.vertex_count; ++v) {
    for (std::size_t e : inc[v]) {
      const auto edge = h.edges[e];
      inst.events[v].push_back(
          FamilyEvent{"H" + std::to_string(e + 1), [edge, mono](const SamplePoint& pt) { return mono(edge, pt); }});
    }
  }
  inst.contains = [edges = h.edges, n = h.vertex_count, mono](const SamplePoint& pt, const Subset& s) {
    std::vector<bool> in_s(n, false);
    for (std::size_t v : s) in_s[v] = true;
    for (const auto& edge : edges) {
      bool inside = true;
      for (std::size_t v : edge) inside = inside && in_s[v];
      if (inside && mono(edge, pt)) return false;
    }
    return true;
  };
  return inst;
}

/// Witnesses X = H ∖ {u} with u the smallest vertex of H other than v, and
/// bound p = colors^(1−|H|).
inline WitnessMap drop_one_witnesses(const Hypergraph& h, std::size_t colors, bool with_bounds) {
  WitnessMap out(h.vertex_count);
  const auto inc = h.incidence();
  for (std::size_t v = 0; v < h.vertex_count; ++v) {
    for (std::size_t e : inc[v]) {
      const auto& edge = h.edges[e];
      Subset x;
      bool dropped = false;
      for (std::size_t u : edge) {
        if (!dropped && u != v && edge.size() > 1) {
          dropped = true;
          continue;
        }
        x.push_back(u);
      }
      std::optional<double> p;
      if (with_bounds) p = std::pow(static_cast<double>(colors), 1.0 - static_cast<double>(edge.size()));
      out[v].push_back(Witness{x, p});
    }
  }
  return out;
}

/// A = 2^{I_0} where I_0 = { i : B_i fails }; B(i) = {B_i}.
inline FamilyInstance build_event_avoidance_family(ProductSpace space, const std::vector<Predicate>& bad) {
  FamilyInstance inst;
  inst.space = std::move(space);
  inst.events.resize(bad.size());
  for (std::size_t i = 0; i < bad.size(); ++i) {
    inst.ground.push_back(std::to_string(i + 1));
    inst.events[i].push_back(FamilyEvent{"B" + std::to_string(i + 1), bad[i]});
  }
  inst.contains = [bad](const SamplePoint& pt, const Subset& s) {
    for (std::size_t i : s) {
      if (bad[i](pt)) return false;
    }
    return true;
  };
  return inst;
}

}  // namespace lcl
