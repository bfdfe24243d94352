#pragma once

// Choice functions over disjoint universes avoiding forbidden partial choice
// functions: defects, multichoice certificates, the expectation condition and
// a resampling search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lcl/error.hpp"
#include "lcl/random.hpp"
#include "lcl/structures.hpp"

namespace lcl {

/// Membership over all elements, indexed by global element index.
using ElementSet = std::vector<bool>;

class ChoiceInstance {
 public:
  ChoiceInstance(std::vector<std::vector<std::string>> universes, std::vector<std::vector<std::string>> forbidden)
      : universes_(std::move(universes)), members_(universes_.size()), containing_(universes_.size()) {
    for (std::size_t i = 0; i < universes_.size(); ++i) {
      if (universes_[i].empty()) throw InvalidArgument("universe U_" + std::to_string(i + 1) + " is empty");
      for (const auto& x : universes_[i]) {
        if (index_.contains(x)) throw InvalidArgument("element '" + x + "' appears in more than one place");
        index_.emplace(x, names_.size());
        names_.push_back(x);
        owner_.push_back(i);
        members_[i].push_back(names_.size() - 1);
      }
    }
    for (std::size_t j = 0; j < forbidden.size(); ++j) {
      if (forbidden[j].empty()) throw InvalidArgument("forbidden set P_" + std::to_string(j + 1) + " is empty");
      std::vector<std::size_t> p;
      std::vector<bool> used(universes_.size(), false);
      for (const auto& x : forbidden[j]) {
        const std::size_t e = element_index(x);
        if (used[owner_[e]]) {
          throw InvalidArgument("P_" + std::to_string(j + 1) + " picks two elements of one universe");
        }
        used[owner_[e]] = true;
        p.push_back(e);
      }
      std::sort(p.begin(), p.end());
      for (std::size_t e : p) containing_[owner_[e]].push_back(j);
      forbidden_.push_back(std::move(p));
    }
  }

  std::size_t universe_count() const { return universes_.size(); }
  std::size_t element_count() const { return names_.size(); }
  std::size_t forbidden_count() const { return forbidden_.size(); }
  const std::string& element_name(std::size_t e) const { return names_.at(e); }
  std::size_t owner(std::size_t e) const { return owner_.at(e); }
  /// Global indices of the elements of U_i, in declaration order.
  const std::vector<std::size_t>& universe(std::size_t i) const { return members_.at(i); }
  /// Global indices of the elements of P_j.
  const std::vector<std::size_t>& forbidden(std::size_t j) const { return forbidden_.at(j); }
  /// N_i = { j : i ∈ dom(P_j) }.
  const std::vector<std::size_t>& containing(std::size_t i) const { return containing_.at(i); }

  std::size_t element_index(const std::string& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw InvalidArgument("unknown element '" + x + "'");
    return it->second;
  }

  ElementSet set_of(const std::vector<std::string>& ids) const {
    ElementSet s(element_count(), false);
    for (const auto& x : ids) s[element_index(x)] = true;
    return s;
  }

  std::vector<std::string> names_of(const ElementSet& s) const {
    std::vector<std::string> out;
    for (std::size_t e = 0; e < s.size(); ++e) {
      if (s[e]) out.push_back(names_[e]);
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> universes_;
  std::vector<std::string> names_;
  std::vector<std::size_t> owner_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<std::size_t>> forbidden_;
  std::vector<std::vector<std::size_t>> containing_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline void require_set(const ChoiceInstance& inst, const ElementSet& m) {
  if (m.size() != inst.element_count()) throw InvalidArgument("element set has wrong size");
}

inline bool occurs(const ChoiceInstance& inst, std::size_t j, const ElementSet& m) {
  const auto& p = inst.forbidden(j);
  return std::all_of(p.begin(), p.end(), [&](std::size_t e) { return m[e]; });
}

/// def_i(M): number of P_j with i ∈ dom(P_j) and P_j ⊆ M.
inline std::size_t defect(const ChoiceInstance& inst, const ElementSet& m, std::size_t i) {
  require_set(inst, m);
  if (i >= inst.universe_count()) throw InvalidArgument("universe index out of range");
  std::size_t count = 0;
  for (std::size_t j : inst.containing(i)) count += occurs(inst, j, m) ? 1 : 0;
  return count;
}

inline std::size_t part_size(const ChoiceInstance& inst, const ElementSet& m, std::size_t i) {
  const auto& u = inst.universe(i);
  return static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [&](std::size_t e) { return m[e]; }));
}

/// |M_i| ≥ 1 + def_i(M) for every i.
inline bool multichoice_certificate(const ChoiceInstance& inst, const ElementSet& m) {
  require_set(inst, m);
  for (std::size_t i = 0; i < inst.universe_count(); ++i) {
    if (part_size(inst, m, i) < 1 + defect(inst, m, i)) return false;
  }
  return true;
}

inline bool is_choice_function(const ChoiceInstance& inst, const ElementSet& f) {
  require_set(inst, f);
  for (std::size_t i = 0; i < inst.universe_count(); ++i) {
    if (part_size(inst, f, i) != 1) return false;
  }
  return true;
}

/// True iff no P_j occurs in F.
inline bool avoids_all(const ChoiceInstance& inst, const ElementSet& f) {
  require_set(inst, f);
  for (std::size_t j = 0; j < inst.forbidden_count(); ++j) {
    if (occurs(inst, j, f)) return false;
  }
  return true;
}

/// Picks from each M_i the smallest-named element lying in no occurring P_j.
inline ElementSet extract_choice(const ChoiceInstance& inst, const ElementSet& m) {
  if (!multichoice_certificate(inst, m)) throw InvalidArgument("M does not satisfy |M_i| >= 1 + def_i(M)");
  ElementSet blocked(inst.element_count(), false);
  for (std::size_t j = 0; j < inst.forbidden_count(); ++j) {
    if (!occurs(inst, j, m)) continue;
    for (std::size_t e : inst.forbidden(j)) blocked[e] = true;
  }
  ElementSet f(inst.element_count(), false);
  for (std::size_t i = 0; i < inst.universe_count(); ++i) {
    std::optional<std::size_t> pick;
    for (std::size_t e : inst.universe(i)) {
      if (!m[e] || blocked[e]) continue;
      if (!pick || inst.element_name(e) < inst.element_name(*pick)) pick = e;
    }
    if (!pick) throw Error("no unblocked element in a certified universe");
    f[*pick] = true;
  }
  if (!avoids_all(inst, f)) throw Error("extracted choice function does not avoid every forbidden set");
  return f;
}

/// p(x) per global element index.
using MarginalWeights = std::vector<double>;

struct ExpectationReport {
  /// Σ_{x∈U_i} p(x) − 1 − Σ_{j∈N_i} Π_{x∈P_j} p(x).
  std::vector<double> margins;
  /// τ(i) − 1 − Σ_{j∈N_i} Π_{x∈P_j} q(x) · τ(dom P_j).
  std::vector<double> normalized_margins;
  std::vector<double> tau;
  /// max_i |margin − normalized margin|.
  double max_form_gap = 0.0;
  bool forms_agree = true;
  bool feasible = true;
};

inline ExpectationReport check_expectation_condition(const ChoiceInstance& inst, const MarginalWeights& p,
                                                     double tol = 1e-12) {
  if (p.size() != inst.element_count()) throw InvalidArgument("weights must be given for every element");
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("weights must lie in [0, 1]");
  }
  const std::size_t n = inst.universe_count();
  ExpectationReport r;
  r.tau.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e : inst.universe(i)) r.tau[i] += p[e];
    if (!(r.tau[i] > 0.0)) throw InvalidArgument("tau(" + std::to_string(i + 1) + ") is zero");
  }
  r.margins.resize(n);
  r.normalized_margins.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double plain = 0.0, scaled = 0.0, size = 1.0;
    for (std::size_t j : inst.containing(i)) {
      double prod_p = 1.0, prod_q = 1.0, tau_dom = 1.0;
      for (std::size_t e : inst.forbidden(j)) {
        prod_p *= p[e];
        prod_q *= p[e] / r.tau[inst.owner(e)];
        tau_dom *= r.tau[inst.owner(e)];
      }
      plain += prod_p;
      scaled += prod_q * tau_dom;
      size = std::max(size, prod_p);
    }
    r.margins[i] = r.tau[i] - 1.0 - plain;
    r.normalized_margins[i] = r.tau[i] - 1.0 - scaled;
    const double gap = std::abs(r.margins[i] - r.normalized_margins[i]);
    r.max_form_gap = std::max(r.max_form_gap, gap);
    if (gap > 1e-12 * std::max({1.0, r.tau[i], plain})) r.forms_agree = false;
    if (r.margins[i] < -tol) r.feasible = false;
  }
  return r;
}

struct ChoiceSearchResult {
  bool found = false;
  ElementSet choice;
  std::size_t resamples = 0;
  bool verified = false;
};

/// Draws x ∈ U_i with probability q(x) = p(x)/τ(i), then repeatedly redraws
/// every universe of the lowest-numbered occurring P_j until none occurs or
/// the resample cap is reached.
inline ChoiceSearchResult randomized_choice_search(const ChoiceInstance& inst, const MarginalWeights& p,
                                                   std::uint64_t seed, std::size_t cap = 100000) {
  if (p.size() != inst.element_count()) throw InvalidArgument("weights must be given for every element");
  const std::size_t n = inst.universe_count();
  std::vector<std::vector<double>> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    double tau = 0.0;
    for (std::size_t e : inst.universe(i)) tau += p[e];
    if (!(tau > 0.0)) throw InvalidArgument("tau(" + std::to_string(i + 1) + ") is zero");
    for (std::size_t e : inst.universe(i)) q[i].push_back(p[e] / tau);
  }
  SplitMix64 rng(seed);
  std::vector<std::size_t> chosen(n);
  ElementSet f(inst.element_count(), false);
  auto draw = [&](std::size_t i) {
    f[chosen[i]] = false;
    chosen[i] = inst.universe(i)[rng.pick(q[i])];
    f[chosen[i]] = true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    chosen[i] = inst.universe(i).front();
    draw(i);
  }
  ChoiceSearchResult out;
  while (true) {
    std::optional<std::size_t> bad;
    for (std::size_t j = 0; j < inst.forbidden_count() && !bad; ++j) {
      if (occurs(inst, j, f)) bad = j;
    }
    if (!bad) {
      out.found = true;
      break;
    }
    if (out.resamples >= cap) break;
    ++out.resamples;
    for (std::size_t e : inst.forbidden(*bad)) draw(inst.owner(e));
  }
  out.choice = f;
  out.verified = out.found && is_choice_function(inst, f) && avoids_all(inst, f);
  return out;
}

/// Proper k-coloring of a graph as a choice problem: U_i = {(i,c)}, P = {(i,c),(j,c)} per edge and color.
inline ChoiceInstance coloring_choice_instance(const Graph& g, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  auto id = [](std::size_t v, std::size_t c) { return std::to_string(v) + ":" + std::to_string(c); };
  std::vector<std::vector<std::string>> universes(g.vertex_count);
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    for (std::size_t c = 0; c < k; ++c) universes[v].push_back(id(v, c));
  }
  std::vector<std::vector<std::string>> forbidden;
  for (const auto& [u, v] : g.edges) {
    for (std::size_t c = 0; c < k; ++c) forbidden.push_back({id(u, c), id(v, c)});
  }
  return ChoiceInstance(std::move(universes), std::move(forbidden));
}

}  // namespace lcl
