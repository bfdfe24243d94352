#pragma once

// Scalar conditions of the form τ ≥ 1 + g(τ), the closed-form degree and
// palette bounds derived from them, and the vertex-peeling procedure for
// color-critical hypergraphs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcl/error.hpp"
#include "lcl/structures.hpp"

namespace lcl {

struct SeriesCondition {
  std::function<double(double)> g;
  /// Optional derivative of g; central differences are used when empty.
  std::function<double(double)> dg;
  /// g is finite on [1, radius). May be +infinity.
  double radius = std::numeric_limits<double>::infinity();
  std::string description;
};

struct FeasibilityResult {
  bool feasible = false;
  /// Least τ ∈ [1, r) with τ − 1 − g(τ) ≥ 0 when feasible; the maximizer otherwise.
  double tau_star = 1.0;
  /// τ* − 1 − g(τ*).
  double margin = 0.0;
  /// Maximizer of τ − 1 − g(τ) over [1, r) and its value.
  double peak_tau = 1.0;
  double peak_margin = -std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  /// Set when the condition generalizes a published argument beyond its stated parameters.
  bool extrapolated = false;
  std::string description;
};

namespace detail {

constexpr std::size_t kGridPoints = 10000;

struct Slack {
  const SeriesCondition& cond;
  std::size_t evaluations = 0;

  double operator()(double t) {
    ++evaluations;
    const double v = t - 1.0 - cond.g(t);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  }

  double derivative(double t, double lo, double hi) {
    if (cond.dg) {
      ++evaluations;
      return 1.0 - cond.dg(t);
    }
    double step = 1e-6 * std::max(1.0, t);
    step = std::min({step, (t - lo) / 2, (hi - t) / 2});
    if (step <= 0.0) return 0.0;
    return ((*this)(t + step) - (*this)(t - step)) / (2 * step);
  }
};

}  // namespace detail

/// Maximizes h(τ) = τ − 1 − g(τ) over [1, r) by a grid scan followed by
/// golden-section refinement, then reports feasibility (max h ≥ −tol) and the
/// least feasible τ.
inline FeasibilityResult scalar_feasible(const SeriesCondition& cond, double tol = 1e-12) {
  if (!cond.g) throw InvalidArgument("series condition has no g");
  FeasibilityResult out;
  out.description = cond.description;
  detail::Slack h{cond};
  if (!(cond.radius > 1.0)) {
    out.tau_star = out.peak_tau = 1.0;
    out.margin = out.peak_margin = -std::numeric_limits<double>::infinity();
    return out;
  }

  double hi;
  if (std::isfinite(cond.radius)) {
    hi = cond.radius - std::max((cond.radius - 1.0) * 1e-12, cond.radius * 4e-16);
  } else {
    hi = 2.0;
    while (hi < 1e12 && h(2 * hi) > h(hi)) hi *= 2;
    hi = std::min(2 * hi, 1e12);
  }

  // Grid scan; geometric spacing when the interval spans orders of magnitude.
  const bool geometric = hi > 100.0;
  auto grid = [&](std::size_t j) {
    const double s = static_cast<double>(j) / detail::kGridPoints;
    return geometric ? std::exp(s * std::log(hi)) : 1.0 + s * (hi - 1.0);
  };
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= detail::kGridPoints; ++j) {
    const double v = h(grid(j));
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  double a = grid(best == 0 ? 0 : best - 1);
  double b = grid(std::min(best + 1, detail::kGridPoints));

  // Golden-section on the bracketing cell.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double hc = h(c), hd = h(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - inv_phi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + inv_phi * (b - a);
      hd = h(d);
    }
  }
  double peak = (a + b) / 2;

  // Sharpen an interior maximizer with bisection on the sign of h'.
  const double lo_cell = grid(best == 0 ? 0 : best - 1);
  const double hi_cell = grid(std::min(best + 1, detail::kGridPoints));
  if (h.derivative(lo_cell, 1.0, hi) > 0.0 && h.derivative(hi_cell, 1.0, hi) < 0.0) {
    double l = lo_cell, r = hi_cell;
    for (int it = 0; it < 200 && r - l > 0.0; ++it) {
      const double m = l + (r - l) / 2;
      if (m <= l || m >= r) break;
      (h.derivative(m, 1.0, hi) > 0.0 ? l : r) = m;
    }
    const double refined = (l + r) / 2;
    if (h(refined) >= h(peak)) peak = refined;
  }

  // Candidates at grid or boundary points can beat the refinement.
  for (double t : {grid(best), 1.0}) {
    if (h(t) > h(peak)) peak = t;
  }
  out.peak_tau = peak;
  out.peak_margin = h(peak);
  out.feasible = out.peak_margin >= -tol;

  const double h1 = h(1.0);
  if (!out.feasible || out.peak_margin <= tol) {
    out.tau_star = peak;
  } else if (h1 >= 0.0) {
    out.tau_star = 1.0;
  } else {
    // h(1) < 0 < h(peak): least root by bisection, keeping the feasible end.
    double l = 1.0, r = peak;
    for (int it = 0; it < 200; ++it) {
      const double m = l + (r - l) / 2;
      if (m <= l || m >= r) break;
      (h(m) >= 0.0 ? r : l) = m;
    }
    out.tau_star = r;
  }
  out.margin = h(out.tau_star);
  out.iterations = h.evaluations;
  return out;
}

// ---------------------------------------------------------------- hypergraph 2-coloring

enum class TwoColoringVariant { kLll, kExact, kCrude, kImproved };

inline std::string to_string(TwoColoringVariant v) {
  switch (v) {
    case TwoColoringVariant::kLll: return "lll";
    case TwoColoringVariant::kExact: return "exact";
    case TwoColoringVariant::kCrude: return "crude";
    case TwoColoringVariant::kImproved: return "improved";
  }
  return "unknown";
}

inline TwoColoringVariant parse_two_coloring_variant(const std::string& s) {
  if (s == "lll") return TwoColoringVariant::kLll;
  if (s == "exact") return TwoColoringVariant::kExact;
  if (s == "crude") return TwoColoringVariant::kCrude;
  if (s == "improved") return TwoColoringVariant::kImproved;
  throw InvalidArgument("unknown variant '" + s + "' (expected lll, exact, crude or improved)");
}

/// τ ≥ 1 + d·τ^m / 2^{k−1} with m = k−1 for the improved witness and m = k otherwise.
inline SeriesCondition two_coloring_condition(unsigned k, double d, TwoColoringVariant variant) {
  const double m = variant == TwoColoringVariant::kImproved ? k - 1.0 : static_cast<double>(k);
  const double scale = d / std::ldexp(1.0, static_cast<int>(k) - 1);
  SeriesCondition cond;
  cond.g = [=](double t) { return scale * std::pow(t, m); };
  cond.dg = [=](double t) { return scale * m * std::pow(t, m - 1); };
  cond.description = "tau >= 1 + d tau^" + std::to_string(static_cast<int>(m)) + " / 2^(k-1), d=" +
                     std::to_string(d) + ", k=" + std::to_string(k);
  return cond;
}

struct TwoColoringBound {
  TwoColoringVariant variant = TwoColoringVariant::kImproved;
  unsigned k = 0;
  double bound = 0.0;
  long long max_degree = 0;
  /// Independent check that max_degree satisfies the underlying condition.
  bool consistent = false;
  FeasibilityResult check;
};

/// Largest degree d for which the chosen argument 2-colors every k-uniform
/// hypergraph of maximum degree d.
inline TwoColoringBound hypergraph_two_coloring_max_degree(unsigned k, TwoColoringVariant variant) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  const double e = std::exp(1.0);
  const double p2 = std::ldexp(1.0, static_cast<int>(k) - 1);
  const double kd = k;
  TwoColoringBound out;
  out.variant = variant;
  out.k = k;
  switch (variant) {
    case TwoColoringVariant::kLll: out.bound = p2 / (e * kd) + 1.0 - 1.0 / kd; break;
    case TwoColoringVariant::kExact: out.bound = p2 / kd * std::pow(1.0 - 1.0 / kd, kd - 1.0); break;
    case TwoColoringVariant::kCrude: out.bound = p2 / (e * kd); break;
    case TwoColoringVariant::kImproved: out.bound = p2 / (e * (kd - 1.0)); break;
  }
  out.max_degree = static_cast<long long>(std::floor(out.bound));
  const double d = static_cast<double>(out.max_degree);
  if (variant == TwoColoringVariant::kLll) {
    // Symmetric LLL: e·p·(D+1) ≤ 1 with p = 2^{1−k}, D = (d−1)k.
    out.check.feasible = e * ((d - 1.0) * kd + 1.0) / p2 <= 1.0 + 1e-12;
    out.check.description = "e ((d-1)k + 1) / 2^(k-1) <= 1";
  } else {
    out.check = scalar_feasible(two_coloring_condition(k, d, variant));
  }
  out.consistent = out.check.feasible;
  return out;
}

// ---------------------------------------------------------------- nonrepetitive

/// ω ≥ 1 + Σ_{t≥1} ω^t / L^t = 1/(1 − ω/L) on [1, L).
inline SeriesCondition nonrepetitive_sequence_condition(double list_size) {
  SeriesCondition cond;
  const double l = list_size;
  cond.g = [l](double w) { return w / (l - w); };
  cond.dg = [l](double w) { return l / ((l - w) * (l - w)); };
  cond.radius = l;
  cond.description = "omega >= 1/(1 - omega/L), L=" + std::to_string(list_size);
  return cond;
}

inline FeasibilityResult nonrepetitive_sequence_feasible(double list_size, double tol = 1e-12) {
  if (!(list_size >= 2.0)) throw InvalidArgument("list size must be at least 2");
  return scalar_feasible(nonrepetitive_sequence_condition(list_size), tol);
}

/// τ ≥ 1 + Σ_{t≥1} tΔ^{2t−1}(τ/k)^t = 1 + (Δτ/k)/(1 − Δ²τ/k)² on [1, k/Δ²).
inline SeriesCondition nonrepetitive_coloring_condition(double delta, double k) {
  SeriesCondition cond;
  cond.g = [=](double t) {
    const double y = delta * delta * t / k;
    return (delta * t / k) / ((1 - y) * (1 - y));
  };
  cond.dg = [=](double t) {
    const double y = delta * delta * t / k;
    return (delta / k) * (1 + y) / ((1 - y) * (1 - y) * (1 - y));
  };
  cond.radius = k / (delta * delta);
  cond.description = "tau >= 1 + (D tau/k)/(1 - D^2 tau/k)^2, D=" + std::to_string(delta) + ", k=" + std::to_string(k);
  return cond;
}

struct ChromaticBound {
  unsigned delta = 0;
  long double value = 0;
  long long k = 0;
  /// y = 1 − (2/Δ)^{1/3} and both sides of k/Δ² ≥ 1/y + 1/(Δ(1−y)²).
  double y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool substitution_holds = false;
  FeasibilityResult check;
};

/// ⌈Δ² + 3·2^{−2/3}Δ^{5/3} + 2^{2/3}Δ^{5/3}/(Δ^{1/3} − 2^{1/3})⌉ colors suffice
/// for a nonrepetitive coloring of any graph of maximum degree Δ.
inline ChromaticBound nonrepetitive_chromatic_bound(unsigned delta) {
  if (delta <= 2) throw InvalidArgument("the bound needs delta^(1/3) > 2^(1/3), i.e. delta >= 3");
  ChromaticBound out;
  out.delta = delta;
  const long double dl = delta;
  const long double c13 = std::cbrt(2.0L);
  const long double d53 = std::pow(dl, 5.0L / 3.0L);
  out.value = dl * dl + 3.0L / (c13 * c13) * d53 + (c13 * c13) * d53 / (std::cbrt(dl) - c13);
  out.k = static_cast<long long>(std::ceil(out.value));
  // For Δ = 2m³ the value is the rational 4m⁶ + 6m⁵ + 4m⁵/(m − 1); take the ceiling exactly.
  const auto m = static_cast<unsigned long long>(std::llround(std::cbrt(delta / 2.0)));
  if (2 * m * m * m == delta && m >= 2) {
    const unsigned long long m5 = m * m * m * m * m;
    out.k = static_cast<long long>(4 * m5 * m + 6 * m5 + (4 * m5 + m - 2) / (m - 1));
  }
  const double dd = delta;
  const double kd = static_cast<double>(out.k);
  out.y = 1.0 - std::cbrt(2.0 / dd);
  out.lhs = kd / (dd * dd);
  out.rhs = 1.0 / out.y + 1.0 / (dd * (1 - out.y) * (1 - out.y));
  out.substitution_holds = out.lhs >= out.rhs;
  out.check = scalar_feasible(nonrepetitive_coloring_condition(dd, kd));
  return out;
}

// ---------------------------------------------------------------- acyclic edge coloring

/// Ratio ρ = (Δ−1)/k: τ ≥ 1 + (ρτ)⁴/(1 − (ρτ)²) + 2(Δ−1)τ/k on [1, 1/ρ).
inline SeriesCondition acyclic_condition(double delta, double k) {
  const double rho = (delta - 1.0) / k;
  const double lin = 2.0 * (delta - 1.0) / k;
  SeriesCondition cond;
  cond.g = [=](double t) {
    const double u = rho * t;
    return u * u * u * u / (1 - u * u) + lin * t;
  };
  cond.dg = [=](double t) {
    const double u = rho * t;
    const double q = 1 - u * u;
    return rho * (4 * u * u * u - 2 * u * u * u * u * u) / (q * q) + lin;
  };
  cond.radius = rho > 0 ? 1.0 / rho : std::numeric_limits<double>::infinity();
  cond.description = "tau >= 1 + (r tau)^4/(1-(r tau)^2) + 2(D-1)tau/k, D=" + std::to_string(delta) +
                     ", k=" + std::to_string(k);
  return cond;
}

/// Extrapolated unless k = 4(Δ−1).
inline FeasibilityResult acyclic_feasible(unsigned delta, unsigned k, double tol = 1e-12) {
  if (delta < 2) throw InvalidArgument("delta must be at least 2");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  FeasibilityResult out = scalar_feasible(acyclic_condition(delta, k), tol);
  out.extrapolated = k != 4 * (delta - 1);
  return out;
}

// ---------------------------------------------------------------- color-critical hypergraphs

struct CriticalSlack {
  double c_min = 0.0;
  double standard_c = 0.0;
  /// standard_c² − 16(k − standard_c); equals 64√k.
  double residual = 0.0;
  bool standard_c_feasible = false;
};

/// Smallest c with c² ≥ 16(k − c), compared with c = 4√k.
inline CriticalSlack critical_min_slack(double k) {
  if (!(k >= 1.0)) throw InvalidArgument("k must be at least 1");
  CriticalSlack out;
  out.c_min = -8.0 + std::sqrt(64.0 + 16.0 * k);
  out.standard_c = 4.0 * std::sqrt(k);
  out.residual = out.standard_c * out.standard_c - 16.0 * (k - out.standard_c);
  out.standard_c_feasible = out.standard_c >= out.c_min;
  return out;
}

struct CriticalCheck {
  /// 4τ/k ≥ 1/(z − 1).
  bool first = false;
  double first_lhs = 0.0, first_rhs = 0.0;
  /// τ ≥ 1 + 4zτ²(k − c)/k².
  bool second = false;
  double second_rhs = 0.0;
  /// Set when z = k/(4τ) + 1: (4(k−c)/k²)τ² − (c/k)τ + 1 ≤ 0.
  bool z_is_balanced = false;
  std::optional<double> quadratic;
  std::optional<bool> quadratic_holds;
  bool holds() const { return first && second; }
};

inline CriticalCheck critical_condition_check(double k, double c, double tau, double z, double tol = 1e-12) {
  if (!(k > 0.0)) throw InvalidArgument("k must be positive");
  if (!(z > 1.0)) throw InvalidArgument("z must exceed 1");
  if (!(tau >= 1.0)) throw InvalidArgument("tau must be at least 1");
  CriticalCheck out;
  out.first_lhs = 4.0 * tau / k;
  out.first_rhs = 1.0 / (z - 1.0);
  out.first = out.first_lhs >= out.first_rhs - tol * std::max(1.0, out.first_rhs);
  out.second_rhs = 1.0 + 4.0 * z * tau * tau * (k - c) / (k * k);
  out.second = tau >= out.second_rhs - tol * std::max(1.0, out.second_rhs);
  const double balanced = k / (4.0 * tau) + 1.0;
  out.z_is_balanced = std::abs(z - balanced) <= 1e-12 * balanced;
  if (out.z_is_balanced) {
    out.quadratic = 4.0 * (k - c) / (k * k) * tau * tau - c / k * tau + 1.0;
    out.quadratic_holds = *out.quadratic <= tol * std::max(1.0, tau * tau);
  }
  return out;
}

/// g(1) = 1 − 1/z, g(t) = 2^{1−t}/z for t > 1.
inline double peel_weight(std::size_t t, double z) {
  if (t == 0) return 0.0;
  return t == 1 ? 1.0 - 1.0 / z : std::ldexp(1.0, 1 - static_cast<int>(std::min<std::size_t>(t, 2000))) / z;
}

/// Edge counts around one surviving vertex v ∈ V′: a_t counts edges H ∋ v with
/// H ⊄ V′ and |H ∩ V′| = t, b_t counts edges H ∋ v with H ⊆ V′ and |H| = t.
struct DegreeProfile {
  std::map<std::size_t, std::size_t> a;
  std::map<std::size_t, std::size_t> b;

  double alpha(std::size_t t, double z) const {
    auto it = a.find(t);
    return it == a.end() ? 0.0 : static_cast<double>(it->second) * peel_weight(t, z);
  }
  double beta(std::size_t t, double z) const {
    auto it = b.find(t);
    return it == b.end() ? 0.0 : static_cast<double>(it->second) * peel_weight(t, z);
  }
  double gamma(double z) const {
    double s = 0.0;
    for (const auto& [t, n] : a) s += static_cast<double>(n) * peel_weight(t, z);
    for (const auto& [t, n] : b) s += static_cast<double>(n) * peel_weight(t, z);
    return s;
  }
};

struct VertexConditionReport {
  /// τ ≥ rhs, with rhs written through α, β and the values of g.
  double rhs = 1.0;
  /// The same right-hand side written with raw counts: 1 + Σ a_t(τ/k)^t + Σ b_t(τ/k)^{t−1}.
  double rhs_counts = 1.0;
  bool holds = false;
  double gamma = 0.0;
  /// γ < k − c, both scalar inequalities, and 2τ/k ≤ 1.
  bool reduction_applies = false;
  /// False only if the reduction applies but the condition fails.
  bool reduction_consistent = true;
};

inline VertexConditionReport critical_vertex_condition(const DegreeProfile& p, double k, double c, double z,
                                                       double tau, double tol = 1e-12) {
  if (!(z > 1.0)) throw InvalidArgument("z must exceed 1");
  if (!(tau >= 1.0)) throw InvalidArgument("tau must be at least 1");
  VertexConditionReport out;
  const double x = 2.0 * tau / k;
  for (const auto& [t, n] : p.a) {
    if (t == 0) throw InvalidArgument("profile counts start at t = 1");
    const double coef = t == 1 ? z / (z - 1.0) * tau / k : 0.5 * z * std::pow(x, static_cast<double>(t));
    out.rhs += p.alpha(t, z) * coef;
    out.rhs_counts += static_cast<double>(n) * std::pow(tau / k, static_cast<double>(t));
  }
  for (const auto& [t, n] : p.b) {
    if (t < 2) throw InvalidArgument("edges inside V' have at least two vertices");
    out.rhs += p.beta(t, z) * z * std::pow(x, static_cast<double>(t - 1));
    out.rhs_counts += static_cast<double>(n) * std::pow(tau / k, static_cast<double>(t - 1));
  }
  out.holds = tau >= out.rhs - tol * std::max(1.0, out.rhs);
  out.gamma = p.gamma(z);
  const CriticalCheck scalar = critical_condition_check(k, c, tau, z, tol);
  out.reduction_applies = out.gamma < k - c && scalar.holds() && x <= 1.0;
  out.reduction_consistent = !out.reduction_applies || out.holds;
  return out;
}

struct PeelResult {
  bool all_peeled = false;
  /// Removed vertices in order, with Σ_{H ∋ v_i} g(|H ∩ V_i|) at removal time.
  std::vector<std::size_t> chain;
  std::vector<double> scores;
  double score_total = 0.0;
  std::size_t edge_count = 0;
  /// |E| > Σ scores ≥ (k − c)n, reported when every vertex was removed.
  bool certificate = false;
  /// V′ in increasing order and the profile of each of its vertices.
  std::vector<std::size_t> remainder;
  std::vector<DegreeProfile> profiles;
  /// All edges have at least three vertices.
  bool true_hypergraph = true;
};

/// Repeatedly removes the lowest-numbered vertex v with Σ_{H ∋ v} g(|H ∩ V_i|) ≥ k − c.
inline PeelResult greedy_peel(const Hypergraph& h, double k, double c, double z) {
  if (!(k - c > 0.0)) throw InvalidArgument("k - c must be positive");
  if (!(z > 1.0)) throw InvalidArgument("z must exceed 1");
  const double threshold = k - c;
  const double slack = 1e-12 * std::max(1.0, threshold);
  const std::size_t n = h.vertex_count;
  const auto incidence = h.incidence();
  PeelResult out;
  out.edge_count = h.edges.size();
  for (const auto& e : h.edges) out.true_hypergraph = out.true_hypergraph && e.size() >= 3;

  std::vector<std::size_t> inside(h.edges.size());
  for (std::size_t e = 0; e < h.edges.size(); ++e) inside[e] = h.edges[e].size();
  std::vector<bool> alive(n, true);
  auto score = [&](std::size_t v) {
    double s = 0.0;
    for (std::size_t e : incidence[v]) s += peel_weight(inside[e], z);
    return s;
  };
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (score(v) + slack >= threshold) ready.insert(v);
  }
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    const double s = score(v);
    out.chain.push_back(v);
    out.scores.push_back(s);
    out.score_total += s;
    alive[v] = false;
    std::set<std::size_t> touched;
    for (std::size_t e : incidence[v]) {
      --inside[e];
      for (std::size_t u : h.edges[e]) {
        if (alive[u]) touched.insert(u);
      }
    }
    for (std::size_t u : touched) {
      if (score(u) + slack >= threshold) {
        ready.insert(u);
      } else {
        ready.erase(u);
      }
    }
  }
  out.all_peeled = out.chain.size() == n;
  if (out.all_peeled) {
    out.certificate = static_cast<double>(out.edge_count) > out.score_total &&
                      out.score_total + slack * static_cast<double>(std::max<std::size_t>(n, 1)) >=
                          threshold * static_cast<double>(n);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    out.remainder.push_back(v);
    DegreeProfile p;
    for (std::size_t e : incidence[v]) {
      if (inside[e] == h.edges[e].size()) {
        ++p.b[inside[e]];
      } else {
        ++p.a[inside[e]];
      }
    }
    out.profiles.push_back(std::move(p));
  }
  return out;
}

}  // namespace lcl
