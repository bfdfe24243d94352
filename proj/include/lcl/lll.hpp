#pragma once

// Lopsided local lemma condition and its translation into the τ condition
// of the downward-closed-family setting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lcl/error.hpp"
#include "lcl/family.hpp"
#include "lcl/solve_status.hpp"

namespace lcl {

/// Events B_1..B_n with neighborhoods Γ(i) (0-based indices), Pr(B_i), and μ(i).
struct LllInstance {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> gamma;
  std::vector<double> probs;
  std::vector<double> mu;
};

inline void validate(const LllInstance& inst) {
  if (inst.gamma.size() != inst.n || inst.probs.size() != inst.n || inst.mu.size() != inst.n) {
    throw InvalidArgument("Γ, p and μ must all have n entries");
  }
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j : inst.gamma[i]) {
      if (j >= inst.n) throw InvalidArgument("Γ(" + std::to_string(i + 1) + ") references an unknown event");
      if (j == i) throw InvalidArgument("Γ(" + std::to_string(i + 1) + ") contains i itself");
    }
    if (!(inst.probs[i] >= 0.0 && inst.probs[i] <= 1.0)) throw InvalidArgument("probabilities must lie in [0, 1]");
    if (!(inst.mu[i] >= 0.0 && inst.mu[i] < 1.0)) throw InvalidArgument("μ values must lie in [0, 1)");
  }
}

struct LllReport {
  bool feasible = true;
  /// Π (1 − μ(i)), the lower bound on Pr(no B_i).
  double bound = 1.0;
  /// μ(i) Π_{j ∈ Γ(i)} (1 − μ(j)) − Pr(B_i).
  std::vector<double> margins;
};

/// Pr(B_i) ≤ μ(i) Π_{j ∈ Γ(i)} (1 − μ(j)) for all i.
inline LllReport check_lopsided(const LllInstance& inst, double tol = 1e-12) {
  validate(inst);
  LllReport report;
  report.margins.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    double rhs = inst.mu[i];
    for (std::size_t j : inst.gamma[i]) rhs *= 1.0 - inst.mu[j];
    report.margins[i] = rhs - inst.probs[i];
    if (report.margins[i] < -tol) report.feasible = false;
    report.bound *= 1.0 - inst.mu[i];
  }
  return report;
}

struct MuToTau {
  TauAssignment tau;
  /// τ(i) − 1 − Pr(B_i)·τ(Γ(i) ∪ {i}).
  std::vector<double> margins;
  bool holds = true;
  /// 1/τ(I), which equals Π(1 − μ(i)).
  double bound = 1.0;
};

inline Subset closed_neighborhood(const LllInstance& inst, std::size_t i) {
  Subset x = inst.gamma[i];
  x.push_back(i);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

/// τ(i) = 1/(1 − μ(i)), checked against τ(i) ≥ 1 + Pr(B_i)·τ(Γ(i) ∪ {i}).
inline MuToTau mu_to_tau(const LllInstance& inst, double tol = 1e-12) {
  if (!check_lopsided(inst, tol).feasible) throw InvalidArgument("μ does not satisfy the lopsided condition");
  MuToTau out;
  out.tau.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) out.tau[i] = 1.0 / (1.0 - inst.mu[i]);
  out.margins.resize(inst.n);
  double total = 1.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    out.margins[i] = out.tau[i] - 1.0 - inst.probs[i] * tau_of(out.tau, closed_neighborhood(inst, i));
    // Relative tolerance: τ values can be large when μ is close to 1.
    if (out.margins[i] < -tol * std::max(1.0, out.tau[i])) out.holds = false;
    total *= out.tau[i];
  }
  out.bound = 1.0 / total;
  return out;
}

/// Bound-mode family instance with B(i) = {B_i} and witness X = Γ(i) ∪ {i},
/// p = Pr(B_i), so the family condition reads τ(i) ≥ 1 + Pr(B_i)·τ(Γ(i) ∪ {i}).
inline std::pair<FamilyInstance, WitnessMap> lll_as_family(const LllInstance& inst) {
  validate(inst);
  FamilyInstance fam;
  WitnessMap witnesses(inst.n);
  fam.events.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    fam.ground.push_back(std::to_string(i + 1));
    fam.events[i].push_back(FamilyEvent{"B" + std::to_string(i + 1), {}});
    witnesses[i].push_back(Witness{closed_neighborhood(inst, i), inst.probs[i]});
  }
  return {std::move(fam), std::move(witnesses)};
}

struct AutoMuResult {
  SolveStatus status = SolveStatus::kIndeterminate;
  std::vector<double> mu;
  std::size_t iterations = 0;
  /// True only when `mu` passes check_lopsided.
  bool feasible = false;
};

/// μ_0 = p, μ_{t+1}(i) = p_i / Π_{j ∈ Γ(i)} (1 − μ_t(j)). The sequence is
/// nondecreasing; reaching μ ≥ 1 means no solution (kDiverged).
inline AutoMuResult auto_mu(const std::vector<double>& probs, const std::vector<std::vector<std::size_t>>& gamma,
                            const SolveOptions& opts = {}) {
  const std::size_t n = probs.size();
  for (double p : probs) {
    if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("auto μ needs probabilities in [0, 1)");
  }
  LllInstance inst{n, gamma, probs, std::vector<double>(n, 0.0)};
  validate(inst);
  AutoMuResult result;
  std::vector<double> mu = probs;
  for (std::size_t t = 1; t <= opts.iter_cap; ++t) {
    std::vector<double> next(n);
    double step = 0.0;
    bool out_of_range = false;
    for (std::size_t i = 0; i < n; ++i) {
      double denom = 1.0;
      for (std::size_t j : gamma[i]) denom *= 1.0 - mu[j];
      next[i] = denom > 0.0 ? probs[i] / denom : 1.0;
      if (!(next[i] < 1.0)) out_of_range = true;
      step = std::max(step, std::abs(next[i] - mu[i]));
    }
    mu = std::move(next);
    result.iterations = t;
    if (out_of_range) {
      result.status = SolveStatus::kDiverged;
      break;
    }
    if (step < opts.tol) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.mu = mu;
  if (result.status == SolveStatus::kConverged) {
    inst.mu = mu;
    result.feasible = check_lopsided(inst, std::max(opts.tol, 1e-12)).feasible;
  }
  return result;
}

}  // namespace lcl
