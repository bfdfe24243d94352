#include <gtest/gtest.h>

#include "lcl/family.hpp"
#include "lcl/random.hpp"
#include "oracles.hpp"

using namespace lcl;

namespace {

Hypergraph triangle() { return Hypergraph(3, {{0, 1, 2}}); }

SetFamily family_of(std::size_t n, std::initializer_list<Subset> sets) {
  SetFamily f(n);
  for (const auto& s : sets) f.insert(s);
  return f;
}

}  // namespace

TEST(Boundary, Examples) {
  SetFamily full(2);
  std::fill(full.members.begin(), full.members.end(), true);
  EXPECT_TRUE(boundary(full).empty());
  EXPECT_EQ(boundary(family_of(2, {{}})), (Subset{0, 1}));
  EXPECT_EQ(boundary(family_of(2, {{}, {0}, {1}})), (Subset{0, 1}));
  EXPECT_EQ(boundary(family_of(2, {{}, {0}})), (Subset{1}));
}

TEST(Boundary, RejectsNonDownwardClosed) {
  EXPECT_THROW(boundary(family_of(2, {{0, 1}})), InvalidArgument);
  EXPECT_FALSE(is_downward_closed(family_of(2, {{}, {0, 1}})));
}

TEST(SigmaOfWitness, Examples) {
  const Hypergraph h = triangle();
  FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const TauAssignment tau(3, 2.0);
  const FamilyEvent never{"never", [](const SamplePoint&) { return false; }};
  EXPECT_EQ(sigma_of_witness(inst, never, {0, 1}, tau), 0.0);
  // X = I leaves only Z = ∅, which is always in A.
  EXPECT_DOUBLE_EQ(sigma_of_witness(inst, inst.events[0][0], {0, 1, 2}, tau), 0.25 * 8.0);
  // X = {1,3}: Z ∈ {∅, {2}} never excludes anything, so σ = Pr(mono)·τ(X) = 1.
  EXPECT_DOUBLE_EQ(sigma_of_witness(inst, inst.events[0][0], {0, 2}, tau), 1.0);
  EXPECT_DOUBLE_EQ(sigma_of_witness(inst, inst.events[0][0], {0, 2}, tau, 0.5), 2.0);
}

TEST(SigmaOfWitness, ConditioningRaisesProbability) {
  // Two disjoint-ish edges {1,2,3} and {3,4}: knowing {3,4} is properly colored changes Pr(edge 1 mono).
  const Hypergraph h(4, {{0, 1, 2}, {2, 3}});
  FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const TauAssignment tau(4, 1.0);
  const double s = sigma_of_witness(inst, inst.events[0][0], {0}, tau);
  double expected = 0.0;
  for (std::uint64_t zmask = 0; zmask < 8; ++zmask) {
    Subset z;
    for (std::size_t k = 0; k < 3; ++k) {
      if (zmask >> k & 1U) z.push_back(k + 1);
    }
    const auto pz = oracle::probability(*inst.space, [&](const SamplePoint& pt) { return inst.contains(pt, z); });
    const auto both = oracle::probability(*inst.space, [&](const SamplePoint& pt) {
      return inst.contains(pt, z) && inst.events[0][0].holds(pt);
    });
    if (pz > 0) expected = std::max(expected, static_cast<double>(both / pz));
  }
  EXPECT_NEAR(s, expected, 1e-15);
}

TEST(SigmaOfWitness, NeedsBoundWhenTooLarge) {
  std::vector<std::vector<std::size_t>> edges;
  for (std::size_t v = 0; v + 2 < 24; ++v) edges.push_back({v, v + 1, v + 2});
  const Hypergraph h(24, edges);
  FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const TauAssignment tau(24, 1.0);
  EXPECT_THROW(sigma_of_witness(inst, inst.events[0][0], {0}, tau), CapExceeded);
  EXPECT_DOUBLE_EQ(sigma_of_witness(inst, inst.events[0][0], {0}, tau, 0.25), 0.25);
}

TEST(FamilyCondition, EmptyBundles) {
  FamilyInstance inst;
  inst.ground = {"a", "b"};
  inst.events.resize(2);
  const auto r = check_family_condition(inst, TauAssignment{1.0, 1.0}, WitnessMap(2));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.bound, 1.0);
}

TEST(FamilyCondition, TriangleHypergraph) {
  const Hypergraph h = triangle();
  const FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const WitnessMap exact = drop_one_witnesses(h, 2, false);
  const auto r = check_family_condition(inst, TauAssignment(3, 2.0), exact);
  EXPECT_TRUE(r.feasible);
  for (double m : r.margins) EXPECT_NEAR(m, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.bound, 0.125);
  const double whole =
      static_cast<double>(oracle::probability(*inst.space, [&](const SamplePoint& pt) { return inst.contains(pt, {0, 1, 2}); }));
  EXPECT_DOUBLE_EQ(whole, 0.75);
  EXPECT_GE(whole, r.bound);

  const auto tight = check_family_condition(inst, TauAssignment(3, 1.5), exact);
  EXPECT_FALSE(tight.feasible);
  EXPECT_NEAR(tight.margins[0], 1.5 - 1.5625, 1e-15);
}

TEST(FamilyCondition, InputValidation) {
  const Hypergraph h = triangle();
  const FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  EXPECT_THROW(check_family_condition(inst, TauAssignment(3, 2.0), WitnessMap(3)), InvalidArgument);
  WitnessMap bad = drop_one_witnesses(h, 2, true);
  bad[0][0].set = {1, 2};
  EXPECT_THROW(check_family_condition(inst, TauAssignment(3, 2.0), bad), InvalidArgument);
  EXPECT_THROW(check_family_condition(inst, TauAssignment(3, 0.5), drop_one_witnesses(h, 2, true)), InvalidArgument);
}

TEST(HypercubeDigraph, SingleElement) {
  ProductSpace space({ProductSpace::uniform("x", {"0", "1"})});
  const FamilyInstance inst =
      build_event_avoidance_family(space, {[](const SamplePoint&) { return false; }});
  const HypercubeReduction red = hypercube_digraph(inst, TauAssignment{1.0});
  EXPECT_EQ(red.instance.digraph().vertex_count(), 2u);
  EXPECT_EQ(red.instance.simple().arc_count(), 1u);
  EXPECT_TRUE(validate_cut_model(red.instance.exact()->space, red.instance.exact()->model).valid);
}

TEST(HypercubeDigraph, TriangleReduction) {
  const Hypergraph h = triangle();
  const FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const TauAssignment tau(3, 2.0);
  const HypercubeReduction red = hypercube_digraph(inst, tau);
  const LclInstance& lcl = red.instance;
  EXPECT_EQ(lcl.digraph().vertex_count(), 8u);
  EXPECT_TRUE(validate_cut_model(lcl.exact()->space, lcl.exact()->model).valid);
  const auto full = min_product_weight(lcl.simple(), red.omega, red.vertex_of_mask[7], red.vertex_of_mask[0]);
  ASSERT_TRUE(full.has_value());
  EXPECT_DOUBLE_EQ(*full, 8.0);
  for (std::uint64_t s = 0; s < 8; ++s) {
    for (std::uint64_t z = 0; z < 8; ++z) {
      if ((z & ~s) != 0) continue;
      const auto w = min_product_weight(lcl.simple(), red.omega, red.vertex_of_mask[s], red.vertex_of_mask[z]);
      ASSERT_TRUE(w.has_value());
      EXPECT_DOUBLE_EQ(*w, tau_of(tau, subset_of_mask(s & ~z)));
    }
  }
  const auto cond = check_condition(lcl, red.omega);
  EXPECT_TRUE(cond.feasible);
  const auto bounds = probability_bounds(lcl, red.omega, all_arc_queries(lcl), all_reach_queries(lcl));
  EXPECT_TRUE(bounds.all_pass);
  EXPECT_DOUBLE_EQ(1.0 / *full, check_family_condition(inst, tau, drop_one_witnesses(h, 2, false)).bound);
}

TEST(HypercubeDigraph, CutEdgesTrackEvents) {
  const Hypergraph h = triangle();
  const FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const HypercubeReduction red = hypercube_digraph(inst, TauAssignment(3, 2.0));
  const auto& model = red.instance.exact()->model;
  for_each_outcome(*inst.space, kDefaultEnumerationCap, [&](const SamplePoint& pt, double) {
    const EdgeSet f = model.f_of(pt);
    const bool any = std::find(f.begin(), f.end(), true) != f.end();
    EXPECT_EQ(any, inst.events[0][0].holds(pt));
  });
  EXPECT_THROW(hypercube_digraph(build_hypergraph_coloring_family(Hypergraph(5, {{0, 1, 2}}), 2),
                                 TauAssignment(5, 2.0)),
               InvalidArgument);
}

TEST(LeastTau, Examples) {
  const Hypergraph h = triangle();
  const FamilyInstance inst = build_hypergraph_coloring_family(h, 2);
  const auto r = least_tau_solution(inst, drop_one_witnesses(h, 2, true));
  // τ = 1 + τ²/4 has a double root at 2, so convergence is slow but reaches it.
  EXPECT_NE(r.status, SolveStatus::kDiverged);
  for (double t : r.tau) EXPECT_NEAR(t, 2.0, 1e-4);

  WitnessMap zero = drop_one_witnesses(h, 2, true);
  for (auto& row : zero) {
    for (auto& w : row) w.p_bound = 0.0;
  }
  const auto ones = least_tau_solution(inst, zero);
  EXPECT_EQ(ones.status, SolveStatus::kConverged);
  EXPECT_EQ(ones.tau, TauAssignment(3, 1.0));

  WitnessMap big = drop_one_witnesses(h, 2, true);
  for (auto& row : big) {
    for (auto& w : row) w.p_bound = 1.0;
  }
  EXPECT_EQ(least_tau_solution(inst, big).status, SolveStatus::kDiverged);
  EXPECT_THROW(least_tau_solution(inst, drop_one_witnesses(h, 2, false)), InvalidArgument);
}

TEST(FamilyBuilders, DownwardClosedAndBoundaryCovered) {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    std::vector<std::vector<std::size_t>> edges;
    for (std::size_t e = 0; e < 1 + rng.below(3); ++e) {
      std::vector<std::size_t> edge;
      for (std::size_t v = 0; v < n; ++v) {
        if (rng.uniform() < 0.6) edge.push_back(v);
      }
      if (edge.size() >= 2) edges.push_back(edge);
    }
    const Hypergraph h(n, edges);
    const FamilyInstance inst = build_hypergraph_coloring_family(h, 2 + rng.below(2));
    for_each_outcome(*inst.space, kDefaultEnumerationCap, [&](const SamplePoint& pt, double) {
      const SetFamily fam = realized_family(inst, pt);
      ASSERT_TRUE(fam.contains(0));
      ASSERT_TRUE(is_downward_closed(fam));
      for (std::size_t i : boundary(fam)) {
        bool some = false;
        for (const auto& ev : inst.events[i]) some = some || ev.holds(pt);
        EXPECT_TRUE(some);
      }
    });
  }
}
