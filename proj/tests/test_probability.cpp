#include <gtest/gtest.h>

#include "lcl/lcl_engine.hpp"
#include "lcl/probability.hpp"
#include "oracles.hpp"

using namespace lcl;

namespace {

ProductSpace coins(std::size_t n) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(ProductSpace::uniform("c" + std::to_string(i), {"H", "T"}));
  return ProductSpace(vars);
}

Predicate heads(std::size_t i) {
  return [i](const SamplePoint& pt) { return pt[i] == 0; };
}

}  // namespace

TEST(ProductSpace, Validation) {
  EXPECT_THROW(ProductSpace({Variable{"a", {"0", "1"}, {0.5, 0.6}}}), InvalidArgument);
  EXPECT_THROW(ProductSpace({Variable{"a", {"0", "1"}, {1.5, -0.5}}}), InvalidArgument);
  EXPECT_THROW(ProductSpace({Variable{"a", {}, {}}}), InvalidArgument);
  EXPECT_THROW(ProductSpace({ProductSpace::uniform("a", {"0"}), ProductSpace::uniform("a", {"0"})}),
               InvalidArgument);
  EXPECT_EQ(coins(5).outcome_count(), 32u);
}

TEST(ExactProb, Examples) {
  EXPECT_DOUBLE_EQ(exact_prob(coins(1), heads(0)), 0.5);
  const ProductSpace three({ProductSpace::uniform("1", {"r", "b"}), ProductSpace::uniform("2", {"r", "b"}),
                            ProductSpace::uniform("3", {"r", "b"})});
  EXPECT_DOUBLE_EQ(exact_prob(three, [](const SamplePoint& p) { return p[0] == p[1] && p[1] == p[2]; }), 0.25);
  EXPECT_DOUBLE_EQ(exact_prob(three, [](const SamplePoint&) { return false; }), 0.0);
}

TEST(ExactProb, EnumerationCap) {
  EXPECT_THROW(exact_prob(coins(10), heads(0), 512), CapExceeded);
}

TEST(CondProb, Examples) {
  const ProductSpace biased({Variable{"q", {"y", "n"}, {0.3, 0.7}}});
  EXPECT_DOUBLE_EQ(cond_prob(biased, heads(0), heads(0)), 1.0);
  EXPECT_DOUBLE_EQ(cond_prob(biased, heads(0), [](const SamplePoint&) { return false; }), 0.0);
  const ProductSpace two = coins(2);
  EXPECT_DOUBLE_EQ(cond_prob(two, [](const SamplePoint& p) { return p[0] == 0 && p[1] == 0; }, heads(0)), 0.5);
}

TEST(EstimateCondProb, Examples) {
  const ProductSpace one = coins(1);
  const auto always = estimate_cond_prob(one, [](const SamplePoint&) { return true; }, heads(0), 100, 3);
  EXPECT_DOUBLE_EQ(always.estimate, 1.0);
  const auto never = estimate_cond_prob(one, heads(0), [](const SamplePoint&) { return false; }, 100, 3);
  EXPECT_TRUE(never.unconditioned);
  EXPECT_EQ(never.estimate, 0.0);
  const auto fair = estimate_cond_prob(one, heads(0), [](const SamplePoint&) { return true; }, 100000, 17);
  EXPECT_NEAR(fair.estimate, 0.5, 0.01);
  EXPECT_GT(fair.half_width, 0.0);
  const auto again = estimate_cond_prob(one, heads(0), [](const SamplePoint&) { return true; }, 100000, 17);
  EXPECT_EQ(fair.estimate, again.estimate);
}

TEST(ValidateCutModel, TrivialModelPasses) {
  CutModel m;
  m.digraph = MultiDigraph({"x", "y"}, {{"e", "x", "y"}});
  m.a_of = [](const SamplePoint&) { return VertexSet{true, true}; };
  m.f_of = [](const SamplePoint&) { return EdgeSet{false}; };
  EXPECT_TRUE(validate_cut_model(coins(2), m).valid);
}

TEST(ValidateCutModel, ReportsWitness) {
  CutModel m;
  m.digraph = MultiDigraph({"x", "y"}, {{"e", "x", "y"}});
  m.a_of = [](const SamplePoint& p) { return p[0] == 1 ? VertexSet{true, false} : VertexSet{true, true}; };
  m.f_of = [](const SamplePoint&) { return EdgeSet{false}; };
  const auto v = validate_cut_model(coins(2), m);
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ((*v.witness)[0], 1u);
  EXPECT_NE(v.reason.find("out-closed"), std::string::npos);

  m.a_of = [](const SamplePoint&) { return VertexSet{false, true}; };
  const auto cut = validate_cut_model(coins(1), m);
  EXPECT_FALSE(cut.valid);
  EXPECT_NE(cut.reason.find("A-cut"), std::string::npos);
}

TEST(ValidateCutModel, PathModelOnFourLetters) {
  const LclInstance inst = build_nonrep_instance(uniform_lists(4, 4));
  EXPECT_TRUE(validate_cut_model(inst.exact()->space, inst.exact()->model).valid);
}

TEST(RiskTableExact, TrivialModels) {
  CutModel m;
  m.digraph = MultiDigraph({"x", "y", "z"}, {{"e1", "x", "y"}, {"e2", "y", "z"}});
  m.a_of = [](const SamplePoint&) { return VertexSet{true, true, true}; };
  m.f_of = [](const SamplePoint&) { return EdgeSet{false, false}; };
  const RiskTable none = risk_table_exact(coins(2), m);
  EXPECT_EQ(*none.get(0, 1), 0.0);
  EXPECT_EQ(*none.get(0, 2), 0.0);
  EXPECT_FALSE(none.get(0, 0).has_value());
  m.f_of = [](const SamplePoint&) { return EdgeSet{true, true}; };
  const RiskTable all = risk_table_exact(coins(2), m);
  EXPECT_EQ(*all.get(0, 2), 1.0);
  EXPECT_EQ(*all.get(1, 2), 1.0);
}

TEST(RiskTableExact, MonochromaticEdgeModel) {
  // Vertices ∅ <- {1} <- {1,2} <- {1,2,3} in a chain; F holds when the pair colored so far agrees.
  const ProductSpace space({ProductSpace::uniform("c1", {"r", "b"}), ProductSpace::uniform("c2", {"r", "b"}),
                            ProductSpace::uniform("c3", {"r", "b"})});
  CutModel m;
  m.digraph = MultiDigraph({"s3", "s2", "s1"}, {{"e12", "s3", "s2"}, {"e23", "s2", "s1"}});
  m.a_of = [](const SamplePoint& p) {
    const bool ok12 = p[0] != p[1];
    const bool ok23 = p[1] != p[2];
    return VertexSet{ok12 && ok23, ok12, true};
  };
  m.f_of = [](const SamplePoint& p) { return EdgeSet{p[1] == p[2], p[0] == p[1]}; };
  ASSERT_TRUE(validate_cut_model(space, m).valid);
  const RiskTable t = risk_table_exact(space, m);
  const auto expected = oracle::conditional_risks(space, m);
  for (const auto& [key, value] : expected) EXPECT_NEAR(*t.get(key.first, key.second), value, 1e-15);
  // Pr(c2 = c3 | c1 ≠ c2) = 1/2 and Pr(c1 = c2 | always) = 1/2.
  EXPECT_DOUBLE_EQ(*t.get(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(*t.get(1, 2), 0.5);
}

TEST(RiskTableExact, MatchesOracleOnRandomModels) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto r = oracle::random_lcl(rng);
    ASSERT_TRUE(validate_cut_model(r.space, r.model).valid);
    const RiskTable t = risk_table_exact(r.space, r.model);
    for (const auto& [key, value] : oracle::conditional_risks(r.space, r.model)) {
      EXPECT_NEAR(*t.get(key.first, key.second), value, 1e-12);
    }
    const auto pv = vertex_probabilities(r.space, r.model);
    const auto po = oracle::vertex_probabilities(r.space, r.model);
    for (std::size_t v = 0; v < pv.size(); ++v) EXPECT_NEAR(pv[v], po[v], 1e-12);
  }
}

TEST(RiskTable, DomainChecks) {
  const MultiDigraph d({"x", "y", "z"}, {{"e1", "x", "y"}, {"e2", "y", "z"}});
  RiskTable t = RiskTable::over(d, 0.5);
  EXPECT_NO_THROW(t.check_domain(d));
  EXPECT_THROW(t.set(0, 1, 1.5), InvalidArgument);
  RiskTable partial(2, 3);
  partial.set(0, 1, 0.1);
  EXPECT_THROW(partial.check_domain(d), InvalidArgument);
  RiskTable extra = RiskTable::over(d, 0.5);
  extra.set(1, 0, 0.1);
  EXPECT_THROW(extra.check_domain(d), InvalidArgument);
}
