#include <gtest/gtest.h>

#include "lcl/digraph.hpp"
#include "lcl/random.hpp"
#include "oracles.hpp"

using namespace lcl;

namespace {

MultiDigraph chain() { return MultiDigraph({"x", "y", "z"}, {{"e1", "x", "y"}, {"e2", "y", "z"}}); }

VertexSet set_of(const MultiDigraph& d, std::initializer_list<const char*> names) {
  VertexSet s(d.vertex_count(), false);
  for (const char* n : names) s[d.vertex_index(n)] = true;
  return s;
}

}  // namespace

TEST(UnderlyingSimple, CollapsesParallelEdges) {
  const MultiDigraph d({"x", "y"}, {{"e1", "x", "y"}, {"e2", "x", "y"}});
  const SimpleDigraph s = underlying_simple(d);
  ASSERT_EQ(s.arc_count(), 1u);
  EXPECT_EQ(s.arc(0).tail, 0u);
  EXPECT_EQ(s.arc(0).head, 1u);
  EXPECT_EQ(d.edges_between(0, 1).size(), 2u);
}

TEST(UnderlyingSimple, EmptyAndAntiparallel) {
  EXPECT_EQ(underlying_simple(MultiDigraph({"x", "y"}, {})).arc_count(), 0u);
  const SimpleDigraph s = underlying_simple(MultiDigraph({"x", "y"}, {{"e1", "x", "y"}, {"e2", "y", "x"}}));
  EXPECT_EQ(s.arc_count(), 2u);
  EXPECT_TRUE(s.arc_index(0, 1).has_value());
  EXPECT_TRUE(s.arc_index(1, 0).has_value());
}

TEST(MultiDigraph, RejectsBadInput) {
  EXPECT_THROW(MultiDigraph({"x", "x"}, {}), InvalidArgument);
  EXPECT_THROW(MultiDigraph({"x", "y"}, {{"e1", "x", "q"}}), InvalidArgument);
  EXPECT_THROW(MultiDigraph({"x", "y"}, {{"e1", "x", "y"}, {"e1", "y", "x"}}), InvalidArgument);
}

TEST(MultiDigraph, AllowsLoops) {
  const MultiDigraph d({"x"}, {{"e1", "x", "x"}, {"e2", "x", "x"}});
  EXPECT_EQ(d.edge_count(), 2u);
  EXPECT_EQ(underlying_simple(d).arc_count(), 1u);
}

TEST(Reachable, ChainIsolatedCycle) {
  const SimpleDigraph s = underlying_simple(chain());
  EXPECT_EQ(reachable(s, 0), (VertexSet{true, true, true}));
  EXPECT_EQ(reachable(s, 2), (VertexSet{false, false, true}));
  const SimpleDigraph iso = underlying_simple(MultiDigraph({"v", "w"}, {}));
  EXPECT_EQ(reachable(iso, 0), (VertexSet{true, false}));
  const SimpleDigraph cyc =
      underlying_simple(MultiDigraph({"a", "b", "c"}, {{"1", "a", "b"}, {"2", "b", "c"}, {"3", "c", "a"}}));
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(reachable(cyc, v), (VertexSet{true, true, true}));
}

TEST(MinProductWeight, ChainProduct) {
  const SimpleDigraph s = underlying_simple(chain());
  ArcWeights w(2);
  w[*s.arc_index(0, 1)] = 2.0;
  w[*s.arc_index(1, 2)] = 3.0;
  EXPECT_DOUBLE_EQ(*min_product_weight(s, w, 0, 2), 6.0);
  EXPECT_DOUBLE_EQ(*min_product_weight(s, w, 1, 1), 1.0);
  EXPECT_FALSE(min_product_weight(s, w, 2, 0).has_value());
}

TEST(MinProductWeight, TakesCheaperRoute) {
  const MultiDigraph d({"x", "y", "z"}, {{"a", "x", "z"}, {"b", "x", "y"}, {"c", "y", "z"}});
  const SimpleDigraph s = underlying_simple(d);
  ArcWeights w(3);
  w[*s.arc_index(0, 2)] = 5.0;
  w[*s.arc_index(0, 1)] = 2.0;
  w[*s.arc_index(1, 2)] = 2.0;
  EXPECT_DOUBLE_EQ(*min_product_weight(s, w, 0, 2), 4.0);
}

TEST(MinProductWeight, RejectsWeightsBelowOne) {
  const SimpleDigraph s = underlying_simple(chain());
  EXPECT_THROW(min_product_weight(s, ArcWeights{0.5, 2.0}, 0, 2), InvalidArgument);
  EXPECT_THROW(min_product_weight(s, ArcWeights{2.0}, 0, 2), InvalidArgument);
}

TEST(MinProductWeight, MatchesPathEnumeration) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    MultiDigraph d;
    for (std::size_t v = 0; v < n; ++v) d.add_vertex("v" + std::to_string(v));
    const std::size_t m = rng.below(3 * n);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t x = rng.below(n);
      std::size_t y = rng.below(n - 1);
      if (y >= x) ++y;
      d.add_edge("e" + std::to_string(e), x, y);
    }
    const SimpleDigraph s = underlying_simple(d);
    ArcWeights w(s.arc_count());
    oracle::Matrix mat{n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
    for (std::size_t a = 0; a < s.arc_count(); ++a) {
      w[a] = 1.0 + 4.0 * rng.uniform();
      mat.w[s.arc(a).tail][s.arc(a).head] = w[a];
    }
    const auto expected = oracle::path_minima(mat);
    for (std::size_t x = 0; x < n; ++x) {
      const auto got = min_product_weights_from(s, w, x);
      for (std::size_t z = 0; z < n; ++z) {
        if (std::isinf(expected[x][z])) {
          EXPECT_FALSE(got[z].has_value());
        } else {
          ASSERT_TRUE(got[z].has_value());
          EXPECT_NEAR(*got[z], expected[x][z], 1e-12 * expected[x][z]);
        }
      }
    }
  }
}

TEST(OutClosed, Examples) {
  const MultiDigraph d = chain();
  EXPECT_TRUE(is_out_closed(d, set_of(d, {"y", "z"})));
  EXPECT_FALSE(is_out_closed(d, set_of(d, {"x"})));
  EXPECT_TRUE(is_out_closed(d, set_of(d, {})));
  EXPECT_TRUE(is_out_closed(d, set_of(d, {"x", "y", "z"})));
  EXPECT_TRUE(is_out_closed(underlying_simple(d), set_of(d, {"z"})));
}

TEST(ACut, Examples) {
  const MultiDigraph single({"x", "y"}, {{"e", "x", "y"}});
  EXPECT_TRUE(is_a_cut(single, VertexSet{false, true}, EdgeSet{true}));
  EXPECT_FALSE(is_a_cut(single, VertexSet{false, true}, EdgeSet{false}));
  EXPECT_TRUE(is_a_cut(single, VertexSet{true, true}, EdgeSet{false}));
  const MultiDigraph par({"x", "y"}, {{"e1", "x", "y"}, {"e2", "x", "y"}});
  EXPECT_TRUE(is_a_cut(par, VertexSet{false, true}, EdgeSet{false, true}));
  EXPECT_FALSE(is_a_cut(par, VertexSet{false, true}, EdgeSet{false, false}));
  EXPECT_THROW(is_a_cut(single, VertexSet{true, false}, EdgeSet{false}), InvalidArgument);
}

TEST(OutClosure, IsSmallestClosedSuperset) {
  const MultiDigraph d = chain();
  const SimpleDigraph s = underlying_simple(d);
  EXPECT_EQ(out_closure(s, set_of(d, {"y"})), set_of(d, {"y", "z"}));
  EXPECT_EQ(out_closure(s, set_of(d, {})), set_of(d, {}));
}
