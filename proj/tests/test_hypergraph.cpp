#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fptiso/generate.hpp"
#include "fptiso/hypergraph.hpp"

using namespace fptiso;

namespace {

ColoredHypergraph path3() { return ColoredHypergraph::graph(3, {{0, 1}, {1, 2}}); }
ColoredHypergraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return ColoredHypergraph::graph(n, e);
}

std::vector<Perm> all_perms(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Perm> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace

TEST(Hypergraph, IsomorphismPredicate) {
  auto p = path3();
  EXPECT_TRUE(is_isomorphism(Perm::identity(3), p, p));
  EXPECT_TRUE(is_automorphism(Perm::from_cycles(3, {{0, 2}}), p));
  EXPECT_FALSE(is_automorphism(Perm::from_cycles(3, {{0, 1}}), p));
  EXPECT_THROW(is_isomorphism(Perm::identity(2), p, p), DomainMismatch);
}

TEST(Hypergraph, ColorsAndDirectedEdgesArePreserved) {
  ColoredHypergraph x(3, {{0, 1}, {1, 2}}, {0, 1, 1});
  EXPECT_FALSE(is_automorphism(Perm::from_cycles(3, {{0, 2}}), x));
  ColoredHypergraph d(3, {}, {}, {{0, 1, 5}, {1, 2, 5}, {2, 0, 5}});
  EXPECT_TRUE(is_automorphism(Perm::from_cycles(3, {{0, 1, 2}}), d));
  EXPECT_FALSE(is_automorphism(Perm::from_cycles(3, {{0, 1}}), d));
  ColoredHypergraph d2(3, {}, {}, {{0, 1, 5}, {1, 2, 6}, {2, 0, 5}});
  EXPECT_FALSE(is_automorphism(Perm::from_cycles(3, {{0, 1, 2}}), d2));
}

TEST(Hypergraph, Validation) {
  EXPECT_THROW(ColoredHypergraph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(ColoredHypergraph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(ColoredHypergraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(ColoredHypergraph(3, {}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(ColoredHypergraph(3, {}, {0, -1, 0}), std::invalid_argument);
}

TEST(Hypergraph, Utilities) {
  EXPECT_EQ(max_hyperedge_size(cycle(4)), 2);
  EXPECT_EQ(max_hyperedge_size(ColoredHypergraph(4, {{0, 1, 2}, {3}})), 3);
  // triangle 0-1-2 with pendant 3 attached to 0
  auto tp = ColoredHypergraph::graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
  EXPECT_EQ(blue_degree(tp, 0, {3}), 1);
  EXPECT_EQ(blue_degree(tp, 1, {3}), 0);
  EXPECT_EQ(induced(cycle(4), {0, 1, 2}), path3());
  EXPECT_TRUE(is_b_bounded({{0, 1}, {2}}, 2));
  EXPECT_FALSE(is_b_bounded({{0, 1, 2}}, 2));
}

TEST(Hypergraph, IsomorphismsCompose) {
  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    const int n = rng.range(2, 7);
    auto x = random_hypergraph(n, rng.range(0, 6), 3, rng);
    Perm p = rng.permutation(n), q = rng.permutation(n);
    auto y = relabel(x, p), z = relabel(y, q);
    ASSERT_TRUE(is_isomorphism(p, x, y));
    ASSERT_TRUE(is_isomorphism(q, y, z));
    ASSERT_TRUE(is_isomorphism(compose(p, q), x, z));
  }
}

TEST(Hypergraph, AutomorphismsFormAGroup) {
  Rng rng(4);
  for (int it = 0; it < 30; ++it) {
    const int n = rng.range(2, 6);
    auto x = random_hypergraph(n, rng.range(0, 5), 3, rng);
    std::set<Perm> aut;
    for (const Perm& p : all_perms(n))
      if (is_automorphism(p, x)) aut.insert(p);
    ASSERT_TRUE(aut.count(Perm::identity(n)));
    for (const Perm& a : aut) {
      ASSERT_TRUE(aut.count(inverse(a)));
      for (const Perm& b : aut) ASSERT_TRUE(aut.count(compose(a, b)));
    }
  }
}
