#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fptiso/exact_complexity.hpp"
#include "fptiso/generate.hpp"
#include "fptiso/oracle.hpp"

using namespace fptiso;

namespace {

ColoredHypergraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return ColoredHypergraph::graph(n, e);
}
Perm cyc(int n, std::vector<std::vector<int>> c) { return Perm::from_cycles(n, c); }

// Colors the union of the supports by rank.
std::vector<int> rank_coloring(const std::vector<Perm>& factors) {
  const int n = factors.front().size();
  std::vector<int> col(n, -1);
  int next = 0;
  for (int u = 0; u < n; ++u)
    for (const auto& f : factors)
      if (f[u] != u) {
        col[u] = next++;
        break;
      }
  return col;
}

bool in_patterns(const std::vector<Perm>& factors, int t) {
  auto p = pattern_of(cycle_graph(factors, rank_coloring(factors)));
  if (!p) return false;
  const auto& all = enumerate_patterns(t);
  return std::binary_search(all.begin(), all.end(), *p);
}

}  // namespace

TEST(ExactComplexity, CycleGraphExample) {
  std::vector<Perm> f{cyc(10, {{0, 1, 2}, {4, 5, 6}}), cyc(10, {{2, 3}}), cyc(10, {{2, 4}, {7, 8, 9}})};
  auto g = cycle_graph(f);
  EXPECT_EQ(g.primal.size(), 10u);
  ASSERT_EQ(g.cycles.size(), 5u);
  std::vector<int> colors;
  for (const auto& c : g.cycles) colors.push_back(c.factor);
  EXPECT_EQ(colors, (std::vector<int>{0, 0, 1, 2, 2}));
  EXPECT_EQ(g.cycles[2].points, (std::vector<int>{2, 3}));
  EXPECT_TRUE(g.is_forest());
  EXPECT_TRUE(is_complexity_additive(f));

  auto star = cycle_graph({cyc(2, {{0, 1}})});
  EXPECT_EQ(star.primal.size(), 2u);
  EXPECT_EQ(star.cycles.size(), 1u);
  auto two = cycle_graph({cyc(4, {{0, 1}}), cyc(4, {{2, 3}})});
  EXPECT_EQ(two.cycles.size(), 2u);
  EXPECT_TRUE(two.is_forest());
  EXPECT_FALSE(cycle_graph({cyc(3, {{0, 1}}), cyc(3, {{0, 1}})}).is_forest());
}

TEST(ExactComplexity, Additivity) {
  EXPECT_TRUE(is_complexity_additive({cyc(4, {{0, 1}}), cyc(4, {{2, 3}})}));
  EXPECT_FALSE(is_complexity_additive({cyc(4, {{0, 1}}), cyc(4, {{0, 1}})}));
  EXPECT_TRUE(is_complexity_additive({cyc(3, {{0, 1}}), cyc(3, {{1, 2}})}));
  EXPECT_THROW(is_complexity_additive({Perm::identity(3)}), std::invalid_argument);
}

TEST(ExactComplexity, PatternCounts) {
  EXPECT_EQ(enumerate_patterns(0).size(), 1u);
  ASSERT_EQ(enumerate_patterns(1).size(), 1u);
  const auto& p1 = enumerate_patterns(1).front();
  EXPECT_EQ(p1.k, 2);
  EXPECT_EQ(p1.colors, 1);
  EXPECT_EQ(enumerate_patterns(2).size(), 16u);
  for (int t = 1; t <= 4; ++t)
    for (const auto& p : enumerate_patterns(t)) {
      EXPECT_TRUE(is_cycle_pattern(p));
      EXPECT_EQ(p.complexity(), t);
      EXPECT_LE(p.k + static_cast<int>(p.cycles.size()), 3 * t);
      EXPECT_EQ(cayley_complexity(p.sigma()), t);
      auto f = p.factors();
      EXPECT_TRUE(is_complexity_additive(f));
      EXPECT_EQ(pattern_of(cycle_graph(f)), p);
    }
}

TEST(ExactComplexity, Realization) {
  const auto& p1 = enumerate_patterns(1).front();
  std::vector<int> h{0, 1, 2, 3};
  EXPECT_TRUE(realizes_color(cyc(4, {{0, 1}}), h, p1, 0));
  EXPECT_FALSE(realizes_color(cyc(4, {{0, 1, 2}}), h, p1, 0));
  EXPECT_FALSE(realizes_color(cyc(4, {{0, 1}, {2, 3}}), h, p1, 0));
  EXPECT_TRUE(realizes_color(cyc(4, {{2, 3}}), std::vector<int>{5, 5, 1, 0}, p1, 0));
}

// Every complexity-additive decomposition into one or two factors lands in the
// pattern set of its complexity.
TEST(ExactComplexity, PatternSetsAreComplete) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> v(n), w(n);
    std::iota(v.begin(), v.end(), 0);
    do {
      Perm sigma(v);
      const int t = cayley_complexity(sigma);
      if (t == 0 || t > 4) continue;
      EXPECT_TRUE(in_patterns({sigma}, t));
      std::iota(w.begin(), w.end(), 0);
      do {
        Perm a(w);
        if (a.is_identity() || a == sigma) continue;
        Perm b = compose(inverse(a), sigma);
        if (!is_complexity_additive({a, b})) continue;
        EXPECT_TRUE(cycle_graph({a, b}).is_forest());
        EXPECT_TRUE(in_patterns({a, b}, t)) << to_cycle_string(a) << " " << to_cycle_string(b);
      } while (std::next_permutation(w.begin(), w.end()));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST(ExactComplexity, Examples) {
  auto p3 = ColoredHypergraph::graph(3, {{0, 1}, {1, 2}});
  auto r = exact_complexity_iso(p3, p3, 1);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, cyc(3, {{0, 2}}));
  auto c4 = cycle(4);
  auto r3 = exact_complexity_iso(c4, c4, 3);
  ASSERT_TRUE(r3);
  EXPECT_EQ(cayley_complexity(*r3), 3);
  EXPECT_TRUE(is_automorphism(*r3, c4));
  EXPECT_FALSE(exact_complexity_iso(c4, c4, 5));
  auto r0 = exact_complexity_iso(c4, c4, 0);
  ASSERT_TRUE(r0);
  EXPECT_TRUE(r0->is_identity());
}

TEST(ExactComplexity, MatchesBruteForce) {
  Rng rng(99);
  int sat = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const int n = rng.range(2, 7);
    auto x = iter % 3 == 0 ? random_hypergraph(n, rng.range(0, 2 * n), 3, rng) : random_symmetric_graph(n, rng);
    auto y = iter % 4 == 0 ? x : relabel(x, rng.permutation(n));
    const int t = rng.range(0, 4);
    auto expect = brute_exact_complexity_iso(x, y, t);
    auto got = exact_complexity_iso_witness(x, y, t);
    ASSERT_EQ(expect.has_value(), got.has_value()) << "iter " << iter << " t=" << t;
    if (!got) continue;
    ++sat;
    EXPECT_EQ(cayley_complexity(got->sigma), t);
    EXPECT_TRUE(is_isomorphism(got->sigma, x, y));
    if (!got->factors.empty()) {
      EXPECT_TRUE(is_complexity_additive(got->factors));
      EXPECT_TRUE(cycle_graph(got->factors).is_forest());
    }
  }
  EXPECT_GT(sat, 30);
}
