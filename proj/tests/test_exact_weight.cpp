#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "fptiso/exact_weight.hpp"
#include "fptiso/generate.hpp"
#include "fptiso/oracle.hpp"

using namespace fptiso;

namespace {

ColoredHypergraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return ColoredHypergraph::graph(n, e);
}

// Every permutation of weight exactly k, by choosing the support and a derangement of it.
bool exists_weight_k(const ColoredHypergraph& x, const ColoredHypergraph& y, int k, const CnfFormula& f) {
  const int n = x.n();
  if (k == 0) return is_isomorphism(Perm::identity(n), x, y) && satisfies(Perm::identity(n), f);
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<int> s;
    for (int u = 0; u < n; ++u)
      if (pick[u]) s.push_back(u);
    std::vector<int> img = s;
    do {
      bool derangement = true;
      for (int i = 0; i < k; ++i) derangement = derangement && img[i] != s[i];
      if (!derangement) continue;
      std::vector<int> full(n);
      std::iota(full.begin(), full.end(), 0);
      for (int i = 0; i < k; ++i) full[s[i]] = img[i];
      Perm p(full);
      if (is_isomorphism(p, x, y) && satisfies(p, f)) return true;
    } while (std::next_permutation(img.begin(), img.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

void check_witness(const std::optional<Perm>& w, const ColoredHypergraph& x, const ColoredHypergraph& y, int k,
                   const CnfFormula& f) {
  ASSERT_TRUE(w);
  EXPECT_EQ(weight(*w), k);
  EXPECT_TRUE(satisfies(*w, f));
  EXPECT_TRUE(is_isomorphism(*w, x, y));
}

bool group_has_solution(const PermGroup& g, int k, const CnfFormula& f) {
  for (const auto& p : small_support_elements(Coset{g, Perm::identity(g.degree())}, k))
    if (weight(p) == k && satisfies(p, f)) return true;
  return false;
}

}  // namespace

TEST(ExactWeight, Bound) {
  EXPECT_EQ(exact_weight_orbit_bound(2, 0), 9);
  EXPECT_EQ(exact_weight_orbit_bound(3, 0), 96);
  EXPECT_EQ(exact_weight_orbit_bound(1, 0), 5);
  EXPECT_EQ(exact_weight_orbit_bound(2, 10), 12);
}

TEST(ExactWeight, Examples) {
  auto c6 = cycle(6);
  auto r = exact_cnf_hga(c6, 0, CnfFormula{});
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->is_identity());

  auto triangles = ColoredHypergraph::graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  check_witness(exact_cnf_hga(triangles, 6, CnfFormula{}), triangles, triangles, 6, CnfFormula{});

  auto c4 = cycle(4);
  CnfFormula f{{{Literal{0, 2, true}}}};
  auto w = exact_cnf_hga(c4, 2, f);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, Perm::from_cycles(4, {{1, 3}}));

  auto hgi = exact_cnf_hgi(c4, c4, 2, CnfFormula{});
  ASSERT_TRUE(hgi);
  EXPECT_EQ(weight(*hgi), 2);
  EXPECT_TRUE(is_automorphism(*hgi, c4));

  auto p1 = ColoredHypergraph::graph(3, {{0, 1}, {1, 2}});
  auto p2 = ColoredHypergraph::graph(3, {{2, 1}, {1, 0}});
  auto pw = exact_cnf_hgi(p1, p2, 2, CnfFormula{});
  ASSERT_TRUE(pw);
  EXPECT_EQ(*pw, Perm::from_cycles(3, {{0, 2}}));

  auto star = ColoredHypergraph::graph(3, {{0, 1}, {0, 2}});
  for (int k = 0; k <= 3; ++k) EXPECT_FALSE(exact_cnf_hgi(p1, ColoredHypergraph::graph(3, {{0, 1}}), k, CnfFormula{}));
  check_witness(exact_cnf_hgi(p1, star, 2, CnfFormula{}), p1, star, 2, CnfFormula{});
}

TEST(ExactWeight, HgaMatchesBruteForce) {
  Rng rng(2024);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = rng.range(2, 8);
    ColoredHypergraph x = iter % 3 == 0   ? random_hypergraph(n, rng.range(0, 2 * n), 3, rng)
                          : iter % 3 == 1 ? random_symmetric_graph(n, rng)
                                          : random_graph(n, 0.5, rng);
    const int k = rng.range(0, 4);
    auto f = random_formula(n, rng.range(0, 3), 3, rng);
    auto expect = brute_exact_cnf_iso(x, x, k, f);
    auto got = exact_cnf_hga(x, k, f);
    ASSERT_EQ(expect.has_value(), got.has_value()) << "iter " << iter;
    if (got) check_witness(got, x, x, k, f);
  }
}

TEST(ExactWeight, HgiMatchesBruteForce) {
  Rng rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = rng.range(2, 7);
    ColoredHypergraph x = iter % 2 ? random_symmetric_graph(n, rng) : random_hypergraph(n, rng.range(0, 2 * n), 3, rng);
    ColoredHypergraph y = iter % 5 == 0 ? random_graph(n, 0.5, rng) : relabel(x, rng.permutation(n));
    const int k = rng.range(0, 4);
    auto f = random_formula(n, rng.range(0, 3), 3, rng);
    auto expect = brute_exact_cnf_iso(x, y, k, f);
    auto got = exact_cnf_hgi(x, y, k, f);
    ASSERT_EQ(expect.has_value(), got.has_value()) << "iter " << iter;
    if (got) check_witness(got, x, y, k, f);
  }
}

TEST(ExactWeight, ThreadsAgree) {
  Rng rng(3);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = rng.range(3, 7);
    auto x = random_symmetric_graph(n, rng);
    auto y = relabel(x, rng.permutation(n));
    auto f = random_formula(n, 2, 2, rng);
    const int k = rng.range(2, 4);
    ExactWeightOptions one, many;
    many.threads = 3;
    EXPECT_EQ(exact_cnf_hgi(x, y, k, f, one), exact_cnf_hgi(x, y, k, f, many));
  }
}

// With k = 2 the loop threshold is 9, so orbits of 10 or more points force shrinking.
TEST(ExactWeight, ShrinkLoopIsSound) {
  Rng rng(9);
  std::vector<ColoredHypergraph> corpus;
  corpus.push_back(ColoredHypergraph(12, {}));
  corpus.push_back(cycle(14));
  {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 8; ++i) e.emplace_back(2 * i, 2 * i + 1);
    corpus.push_back(ColoredHypergraph::graph(16, e));
  }
  {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < 13; ++i) e.emplace_back(0, i);
    corpus.push_back(ColoredHypergraph::graph(13, e));
  }
  {
    std::vector<std::vector<int>> h;
    for (int i = 0; i < 5; ++i) h.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    corpus.push_back(ColoredHypergraph(15, h));
  }
  int fired = 0;
  std::map<ShrinkRule, int> by_rule;
  for (const auto& x : corpus) {
    const int n = x.n();
    for (int rep = 0; rep < 8; ++rep) {
      auto f = random_formula(n, rep % 4, 2, rng);
      ExactWeightOptions opt;
      opt.on_shrink = [&](const ShrinkEvent& e) {
        ++fired;
        ++by_rule[e.rule];
        if (e.rule == ShrinkRule::kSkipped) return;
        EXPECT_EQ(group_has_solution(e.before, 2, f), group_has_solution(e.after, 2, f)) << to_string(e.rule);
      };
      auto got = exact_cnf_hga(x, 2, f, opt);
      ASSERT_EQ(got.has_value(), exists_weight_k(x, x, 2, f));
      if (got) check_witness(got, x, x, 2, f);
    }
  }
  EXPECT_GT(fired, 0);
  EXPECT_GT(by_rule[ShrinkRule::kBlockStabilize], 0);
}

TEST(ExactWeight, LargerInstancesAgainstSupportEnumeration) {
  Rng rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = rng.range(9, 13);
    auto x = random_symmetric_graph(n, rng);
    const int k = rng.range(2, 4);
    auto f = random_formula(n, rng.range(0, 3), 3, rng);
    auto y = relabel(x, rng.permutation(n));
    auto got = exact_cnf_hgi(x, y, k, f);
    ASSERT_EQ(got.has_value(), exists_weight_k(x, y, k, f)) << "iter " << iter;
    if (got) check_witness(got, x, y, k, f);
  }
}

// The block rules cannot fire on the minimal-complexity start group itself, so
// drive the loop from the full automorphism group instead.
TEST(ExactWeight, BlockRulesFromFullAutomorphismGroup) {
  std::vector<ColoredHypergraph> corpus;
  corpus.push_back(cycle(11));
  corpus.push_back(cycle(12));
  {
    // Petersen graph
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
      e.emplace_back(i, (i + 1) % 5);
      e.emplace_back(i, i + 5);
      e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    corpus.push_back(ColoredHypergraph::graph(10, e));
  }
  {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 6; ++i) e.emplace_back(2 * i, 2 * i + 1);
    corpus.push_back(ColoredHypergraph::graph(12, e));
  }
  {
    std::vector<std::pair<int, int>> e;
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 4; ++i) e.emplace_back(4 * c + i, 4 * c + (i + 1) % 4);
    corpus.push_back(ColoredHypergraph::graph(12, e));
  }
  Rng rng(31);
  std::map<ShrinkRule, int> by_rule;
  for (const auto& x : corpus) {
    const PermGroup aut = automorphism_group(x);
    for (int rep = 0; rep < 6; ++rep) {
      auto f = random_formula(x.n(), rep % 3, 2, rng);
      ExactWeightOptions opt;
      opt.on_shrink = [&](const ShrinkEvent& e) {
        ++by_rule[e.rule];
        if (e.rule == ShrinkRule::kSkipped) return;
        EXPECT_EQ(group_has_solution(e.before, 2, f), group_has_solution(e.after, 2, f)) << to_string(e.rule);
      };
      PermGroup g = exact_weight_shrink(2, f, aut, opt);
      for (const auto& o : orbit_partition(g)) 
        EXPECT_LE(BigInt(o.size()), exact_weight_orbit_bound(2, static_cast<int>(f.mentioned_vertices().size())));
      auto got = color_exact_cnf_ga(x, orbit_partition(g), 2, f);
      EXPECT_EQ(got.has_value(), exists_weight_k(x, x, 2, f));
    }
  }
  EXPECT_GT(by_rule[ShrinkRule::kLargeBlocks], 0);
  EXPECT_GT(by_rule[ShrinkRule::kNonAltBlocks], 0);
}
