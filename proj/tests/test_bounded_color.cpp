#include <gtest/gtest.h>

#include "fptiso/bounded_color.hpp"
#include "fptiso/generate.hpp"
#include "fptiso/oracle.hpp"

using namespace fptiso;

namespace {

std::vector<std::vector<int>> classes_of(const std::vector<int>& color) {
  int m = 0;
  for (int c : color) m = std::max(m, c + 1);
  std::vector<std::vector<int>> out(m);
  for (int u = 0; u < static_cast<int>(color.size()); ++u) out[color[u]].push_back(u);
  std::erase_if(out, [](const auto& c) { return c.empty(); });
  return out;
}

bool preserves_classes(const Perm& p, const std::vector<std::vector<int>>& classes) {
  std::vector<int> cl(p.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int u : classes[i]) cl[u] = static_cast<int>(i);
  for (int u = 0; u < p.size(); ++u)
    if (cl[p[u]] != cl[u]) return false;
  return true;
}

}  // namespace

TEST(BoundedColor, MatchedEdges) {
  auto x = ColoredHypergraph::graph(4, {{0, 2}, {1, 3}});
  std::vector<std::vector<int>> classes{{0, 1}, {2, 3}};
  auto r = color_exact_cnf_ga(x, classes, 4, CnfFormula{});
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Perm::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_FALSE(color_exact_cnf_ga(x, classes, 2, CnfFormula{}));
}

TEST(BoundedColor, ZeroWeight) {
  auto x = ColoredHypergraph::graph(3, {{0, 1}});
  std::vector<std::vector<int>> classes{{0, 1}, {2}};
  auto r = color_exact_cnf_ga(x, classes, 0, CnfFormula{});
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->is_identity());
  CnfFormula f{{{Literal{0, 1, false}}}};
  EXPECT_FALSE(color_exact_cnf_ga(x, classes, 0, f));
}

TEST(BoundedColor, FormulaForcesTransposition) {
  ColoredHypergraph x(3, {});
  std::vector<std::vector<int>> classes{{0, 1, 2}};
  CnfFormula f{{{Literal{0, 1, false}}}};
  auto r = color_exact_cnf_ga(x, classes, 2, f);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Perm::from_cycles(3, {{0, 1}}));
}

TEST(BoundedColor, MatchesBruteForce) {
  Rng rng(17);
  int sat = 0, total = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const int n = rng.range(3, 8);
    const int b = rng.range(1, 3);
    auto x = iter % 2 ? random_graph(n, 0.4, rng) : random_symmetric_graph(n, rng);
    auto classes = classes_of(random_bounded_coloring(n, b, rng));
    const int k = rng.range(0, 4);
    auto f = random_formula(n, rng.range(0, 3), 3, rng);
    auto expect = brute_color_exact_cnf_ga(x, classes, k, f);
    auto w = color_exact_cnf_ga_witness(x, classes, k, f);
    ASSERT_EQ(expect.has_value(), w.has_value()) << "iter " << iter << " n=" << n << " k=" << k;
    ++total;
    if (!w) continue;
    ++sat;
    EXPECT_EQ(weight(w->sigma), k);
    EXPECT_TRUE(is_automorphism(w->sigma, x));
    EXPECT_TRUE(satisfies(w->sigma, f));
    EXPECT_TRUE(preserves_classes(w->sigma, classes));
    int sum = 0;
    for (const auto& s : w->factors) {
      EXPECT_TRUE(is_automorphism(s, x));
      EXPECT_GE(weight(s), 2);
      sum += weight(s);
    }
    EXPECT_EQ(sum, k);
  }
  EXPECT_GT(sat, total / 10);
}

TEST(BoundedColor, ThreadsAgree) {
  Rng rng(5);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = rng.range(4, 8);
    auto x = random_symmetric_graph(n, rng);
    auto classes = classes_of(random_bounded_coloring(n, 3, rng));
    auto f = random_formula(n, 2, 2, rng);
    const int k = rng.range(2, 4);
    EXPECT_EQ(color_exact_cnf_ga(x, classes, k, f, {1}), color_exact_cnf_ga(x, classes, k, f, {3}));
  }
}
