#include <gtest/gtest.h>

#include <algorithm>

#include "fptiso/colga.hpp"
#include "fptiso/generate.hpp"
#include "fptiso/group.hpp"
#include "fptiso/oracle.hpp"

using namespace fptiso;

namespace {

ColoredHypergraph graph(int n, const std::vector<std::pair<int, int>>& e, std::vector<int> colors = {}) {
  auto g = ColoredHypergraph::graph(n, e);
  return colors.empty() ? g : g.with_colors(colors);
}

std::vector<int> all(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

int blue_weight(const Perm& p, const std::vector<int>& blue) {
  int w = 0;
  for (int u : blue) w += p[u] != u;
  return w;
}

std::vector<std::vector<int>> classes_of(const std::vector<int>& colors) {
  int m = 0;
  for (int c : colors) m = std::max(m, c + 1);
  std::vector<std::vector<int>> out(m);
  for (std::size_t u = 0; u < colors.size(); ++u) out[colors[u]].push_back(static_cast<int>(u));
  return out;
}

}  // namespace

TEST(ColorRefine, Examples) {
  auto p3 = color_refine(graph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(p3[0], p3[2]);
  EXPECT_NE(p3[0], p3[1]);
  auto c4 = color_refine(graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  EXPECT_EQ(std::count(c4.begin(), c4.end(), c4[0]), 4);
  auto star = color_refine(graph(4, {{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_NE(star[0], star[1]);
  EXPECT_EQ(star[1], star[2]);
  EXPECT_EQ(star[2], star[3]);
}

TEST(LocalComplement, Examples) {
  auto a = local_complement(graph(2, {{0, 1}}));
  EXPECT_TRUE(a.hyperedges().empty());
  auto b = local_complement(graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {0, 0, 1, 1}));
  EXPECT_TRUE(b.hyperedges().empty());
  auto m = graph(4, {{0, 2}, {1, 3}}, {0, 0, 1, 1});
  EXPECT_EQ(local_complement(m), m);
}

TEST(LocalComplement, KeepsAutomorphismsAndShape) {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    auto inst = random_redblue(rng.range(3, 8), rng.range(0, 5), 3, 0.4, rng);
    auto s = colga_initial_state(inst.x, inst.red, inst.blue);
    s.x = s.x.with_colors(color_refine(s.x));
    auto c = local_complement(s.x);
    const PermGroup before = automorphism_group(s.x);
    EXPECT_EQ(before.order(), automorphism_group(c).order());
    for (const auto& g : before.generators()) EXPECT_TRUE(is_automorphism(g, c));
    auto cls = classes_of(c.colors());
    for (const auto& ci : cls)
      for (const auto& cj : cls) {
        if (ci.size() > 3 || cj.size() > 3 || !s.red[ci[0]] || !s.red[cj[0]]) continue;
        int e = 0;
        for (int u : ci)
          for (int v : cj) e += c.has_hyperedge({std::min(u, v), std::max(u, v)}) && u != v;
        if (&ci == &cj) EXPECT_EQ(e, 0);
        else EXPECT_TRUE(e == 0 || (ci.size() == cj.size() && e == static_cast<int>(ci.size())));
      }
  }
}

TEST(FixHeavy, Examples) {
  // red pair 0,1 matched; 0 sees blue 2,3,4 and 1 sees blue 5,6,7
  auto x = graph(8, {{0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}}, {0, 0, 1, 1, 1, 1, 1, 1});
  auto s = colga_initial_state(x, {0, 1}, {2, 3, 4, 5, 6, 7});
  auto heavy = fix_heavy_classes(s, 2);
  EXPECT_NE(heavy.x.color(0), heavy.x.color(1));
  auto light = fix_heavy_classes(s, 3);
  EXPECT_EQ(light.x.color(0), light.x.color(1));
  auto iso = colga_initial_state(graph(4, {{2, 3}}, {0, 0, 1, 1}), {0, 1}, {2, 3});
  auto r = fix_heavy_classes(iso, 0);
  EXPECT_EQ(r.x.color(0), r.x.color(1));
}

TEST(Contract, TwoMatchedTriples) {
  auto x = graph(6, {{0, 3}, {1, 4}, {2, 5}}, {0, 0, 0, 1, 1, 1});
  auto s = colga_initial_state(x, all(6), {});
  s = fix_heavy_classes(s, 1);
  auto c = contract_matching_components(s);
  ASSERT_FALSE(c.restart);
  ASSERT_TRUE(c.lossless);
  EXPECT_EQ(c.state.red_classes().size(), 1u);
  EXPECT_TRUE(c.state.x.hyperedges().empty());
}

TEST(Contract, PathOfPairsReroutesBlue) {
  // classes {0,1},{2,3},{4,5} matched in a path, blue 6,7 hang off the far class
  auto x = graph(8, {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}}, {0, 0, 1, 1, 2, 2, 3, 3});
  auto s = fix_heavy_classes(colga_initial_state(x, {0, 1, 2, 3, 4, 5}, {6, 7}), 2);
  auto c = contract_matching_components(s);
  ASSERT_TRUE(c.lossless);
  ASSERT_FALSE(c.restart);
  EXPECT_EQ(c.state.red_classes().size(), 1u);
  for (const auto& e : c.state.x.hyperedges()) EXPECT_TRUE(c.state.red[e[0]] != c.state.red[e[1]]);
  EXPECT_EQ(blue_projection_order(s), blue_projection_order(c.state));
}

TEST(Contract, CyclicTripleUsesDirectedEdges) {
  // red triples {0,1,2},{3,4,5} matched; blue edges link across with a twist so only rotations survive
  std::vector<std::pair<int, int>> e = {{0, 3}, {1, 4}, {2, 5}, {0, 6}, {1, 7}, {2, 8},
                                        {3, 9}, {4, 10}, {5, 11}, {6, 10}, {7, 11}, {8, 9}};
  auto x = graph(12, e, {0, 0, 0, 1, 1, 1, 2, 2, 2, 2, 2, 2});
  auto s = fix_heavy_classes(colga_initial_state(x, {0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}), 4);
  auto c = contract_matching_components(s);
  ASSERT_FALSE(c.restart);
  ASSERT_TRUE(c.lossless);
  EXPECT_FALSE(c.state.x.directed().empty());
  EXPECT_EQ(blue_projection_order(s), blue_projection_order(c.state));
}

TEST(Contract, NonTransitiveClassRestarts) {
  // 0 sees a blue hexagon, 1 sees two blue triangles: refinement cannot tell them apart
  std::vector<std::pair<int, int>> e = {{0, 2}, {1, 3}};
  for (int i = 0; i < 6; ++i) {
    e.push_back({4 + i, 4 + (i + 1) % 6});
    e.push_back({0, 4 + i});
    e.push_back({1, 10 + i});
  }
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 3; ++i) e.push_back({10 + 3 * t + i, 10 + 3 * t + (i + 1) % 3});
  std::vector<int> colors(16, 2);
  colors[0] = colors[1] = 0;
  colors[2] = colors[3] = 1;
  auto x = graph(16, e, colors);
  std::vector<int> blue(12);
  for (int i = 0; i < 12; ++i) blue[i] = 4 + i;
  auto s = fix_heavy_classes(colga_initial_state(x, {0, 1, 2, 3}, blue), 6);
  EXPECT_EQ(s.x.color(0), s.x.color(1));
  auto c = contract_matching_components(s);
  EXPECT_TRUE(c.restart);
  EXPECT_NE(c.state.x.color(0), c.state.x.color(1));

  ColGaTrace tr;
  auto w = colga(x, {0, 1, 2, 3}, blue, 6, {}, &tr);
  EXPECT_GE(tr.restarts, 1);
  ASSERT_TRUE(w);
  EXPECT_TRUE(is_automorphism(*w, x));
  EXPECT_EQ(blue_weight(*w, blue), 6);
  EXPECT_FALSE(colga(x, {0, 1, 2, 3}, blue, 1));
}

TEST(Encode, Examples) {
  auto x = graph(6, {{0, 3}, {0, 5}, {2, 4}}, {0, 1, 2, 2, 2, 2});
  auto s = colga_initial_state(x, {0, 1}, {2, 3, 4, 5});
  auto e = encode_hyperedges(s);
  EXPECT_EQ(e.h.n(), 6);
  EXPECT_TRUE(e.h.has_hyperedge({1, 3, 4}));  // new vertex of {0} is 4, blue 3,5 -> 1,3
  EXPECT_TRUE(e.h.has_hyperedge({5}));
  EXPECT_EQ(blue_projection_order(s), blue_projection_order(e));
}

TEST(Colga, Examples) {
  auto c4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto w = colga(c4, {}, all(4), 2);
  ASSERT_TRUE(w);
  EXPECT_TRUE(is_automorphism(*w, c4));
  EXPECT_EQ(weight(*w), 2);
  EXPECT_FALSE(colga(c4, {}, all(4), 3));

  auto pair = graph(4, {{0, 2}, {1, 3}}, {0, 0, 1, 1});
  auto p = colga(pair, {0, 1}, {2, 3}, 2);
  ASSERT_TRUE(p);
  EXPECT_EQ((*p)[0], 1);
  EXPECT_EQ((*p)[2], 3);
}

TEST(Colga, InvalidInput) {
  auto c4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_THROW(colga(c4, {0}, {0, 1, 2, 3}, 2), std::invalid_argument);
  EXPECT_THROW(colga(c4, all(4), {}, 2), std::invalid_argument);  // red class of size 4
}

TEST(Colga, MatchesBruteForce) {
  Rng rng(2024);
  int sat = 0, fallbacks = 0, restarts = 0;
  for (int it = 0; it < 1000; ++it) {
    const int n = rng.range(2, 9);
    auto inst = random_redblue(n, rng.range(0, n), 3, rng.range(1, 3) * 0.25, rng);
    const int k = rng.range(0, 4);
    ColGaTrace tr;
    auto got = colga(inst.x, inst.red, inst.blue, k, {}, &tr);
    auto want = brute_colga(inst.x, inst.red, inst.blue, k);
    ASSERT_EQ(got.has_value(), want.has_value()) << "iteration " << it;
    if (got) {
      ++sat;
      EXPECT_TRUE(is_automorphism(*got, inst.x));
      EXPECT_EQ(blue_weight(*got, inst.blue), k);
    }
    fallbacks += tr.fallback;
    restarts += tr.restarts;
  }
  std::printf("sat %d fallbacks %d restarts %d\n", sat, fallbacks, restarts);
  EXPECT_GT(sat, 100);
}

TEST(Colga, LayeredMatchesBruteForce) {
  Rng rng(99);
  int sat = 0, fallbacks = 0, restarts = 0, contracted = 0;
  for (int it = 0; it < 1000; ++it) {
    auto inst = random_layered_redblue(rng.range(4, 9), rng.range(2, 3), rng.below(3), rng);
    const int k = rng.range(1, 4);
    ColGaTrace tr;
    auto got = colga(inst.x, inst.red, inst.blue, k, {}, &tr);
    auto want = brute_colga(inst.x, inst.red, inst.blue, k);
    ASSERT_EQ(got.has_value(), want.has_value()) << "iteration " << it;
    if (got) {
      ++sat;
      EXPECT_TRUE(is_automorphism(*got, inst.x));
      EXPECT_EQ(blue_weight(*got, inst.blue), k);
    }
    fallbacks += tr.fallback;
    restarts += tr.restarts;
    contracted += !tr.fallback && tr.step4.red_classes().size() < tr.step3.red_classes().size();
  }
  std::printf("sat %d contracted %d fallbacks %d restarts %d\n", sat, contracted, fallbacks, restarts);
  EXPECT_GT(sat, 100);
  EXPECT_GT(contracted, 50);
}

TEST(Colga, StepsPreserveBlueProjection) {
  Rng rng(77);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    const int n = rng.range(3, 9);
    auto inst = it % 2 ? random_redblue(n, rng.range(1, n), 3, 0.35, rng)
                       : random_layered_redblue(n, rng.range(2, 3), rng.below(2), rng);
    const int k = rng.range(1, 4);
    if (k > static_cast<int>(inst.blue.size())) continue;
    ColGaTrace tr;
    colga(inst.x, inst.red, inst.blue, k, {}, &tr);
    EXPECT_EQ(automorphism_group(tr.step1.x).order(), automorphism_group(local_complement(tr.step1.x)).order());
    if (tr.fallback) continue;
    ASSERT_TRUE(tr.step5);
    EXPECT_EQ(blue_projection_order(tr.step3), blue_projection_order(tr.step4));
    EXPECT_EQ(blue_projection_order(tr.step4), blue_projection_order(*tr.step5));
    // singleton red classes are fixed, only the movable ones need small hyperedges
    for (const auto& cls : tr.step4.red_classes()) {
      if (cls.size() < 2) continue;
      int blue = 0;
      for (int w : tr.step4.x.neighbors(cls[0])) blue += !tr.step4.red[w] && !tr.step4.dropped[w];
      EXPECT_LE(blue, k);
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Colga, ThreadsAgree) {
  Rng rng(5);
  for (int it = 0; it < 60; ++it) {
    auto inst = random_redblue(8, rng.range(0, 6), 3, 0.3, rng);
    const int k = rng.range(1, 4);
    auto a = colga(inst.x, inst.red, inst.blue, k, {1});
    auto b = colga(inst.x, inst.red, inst.blue, k, {3});
    EXPECT_EQ(a.has_value(), b.has_value());
  }
}
