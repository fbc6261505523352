#include "fptiso/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fptiso {

Perm Rng::permutation(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  shuffle(v);
  return Perm(std::move(v));
}

ColoredHypergraph random_graph(int n, double p, Rng& rng) {
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.chance(p)) edges.push_back({a, b});
  return ColoredHypergraph(n, std::move(edges));
}

ColoredHypergraph random_hypergraph(int n, int m, int d, Rng& rng) {
  std::set<std::vector<int>> edges;
  d = std::min(d, n);
  for (int tries = 0; tries < 20 * m && static_cast<int>(edges.size()) < m; ++tries) {
    const int s = rng.range(1, d);
    std::vector<int> pts(n);
    std::iota(pts.begin(), pts.end(), 0);
    rng.shuffle(pts);
    pts.resize(s);
    std::sort(pts.begin(), pts.end());
    edges.insert(pts);
  }
  return ColoredHypergraph(n, {edges.begin(), edges.end()});
}

ColoredHypergraph relabel(const ColoredHypergraph& x, const Perm& p) {
  std::vector<std::vector<int>> edges;
  for (const auto& e : x.hyperedges()) {
    std::vector<int> img;
    for (int u : e) img.push_back(p[u]);
    edges.push_back(std::move(img));
  }
  std::vector<int> colors(x.n());
  for (int u = 0; u < x.n(); ++u) colors[p[u]] = x.color(u);
  std::vector<DirectedEdge> dir;
  for (const auto& d : x.directed()) dir.push_back({p[d.u], p[d.v], d.color});
  return ColoredHypergraph(x.n(), std::move(edges), std::move(colors), std::move(dir));
}

std::vector<int> random_bounded_coloring(int n, int b, Rng& rng) {
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  rng.shuffle(pts);
  std::vector<int> color(n);
  int c = 0;
  for (std::size_t i = 0; i < pts.size();) {
    const int s = rng.range(1, b);
    for (int j = 0; j < s && i < pts.size(); ++j, ++i) color[pts[i]] = c;
    ++c;
  }
  return color;
}

ColoredHypergraph random_symmetric_graph(int n, Rng& rng) {
  // Orbit-like pieces: disjoint copies of a random small pattern, joined
  // uniformly, give graphs whose automorphism groups are usually nontrivial.
  std::vector<std::vector<int>> edges;
  std::set<std::pair<int, int>> es;
  auto add = [&](int a, int b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (es.emplace(a, b).second) edges.push_back({a, b});
  };
  const int piece = rng.range(1, 3);
  const int copies = n / piece;
  std::vector<std::pair<int, int>> pattern;
  for (int a = 0; a < piece; ++a)
    for (int b = a + 1; b < piece; ++b)
      if (rng.chance(0.5)) pattern.emplace_back(a, b);
  for (int c = 0; c < copies; ++c)
    for (auto [a, b] : pattern) add(c * piece + a, c * piece + b);
  if (copies >= 2 && rng.chance(0.5)) {
    // cyclic links between consecutive copies
    const int a = rng.below(piece), b = rng.below(piece);
    for (int c = 0; c < copies; ++c) add(c * piece + a, ((c + 1) % copies) * piece + b);
  }
  for (int u = copies * piece; u < n; ++u)
    if (rng.chance(0.5)) add(u, rng.below(n));
  Perm p = rng.permutation(n);
  return relabel(ColoredHypergraph(n, std::move(edges)), p);
}

RedBlueInstance random_redblue(int n, int red_count, int red_max, double p, Rng& rng) {
  red_count = std::clamp(red_count, 0, n);
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  rng.shuffle(pts);
  RedBlueInstance r;
  std::vector<int> color(n, 0);
  int c = 0;
  int i = 0;
  while (i < red_count) {
    const int s = std::min(rng.range(1, red_max), red_count - i);
    for (int j = 0; j < s; ++j) {
      color[pts[i]] = c;
      r.red.push_back(pts[i]);
      ++i;
    }
    ++c;
  }
  const int blue_classes = rng.range(1, 2);
  for (; i < n; ++i) {
    color[pts[i]] = c + rng.below(blue_classes);
    r.blue.push_back(pts[i]);
  }
  std::sort(r.red.begin(), r.red.end());
  std::sort(r.blue.begin(), r.blue.end());
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.chance(p)) edges.push_back({a, b});
  r.x = ColoredHypergraph(n, std::move(edges), std::move(color));
  return r;
}

RedBlueInstance random_layered_redblue(int n, int s, int noise, Rng& rng) {
  const int layers = n / s;
  RedBlueInstance r;
  std::vector<int> color(n, -1);
  int next = 0;
  for (int l = 0; l < layers; ++l)
    if (rng.chance(0.5)) {
      for (int i = 0; i < s; ++i) color[l * s + i] = next;
      ++next;
    }
  const int blue_colors = rng.range(1, 2);
  std::vector<int> layer_blue(layers + 1);
  for (int l = 0; l <= layers; ++l) layer_blue[l] = next + rng.below(blue_colors);
  for (int u = 0; u < n; ++u) {
    if (color[u] >= 0) {
      r.red.push_back(u);
      continue;
    }
    color[u] = layer_blue[std::min(u / s, layers)];
    r.blue.push_back(u);
  }
  std::set<std::pair<int, int>> edges;
  auto add = [&](int a, int b) {
    if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
  };
  const int orbits = rng.range(1, 2 * std::max(layers, 1));
  for (int o = 0; o < orbits && layers > 0; ++o) {
    const int a = rng.below(layers), b = rng.below(layers), d = rng.below(s);
    if (a == b && d == 0) continue;
    for (int i = 0; i < s; ++i) add(a * s + i, b * s + (i + d) % s);
  }
  for (int e = 0; e < noise; ++e) add(rng.below(n), rng.below(n));
  std::vector<int> used(color);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int& c : color) c = static_cast<int>(std::lower_bound(used.begin(), used.end(), c) - used.begin());
  std::vector<std::vector<int>> he;
  for (auto [a, b] : edges) he.push_back({a, b});
  r.x = ColoredHypergraph(n, std::move(he), std::move(color));
  return r;
}

CnfFormula random_formula(int n, int clauses, int max_len, Rng& rng) {
  CnfFormula f;
  for (int c = 0; c < clauses; ++c) {
    Clause cl;
    const int len = rng.range(1, max_len);
    for (int i = 0; i < len; ++i) cl.push_back({rng.below(n), rng.below(n), rng.chance(0.5)});
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

}  // namespace fptiso
