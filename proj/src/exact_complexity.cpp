#include "fptiso/exact_complexity.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "fptiso/group.hpp"
#include "fptiso/oracle.hpp"
#include "fptiso/parallel.hpp"
#include "fptiso/splitters.hpp"

namespace fptiso {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// A family of sets is Berge-acyclic iff merging the points of each set never
// closes a cycle.
bool berge_acyclic(int k, const std::vector<const std::vector<int>*>& sets) {
  UnionFind uf(k);
  for (const auto* s : sets)
    for (std::size_t i = 1; i < s->size(); ++i)
      if (!uf.unite((*s)[0], (*s)[i])) return false;
  return true;
}

std::vector<std::vector<int>> sorted_cycles(const Perm& p) {
  auto cycles = cycle_decomposition(p);
  for (auto& c : cycles) std::sort(c.begin(), c.end());
  return cycles;
}

}  // namespace

bool CycleGraph::is_forest() const {
  std::map<int, int> index;
  for (std::size_t i = 0; i < primal.size(); ++i) index[primal[i]] = static_cast<int>(i);
  const int p = static_cast<int>(primal.size());
  UnionFind uf(p + static_cast<int>(cycles.size()));
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (int u : cycles[c].points)
      if (!uf.unite(p + static_cast<int>(c), index.at(u))) return false;
  return true;
}

CycleGraph cycle_graph(const std::vector<Perm>& factors, const std::vector<int>& coloring) {
  CycleGraph g;
  std::set<int> pts;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (auto& c : sorted_cycles(factors[i])) {
      pts.insert(c.begin(), c.end());
      g.cycles.push_back({static_cast<int>(i), std::move(c)});
    }
  g.primal.assign(pts.begin(), pts.end());
  for (int u : g.primal) g.primal_color.push_back(coloring.empty() ? u : coloring.at(u));
  return g;
}

bool is_complexity_additive(const std::vector<Perm>& factors) {
  if (factors.empty()) return true;
  int sum = 0;
  Perm prod = Perm::identity(factors.front().size());
  for (const auto& f : factors) {
    if (f.is_identity()) throw std::invalid_argument("is_complexity_additive: identity factor");
    sum += cayley_complexity(f);
    prod = compose(prod, f);
  }
  return cayley_complexity(prod) == sum;
}

int CyclePattern::complexity() const {
  int t = 0;
  for (const auto& c : cycles) t += static_cast<int>(c.points.size()) - 1;
  return t;
}

std::vector<Perm> CyclePattern::factors() const {
  std::vector<std::vector<std::vector<int>>> by_color(colors);
  for (const auto& c : cycles) by_color[c.color].push_back(c.points);
  std::vector<Perm> out;
  for (const auto& cs : by_color) out.push_back(Perm::from_cycles(k, cs));
  return out;
}

Perm CyclePattern::sigma() const {
  Perm p = Perm::identity(k);
  for (const auto& f : factors()) p = compose(p, f);
  return p;
}

bool is_cycle_pattern(const CyclePattern& p) {
  if (p.k < 0 || p.colors < 0) return false;
  std::vector<char> covered(p.k, 0), color_used(p.colors, 0);
  std::vector<const std::vector<int>*> sets;
  for (const auto& c : p.cycles) {
    if (c.points.size() < 2 || c.color < 0 || c.color >= p.colors) return false;
    if (!std::is_sorted(c.points.begin(), c.points.end()) ||
        std::adjacent_find(c.points.begin(), c.points.end()) != c.points.end())
      return false;
    for (int u : c.points) {
      if (u < 0 || u >= p.k) return false;
      covered[u] = 1;
    }
    color_used[c.color] = 1;
    sets.push_back(&c.points);
  }
  // no isolated primal vertex; cycle colors are exactly 0..colors-1
  if (std::count(covered.begin(), covered.end(), 0) || std::count(color_used.begin(), color_used.end(), 0)) return false;
  if (!berge_acyclic(p.k, sets)) return false;
  // cycle-vertices of one color share no neighbor
  for (std::size_t a = 0; a < p.cycles.size(); ++a)
    for (std::size_t b = a + 1; b < p.cycles.size(); ++b) {
      if (p.cycles[a].color != p.cycles[b].color) continue;
      std::vector<int> common;
      std::set_intersection(p.cycles[a].points.begin(), p.cycles[a].points.end(), p.cycles[b].points.begin(),
                            p.cycles[b].points.end(), std::back_inserter(common));
      if (!common.empty()) return false;
    }
  return true;
}

std::optional<CyclePattern> pattern_of(const CycleGraph& g) {
  CyclePattern p;
  p.k = static_cast<int>(g.primal.size());
  std::map<int, int> color_of;
  std::vector<char> seen(p.k, 0);
  for (std::size_t i = 0; i < g.primal.size(); ++i) {
    const int c = g.primal_color[i];
    if (c < 0 || c >= p.k || seen[c]) return std::nullopt;
    seen[c] = 1;
    color_of[g.primal[i]] = c;
  }
  std::set<int> factors;
  for (const auto& c : g.cycles) factors.insert(c.factor);
  std::map<int, int> rank;
  for (int f : factors) rank.emplace(f, static_cast<int>(rank.size()));
  p.colors = static_cast<int>(rank.size());
  for (const auto& c : g.cycles) {
    CyclePattern::Cycle pc{rank[c.factor], {}};
    for (int u : c.points) pc.points.push_back(color_of[u]);
    std::sort(pc.points.begin(), pc.points.end());
    p.cycles.push_back(std::move(pc));
  }
  std::sort(p.cycles.begin(), p.cycles.end());
  return p;
}

namespace {

std::vector<CyclePattern> build_patterns(int t) {
  std::set<CyclePattern> out;
  if (t == 0) {
    out.insert(CyclePattern{});
    return {out.begin(), out.end()};
  }
  // A forest with c components covering k points has k - t = c, so k runs over t+1..2t.
  for (int k = t + 1; k <= 2 * t; ++k) {
    std::vector<std::vector<int>> candidates;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      const int size = std::popcount(mask);
      if (size < 2 || size > t + 1) continue;
      std::vector<int> s;
      for (int u = 0; u < k; ++u)
        if (mask >> u & 1) s.push_back(u);
      candidates.push_back(std::move(s));
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<const std::vector<int>*> family;
    auto emit_colorings = [&]() {
      const int m = static_cast<int>(family.size());
      std::vector<int> col(m, 0);
      while (true) {
        // colors are ordered factors, so every surjection onto 0..ell-1 counts
        std::vector<char> used(m, 0);
        for (int c : col) used[c] = 1;
        int ell = 0;
        while (ell < m && used[ell]) ++ell;
        const bool onto_prefix = std::count(used.begin(), used.end(), 1) == ell;
        if (onto_prefix) {
          CyclePattern p;
          p.k = k;
          p.colors = ell;
          for (int i = 0; i < m; ++i) p.cycles.push_back({col[i], *family[i]});
          std::sort(p.cycles.begin(), p.cycles.end());
          if (is_cycle_pattern(p)) out.insert(std::move(p));
        }
        int pos = m - 1;
        while (pos >= 0 && col[pos] == m - 1) col[pos--] = 0;
        if (pos < 0) break;
        ++col[pos];
      }
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
      if (budget == 0) {
        std::vector<char> covered(k, 0);
        for (const auto* s : family)
          for (int u : *s) covered[u] = 1;
        if (!std::count(covered.begin(), covered.end(), 0)) emit_colorings();
        return;
      }
      for (std::size_t i = from; i < candidates.size(); ++i) {
        const int cost = static_cast<int>(candidates[i].size()) - 1;
        if (cost > budget) continue;
        family.push_back(&candidates[i]);
        if (berge_acyclic(k, family)) rec(i + 1, budget - cost);
        family.pop_back();
      }
    };
    rec(0, t);
  }
  return {out.begin(), out.end()};
}

}  // namespace

const std::vector<CyclePattern>& enumerate_patterns(int t) {
  if (t < 0) throw std::invalid_argument("enumerate_patterns: negative t");
  static std::mutex mu;
  static std::map<int, std::vector<CyclePattern>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(t);
  if (it == cache.end()) it = cache.emplace(t, build_patterns(t)).first;
  return it->second;
}

namespace {

// Sorted h-images of the cycles of sigma, or nullopt if h is not injective on its support.
std::optional<std::vector<std::vector<int>>> hashed_cycles(const std::vector<std::vector<int>>& cycles,
                                                           const std::vector<int>& h, int k) {
  std::vector<char> hit(k, 0);
  std::vector<std::vector<int>> out;
  for (const auto& c : cycles) {
    std::vector<int> img;
    for (int u : c) {
      const int v = h[u];
      if (v < 0 || v >= k || hit[v]) return std::nullopt;
      hit[v] = 1;
      img.push_back(v);
    }
    std::sort(img.begin(), img.end());
    out.push_back(std::move(img));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> color_sets(const CyclePattern& p, int color) {
  std::vector<std::vector<int>> out;
  for (const auto& c : p.cycles)
    if (c.color == color) out.push_back(c.points);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool realizes_color(const Perm& sigma, const std::vector<int>& h, const CyclePattern& p, int color) {
  auto img = hashed_cycles(sorted_cycles(sigma), h, p.k);
  return img && *img == color_sets(p, color);
}

namespace {

std::vector<Perm> small_minimal(const Coset& c, int w) {
  std::vector<Perm> out = w <= kMaxMinimalComplexityWeight ? minimal_complexity_elements(c, w)
                                                           : small_support_elements(c, w);
  std::erase_if(out, [](const Perm& p) { return p.is_identity(); });
  return out;
}

}  // namespace

std::optional<ExactComplexityWitness> exact_complexity_iso_witness(const ColoredHypergraph& x,
                                                                   const ColoredHypergraph& y, int t,
                                                                   const ExactComplexityOptions& opt) {
  const int n = x.n();
  if (y.n() != n) throw DomainMismatch("exact_complexity_iso: vertex counts differ");
  if (t < 0) return std::nullopt;
  if (t == 0) {
    Perm id = Perm::identity(n);
    if (is_isomorphism(id, x, y)) return ExactComplexityWitness{id, {}, CyclePattern{}};
    return std::nullopt;
  }
  if (t > n - 1) return std::nullopt;
  auto iso = iso_coset(x, y);
  if (!iso) return std::nullopt;
  const PermGroup aut(n, iso->aut_generators);
  const int w = std::min(2 * t, n);
  const std::vector<Perm> a = small_minimal(Coset{aut, Perm::identity(n)}, w);
  const std::vector<Perm> i_set = x == y ? a : small_minimal(Coset{aut, iso->rep}, w);

  struct Cand {
    const Perm* p;
    std::vector<std::vector<int>> cycles;
  };
  auto prep = [](const std::vector<Perm>& v) {
    std::vector<Cand> out;
    for (const auto& p : v) out.push_back({&p, sorted_cycles(p)});
    return out;
  };
  const auto ca = prep(a), ci = prep(i_set);

  std::vector<const CyclePattern*> patterns;
  for (const auto& p : enumerate_patterns(t))
    if (p.k <= n) patterns.push_back(&p);

  auto try_pattern = [&](std::size_t pi) -> std::optional<ExactComplexityWitness> {
    const CyclePattern& p = *patterns[pi];
    std::vector<std::vector<std::vector<int>>> want(p.colors);
    for (int c = 0; c < p.colors; ++c) want[c] = color_sets(p, c);
    const auto family = build_hash_family(n, p.k);
    for (const auto& h : family->functions) {
      std::vector<Perm> chosen;
      for (int c = 0; c < p.colors; ++c) {
        const auto& pool = c == p.colors - 1 ? ci : ca;
        const Perm* found = nullptr;
        for (const auto& cand : pool) {
          auto img = hashed_cycles(cand.cycles, h, p.k);
          if (img && *img == want[c]) {
            found = cand.p;
            break;
          }
        }
        if (!found) break;
        chosen.push_back(*found);
      }
      if (static_cast<int>(chosen.size()) != p.colors) continue;
      Perm sigma = Perm::identity(n);
      for (const auto& s : chosen) sigma = compose(sigma, s);
      return ExactComplexityWitness{sigma, chosen, p};
    }
    return std::nullopt;
  };
  return parallel_first<ExactComplexityWitness>(patterns.size(), opt.threads, try_pattern);
}

std::optional<Perm> exact_complexity_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int t,
                                         const ExactComplexityOptions& opt) {
  auto w = exact_complexity_iso_witness(x, y, t, opt);
  if (!w) return std::nullopt;
  return w->sigma;
}

}  // namespace fptiso
