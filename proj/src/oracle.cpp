#include "fptiso/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace fptiso {

std::vector<int> refine_colors(const ColoredHypergraph& x, const std::vector<int>& initial) {
  const int n = x.n();
  std::vector<int> color = initial;
  {
    std::vector<int> vals(color.begin(), color.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (int& c : color) c = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), c) - vals.begin());
  }
  std::vector<std::vector<DirectedEdge>> out(n), in(n);
  for (const auto& d : x.directed()) {
    out[d.u].push_back(d);
    in[d.v].push_back(d);
  }
  int classes = n ? *std::max_element(color.begin(), color.end()) + 1 : 0;
  std::vector<std::vector<int>> sig(n);
  std::vector<std::vector<int>> parts;
  std::vector<int> tmp;
  while (true) {
    for (int v = 0; v < n; ++v) {
      parts.clear();
      for (int ei : x.incident(v)) {
        const auto& e = x.hyperedges()[ei];
        tmp.clear();
        tmp.push_back(static_cast<int>(e.size()));
        for (int w : e)
          if (w != v) tmp.push_back(color[w]);
        std::sort(tmp.begin() + 1, tmp.end());
        parts.push_back(tmp);
      }
      std::sort(parts.begin(), parts.end());
      auto& s = sig[v];
      s.clear();
      s.push_back(color[v]);
      for (const auto& p : parts) {
        s.push_back(-1);
        s.insert(s.end(), p.begin(), p.end());
      }
      if (!out[v].empty() || !in[v].empty()) {
        std::vector<std::pair<int, int>> o, i;
        for (const auto& d : out[v]) o.emplace_back(d.color, color[d.v]);
        for (const auto& d : in[v]) i.emplace_back(d.color, color[d.u]);
        std::sort(o.begin(), o.end());
        std::sort(i.begin(), i.end());
        s.push_back(-2);
        for (auto [a, b] : o) s.insert(s.end(), {a, b});
        s.push_back(-3);
        for (auto [a, b] : i) s.insert(s.end(), {a, b});
      }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int id = -1;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || sig[order[i]] != sig[order[i - 1]]) ++id;
      next[order[i]] = id;
    }
    color.swap(next);
    if (id + 1 == classes) break;
    classes = id + 1;
  }
  return color;
}

namespace {

ColoredHypergraph disjoint_union(const ColoredHypergraph& x, const ColoredHypergraph& y) {
  const int n = x.n();
  std::vector<std::vector<int>> edges = x.hyperedges();
  for (auto e : y.hyperedges()) {
    for (int& u : e) u += n;
    edges.push_back(std::move(e));
  }
  std::vector<int> colors = x.colors();
  colors.insert(colors.end(), y.colors().begin(), y.colors().end());
  std::vector<DirectedEdge> dir = x.directed();
  for (auto d : y.directed()) dir.push_back({d.u + n, d.v + n, d.color});
  return ColoredHypergraph(2 * n, std::move(edges), std::move(colors), std::move(dir));
}

// Simultaneous individualization-refinement search on the disjoint union of x and y.
class PairSearch {
 public:
  PairSearch(const ColoredHypergraph& x, const ColoredHypergraph& y) : x_(x), y_(y), u_(disjoint_union(x, y)), n_(x.n()) {}

  std::optional<std::vector<int>> refine(const std::vector<int>& c) const {
    auto r = refine_colors(u_, c);
    std::vector<int> bal(2 * n_ + 1, 0);
    for (int v = 0; v < n_; ++v) {
      ++bal[r[v]];
      --bal[r[n_ + v]];
    }
    for (int b : bal)
      if (b) return std::nullopt;
    return r;
  }

  std::vector<int> initial() const { return u_.colors(); }

  std::vector<int> individualize(const std::vector<int>& c, int a, int b) const {
    std::vector<int> r = c;
    const int fresh = *std::max_element(c.begin(), c.end()) + 1;
    r[a] = fresh;
    r[n_ + b] = fresh;
    return r;
  }

  // Smallest non-singleton cell (ties: smallest first vertex); returns its x-side members.
  std::vector<int> target_cell(const std::vector<int>& c) const {
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n_; ++v) cells[c[v]].push_back(v);
    const std::vector<int>* best = nullptr;
    for (const auto& [col, members] : cells) {
      if (members.size() < 2) continue;
      if (!best || members.size() < best->size() || (members.size() == best->size() && members[0] < (*best)[0]))
        best = &members;
    }
    return best ? *best : std::vector<int>{};
  }

  // First isomorphism consistent with the refined coloring c, if any.
  std::optional<Perm> dfs(const std::vector<int>& c) const {
    auto cell = target_cell(c);
    if (cell.empty()) {
      std::vector<int> where(2 * n_ + 1, -1);
      for (int v = 0; v < n_; ++v) where[c[n_ + v]] = v;
      std::vector<int> img(n_);
      for (int v = 0; v < n_; ++v) img[v] = where[c[v]];
      Perm p(std::move(img));
      if (is_isomorphism(p, x_, y_)) return p;
      return std::nullopt;
    }
    const int a = cell[0];
    for (int b = 0; b < n_; ++b) {
      if (c[n_ + b] != c[a]) continue;
      auto r = refine(individualize(c, a, b));
      if (!r) continue;
      if (auto found = dfs(*r)) return found;
    }
    return std::nullopt;
  }

 private:
  const ColoredHypergraph& x_;
  const ColoredHypergraph& y_;
  ColoredHypergraph u_;
  int n_;
};

bool quick_reject(const ColoredHypergraph& x, const ColoredHypergraph& y) {
  if (x.n() != y.n() || x.hyperedges().size() != y.hyperedges().size() || x.directed().size() != y.directed().size())
    return true;
  auto cx = x.colors(), cy = y.colors();
  std::sort(cx.begin(), cx.end());
  std::sort(cy.begin(), cy.end());
  return cx != cy;
}

std::vector<Perm> aut_generators(const ColoredHypergraph& x) {
  const int n = x.n();
  PairSearch ps(x, x);
  std::vector<std::vector<int>> path_colors;
  std::vector<std::vector<int>> path_cells;
  std::vector<int> c = *ps.refine(ps.initial());
  while (true) {
    auto cell = ps.target_cell(c);
    if (cell.empty()) break;
    path_colors.push_back(c);
    path_cells.push_back(cell);
    c = *ps.refine(ps.individualize(c, cell[0], cell[0]));
  }
  std::vector<Perm> gens;
  for (int i = static_cast<int>(path_cells.size()) - 1; i >= 0; --i) {
    const int u = path_cells[i][0];
    std::vector<char> in_orbit(n, 0);
    auto grow_orbit = [&] {
      std::fill(in_orbit.begin(), in_orbit.end(), 0);
      std::vector<int> orb{u};
      in_orbit[u] = 1;
      for (std::size_t q = 0; q < orb.size(); ++q)
        for (const Perm& g : gens)
          if (!in_orbit[g[orb[q]]]) {
            in_orbit[g[orb[q]]] = 1;
            orb.push_back(g[orb[q]]);
          }
    };
    grow_orbit();
    for (int v : path_cells[i]) {
      if (in_orbit[v]) continue;
      auto r = ps.refine(ps.individualize(path_colors[i], u, v));
      if (!r) continue;
      if (auto g = ps.dfs(*r)) {
        gens.push_back(*g);
        grow_orbit();
      }
    }
  }
  return gens;
}

}  // namespace

std::optional<Perm> find_isomorphism(const ColoredHypergraph& x, const ColoredHypergraph& y) {
  if (quick_reject(x, y)) return std::nullopt;
  if (x == y) return Perm::identity(x.n());
  PairSearch ps(x, y);
  auto c = ps.refine(ps.initial());
  if (!c) return std::nullopt;
  return ps.dfs(*c);
}

std::optional<IsoResult> iso_coset(const ColoredHypergraph& x, const ColoredHypergraph& y) {
  auto rep = find_isomorphism(x, y);
  if (!rep) return std::nullopt;
  return IsoResult{*rep, aut_generators(x)};
}

PermGroup automorphism_group(const ColoredHypergraph& x) { return PermGroup(x.n(), aut_generators(x)); }

std::vector<Perm> small_support_elements(const Coset& c, int k) {
  std::vector<Perm> out;
  if (k < 0) return out;
  const int n = c.group.degree();
  if (c.rep.size() != n) throw DomainMismatch("small_support_elements: representative has wrong degree");
  // Base = all points, points moved by rep first, so partial images are known early.
  std::vector<int> base = support(c.rep);
  for (int u = 0; u < n; ++u)
    if (c.rep[u] == u) base.push_back(u);
  const StabChain chain = build_stab_chain(n, c.group.generators(), base);
  const int L = static_cast<int>(chain.levels.size());
  // Elements are t_{L-1} ... t_1 t_0; after choosing t_0..t_j the images of
  // b_0..b_j are those of the partial product t_j ... t_0.
  std::function<void(int, const Perm&, int)> rec = [&](int j, const Perm& partial, int moved) {
    if (j == L) {
      Perm sigma = compose(partial, c.rep);
      if (weight(sigma) <= k) out.push_back(std::move(sigma));
      return;
    }
    const auto& lv = chain.levels[j];
    for (const Perm& t : lv.transversal) {
      Perm next = compose(t, partial);
      const int b = lv.base_point;
      const int m = moved + (c.rep[next[b]] != b);
      if (m > k) continue;
      rec(j + 1, next, m);
    }
  };
  rec(0, Perm::identity(n), 0);
  return out;
}

std::vector<Perm> filter_minimal_complexity(const Coset& c, const std::vector<Perm>& small) {
  (void)c;
  std::unordered_map<std::vector<int>, std::vector<int>, VecHash> by_support;
  for (std::size_t i = 0; i < small.size(); ++i) by_support[support(small[i])].push_back(static_cast<int>(i));
  std::vector<Perm> out;
  for (const Perm& sigma : small) {
    if (sigma.is_identity()) continue;
    const auto sup = support(sigma);
    if (static_cast<int>(sup.size()) > kMaxMinimalComplexityWeight)
      throw std::invalid_argument("minimal complexity test is limited to weight 12");
    const int cs = cayley_complexity(sigma);
    // sigma is not minimal iff sigma = alpha * rho with compl(alpha) + compl(rho)
    // = compl(sigma), compl(alpha), compl(rho) >= 1 and rho in the coset; such
    // rho is supported inside support(sigma).
    bool minimal = true;
    const int w = static_cast<int>(sup.size());
    for (std::uint32_t mask = 1; mask < (1u << w) && minimal; ++mask) {
      std::vector<int> key;
      for (int i = 0; i < w; ++i)
        if (mask >> i & 1) key.push_back(sup[i]);
      auto it = by_support.find(key);
      if (it == by_support.end()) continue;
      for (int idx : it->second) {
        const Perm& rho = small[idx];
        if (rho == sigma) continue;
        const int cr = cayley_complexity(rho);
        if (cr >= 1 && cayley_complexity(compose(sigma, inverse(rho))) + cr == cs) {
          minimal = false;
          break;
        }
      }
    }
    if (minimal) out.push_back(sigma);
  }
  return out;
}

std::vector<Perm> minimal_complexity_elements(const Coset& c, int k) {
  if (k > kMaxMinimalComplexityWeight) throw std::invalid_argument("minimal_complexity_elements: k above 12");
  return filter_minimal_complexity(c, small_support_elements(c, k));
}

namespace {

// sigma given by its moved points is an automorphism of x (colors included).
bool automorphism_on(const ColoredHypergraph& x, const std::vector<int>& img, const std::vector<int>& moved) {
  std::vector<int> e2;
  for (int u : moved) {
    if (x.color(img[u]) != x.color(u)) return false;
    for (int ei : x.incident(u)) {
      e2.clear();
      for (int w : x.hyperedges()[ei]) e2.push_back(img[w]);
      std::sort(e2.begin(), e2.end());
      if (!x.has_hyperedge(e2)) return false;
    }
  }
  if (!x.directed().empty()) {
    for (const auto& d : x.directed())
      if ((img[d.u] != d.u || img[d.v] != d.v) && !x.has_directed({img[d.u], img[d.v], d.color})) return false;
  }
  return true;
}

// Restriction of sigma to the classes selected by `pick` (bit i = i-th touched class).
bool restriction_is_auto(const ColoredHypergraph& x, const Perm& sigma, const std::vector<int>& class_of,
                         const std::vector<int>& touched, std::uint32_t pick) {
  std::vector<int> img(x.n());
  std::iota(img.begin(), img.end(), 0);
  std::vector<int> moved;
  for (int u = 0; u < x.n(); ++u) {
    if (sigma[u] == u) continue;
    const int pos = static_cast<int>(std::find(touched.begin(), touched.end(), class_of[u]) - touched.begin());
    if (pick >> pos & 1) {
      img[u] = sigma[u];
      moved.push_back(u);
    }
  }
  return automorphism_on(x, img, moved);
}

std::vector<int> touched_classes(const Perm& sigma, const std::vector<int>& class_of) {
  std::vector<int> t;
  for (int u = 0; u < sigma.size(); ++u)
    if (sigma[u] != u) t.push_back(class_of[u]);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace

bool is_color_class_minimal(const Perm& sigma, const ColoredHypergraph& x, const std::vector<int>& class_of) {
  if (sigma.is_identity()) return false;
  for (int u = 0; u < x.n(); ++u)
    if (class_of[sigma[u]] != class_of[u]) return false;
  if (!is_automorphism(sigma, x)) return false;
  const auto touched = touched_classes(sigma, class_of);
  const std::uint32_t full = (1u << touched.size()) - 1;
  for (std::uint32_t pick = 1; pick < full; ++pick)
    if (restriction_is_auto(x, sigma, class_of, touched, pick)) return false;
  return true;
}

std::vector<ClassMinimalAuto> color_class_minimal_autos(const ColoredHypergraph& x,
                                                        const std::vector<std::vector<int>>& classes, int k) {
  const int n = x.n();
  std::vector<int> class_of(n, -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int u : classes[i]) {
      if (u < 0 || u >= n || class_of[u] >= 0) throw std::invalid_argument("color classes must partition the vertices");
      class_of[u] = static_cast<int>(i);
    }
  if (std::count(class_of.begin(), class_of.end(), -1)) throw std::invalid_argument("color classes must cover the vertices");

  std::vector<ClassMinimalAuto> out;
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<int> moved, touched;
  const int m = static_cast<int>(classes.size());

  std::function<void(int, int)> rec;
  // Choose a derangement of some subset (size >= 2) of class c, then continue.
  auto place_class = [&](int c, int budget) {
    const auto& cls = classes[c];
    const int s = static_cast<int>(cls.size());
    for (int w = 2; w <= std::min(s, budget); ++w) {
      std::vector<int> pick(w);
      std::function<void(int, int)> choose = [&](int idx, int from) {
        if (idx == w) {
          std::vector<int> perm(pick);
          std::sort(perm.begin(), perm.end());
          std::vector<int> target = perm;
          do {
            bool derangement = true;
            for (int i = 0; i < w; ++i) derangement = derangement && target[i] != perm[i];
            if (!derangement) continue;
            for (int i = 0; i < w; ++i) {
              img[perm[i]] = target[i];
              moved.push_back(perm[i]);
            }
            touched.push_back(c);
            rec(c + 1, budget - w);
            touched.pop_back();
            for (int i = 0; i < w; ++i) {
              img[perm[i]] = perm[i];
              moved.pop_back();
            }
          } while (std::next_permutation(target.begin(), target.end()));
          return;
        }
        for (int i = from; i < s; ++i) {
          pick[idx] = cls[i];
          choose(idx + 1, i + 1);
        }
      };
      choose(0, 0);
    }
  };
  rec = [&](int c, int budget) {
    if (!touched.empty() && automorphism_on(x, img, moved)) {
      Perm sigma = Perm::unchecked(img);
      const std::uint32_t full = (1u << touched.size()) - 1;
      bool minimal = true;
      for (std::uint32_t pick = 1; pick < full && minimal; ++pick)
        minimal = !restriction_is_auto(x, sigma, class_of, touched, pick);
      if (minimal) out.push_back({sigma, touched, static_cast<int>(moved.size())});
    }
    if (budget < 2) return;
    for (int d = c; d < m; ++d) place_class(d, budget);
  };
  rec(0, k);
  return out;
}

namespace {

struct BruteSearch {
  const ColoredHypergraph& x;
  const ColoredHypergraph& y;
  std::vector<int> extra_x, extra_y;  // additional classes that must correspond
  std::vector<char> counted;          // vertices that count towards the weight
  int wmin = 0, wmax = 0;
  std::function<bool(const Perm&)> on_leaf;  // return false to stop

  BruteSearch(const ColoredHypergraph& x_, const ColoredHypergraph& y_, std::vector<int> ex, std::vector<int> ey,
              std::vector<char> cnt, int lo, int hi, std::function<bool(const Perm&)> fn)
      : x(x_), y(y_), extra_x(std::move(ex)), extra_y(std::move(ey)), counted(std::move(cnt)), wmin(lo), wmax(hi),
        on_leaf(std::move(fn)) {}

  int n = 0;
  std::vector<int> img;
  std::vector<char> used;
  std::vector<std::vector<int>> edges_closing_at;
  std::vector<std::vector<int>> directed_closing_at;
  std::vector<int> counted_suffix;
  bool stop = false;

  void run(const OracleLimits& lim) {
    n = x.n();
    if (y.n() != n) throw DomainMismatch("brute force: domain mismatch");
    if (n > lim.max_n) throw OracleTooLarge("brute force refuses n = " + std::to_string(n));
    if (extra_x.empty()) extra_x.assign(n, 0);
    if (extra_y.empty()) extra_y.assign(n, 0);
    if (counted.empty()) counted.assign(n, 1);
    if (x.hyperedges().size() != y.hyperedges().size() || x.directed().size() != y.directed().size()) return;
    img.assign(n, -1);
    used.assign(n, 0);
    edges_closing_at.assign(n, {});
    directed_closing_at.assign(n, {});
    for (std::size_t i = 0; i < x.hyperedges().size(); ++i) {
      const auto& e = x.hyperedges()[i];
      if (!e.empty()) edges_closing_at[e.back()].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < x.directed().size(); ++i) {
      const auto& d = x.directed()[i];
      directed_closing_at[std::max(d.u, d.v)].push_back(static_cast<int>(i));
    }
    counted_suffix.assign(n + 1, 0);
    for (int u = n - 1; u >= 0; --u) counted_suffix[u] = counted_suffix[u + 1] + counted[u];
    // The empty hyperedge maps to itself; a hypergraph may contain it.
    if (x.has_hyperedge({}) != y.has_hyperedge({})) return;
    rec(0, 0);
  }

  bool closes_ok(int u) const {
    std::vector<int> e2;
    for (int ei : edges_closing_at[u]) {
      e2.clear();
      for (int w : x.hyperedges()[ei]) e2.push_back(img[w]);
      std::sort(e2.begin(), e2.end());
      if (!y.has_hyperedge(e2)) return false;
    }
    for (int di : directed_closing_at[u]) {
      const auto& d = x.directed()[di];
      if (!y.has_directed({img[d.u], img[d.v], d.color})) return false;
    }
    return true;
  }

  void rec(int u, int moved) {
    if (stop) return;
    if (moved > wmax || moved + counted_suffix[u] < wmin) return;
    if (u == n) {
      if (moved < wmin) return;
      if (!on_leaf(Perm::unchecked(img))) stop = true;
      return;
    }
    for (int v = 0; v < n && !stop; ++v) {
      if (used[v] || x.color(u) != y.color(v) || extra_x[u] != extra_y[v]) continue;
      img[u] = v;
      used[v] = 1;
      if (closes_ok(u)) rec(u + 1, moved + (counted[u] && v != u));
      used[v] = 0;
      img[u] = -1;
    }
  }
};

}  // namespace

std::optional<Perm> brute_exact_cnf_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int k,
                                        const CnfFormula& f, OracleLimits lim) {
  std::optional<Perm> found;
  if (k < 0 || k > x.n()) return found;
  BruteSearch s(x, y, {}, {}, {}, k, k, [&](const Perm& p) {
                  if (!satisfies(p, f)) return true;
                  found = p;
                  return false;
                });
  s.run(lim);
  return found;
}

std::optional<Perm> brute_cnf_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, const CnfFormula& f,
                                  OracleLimits lim) {
  std::optional<Perm> found;
  BruteSearch s(x, y, {}, {}, {}, 0, x.n(), [&](const Perm& p) {
                  if (!satisfies(p, f)) return true;
                  found = p;
                  return false;
                });
  s.run(lim);
  return found;
}

std::optional<Perm> brute_exact_complexity_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int t,
                                               OracleLimits lim) {
  std::optional<Perm> found;
  if (t < 0) return found;
  // t = compl(sigma) forces t + 1 <= weight <= 2t for t >= 1.
  const int wmin = t == 0 ? 0 : t + 1, wmax = 2 * t;
  BruteSearch s(x, y, {}, {}, {}, wmin, std::min(wmax, x.n()), [&](const Perm& p) {
                  if (cayley_complexity(p) != t) return true;
                  found = p;
                  return false;
                });
  s.run(lim);
  return found;
}

std::optional<Perm> brute_colga(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue,
                                int k, OracleLimits lim) {
  std::optional<Perm> found;
  const int n = x.n();
  std::vector<int> side(n, -1);
  for (int r : red) side[r] = 0;
  for (int b : blue) {
    if (side[b] == 0) throw std::invalid_argument("brute_colga: red and blue overlap");
    side[b] = 1;
  }
  if (std::count(side.begin(), side.end(), -1)) throw std::invalid_argument("brute_colga: red and blue must cover V");
  std::vector<char> counted(n);
  for (int u = 0; u < n; ++u) counted[u] = side[u] == 1;
  if (k < 0) return found;
  BruteSearch s(x, x, side, side, counted, k, k, [&](const Perm& p) {
                  found = p;
                  return false;
                });
  s.run(lim);
  return found;
}

std::optional<Perm> brute_color_exact_cnf_ga(const ColoredHypergraph& x, const std::vector<std::vector<int>>& classes,
                                             int k, const CnfFormula& f, OracleLimits lim) {
  std::optional<Perm> found;
  std::vector<int> class_of(x.n(), -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int u : classes[i]) class_of[u] = static_cast<int>(i);
  if (k < 0 || k > x.n()) return found;
  BruteSearch s(x, x, class_of, class_of, {}, k, k, [&](const Perm& p) {
                  if (!satisfies(p, f)) return true;
                  found = p;
                  return false;
                });
  s.run(lim);
  return found;
}

void brute_for_each_isomorphism(const ColoredHypergraph& x, const ColoredHypergraph& y,
                                const std::function<bool(const Perm&)>& fn, OracleLimits lim) {
  BruteSearch s(x, y, {}, {}, {}, 0, x.n(), fn);
  s.run(lim);
}

}  // namespace fptiso
