#include "fptiso/colga.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fptiso/group.hpp"
#include "fptiso/oracle.hpp"

namespace fptiso {

namespace {

using Adj = std::vector<std::vector<char>>;

Adj adjacency(const ColoredHypergraph& x) {
  Adj a(x.n(), std::vector<char>(x.n(), 0));
  for (const auto& e : x.hyperedges()) {
    if (e.size() != 2) throw std::invalid_argument("colga: expected a graph");
    a[e[0]][e[1]] = a[e[1]][e[0]] = 1;
  }
  return a;
}

ColoredHypergraph from_adjacency(const Adj& a, std::vector<int> colors, std::vector<DirectedEdge> directed) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (a[u][v]) edges.push_back({u, v});
  return ColoredHypergraph(n, std::move(edges), std::move(colors), std::move(directed));
}

std::vector<int> dense(const std::vector<int>& c) {
  std::map<int, int> ids;
  for (int v : c) ids.emplace(v, 0);
  int next = 0;
  for (auto& [k, v] : ids) v = next++;
  std::vector<int> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = ids[c[i]];
  return out;
}

int fresh_color(const ColoredHypergraph& x) {
  int m = 0;
  for (int c : x.colors()) m = std::max(m, c + 1);
  return m;
}

// Some automorphism mapping each pinned u to pins[u] (-1 = free).
std::optional<Perm> lift(const ColoredHypergraph& x, const std::vector<int>& pins) {
  std::vector<int> cx = x.colors(), cy = x.colors();
  int fresh = fresh_color(x);
  for (int u = 0; u < x.n(); ++u)
    if (pins[u] >= 0) {
      cx[u] = fresh;
      cy[pins[u]] = fresh;
      ++fresh;
    }
  return find_isomorphism(x.with_colors(cx), x.with_colors(cy));
}

BigInt projection_order(const ColoredHypergraph& x, const std::vector<int>& subset) {
  return restrict_to(automorphism_group(x), subset).order();
}

bool same_projection(const ColoredHypergraph& a, const std::vector<int>& sa, const ColoredHypergraph& b,
                     const std::vector<int>& sb) {
  PermGroup pa = restrict_to(automorphism_group(a), sa);
  PermGroup pb = restrict_to(automorphism_group(b), sb);
  if (pa.order() != pb.order()) return false;
  for (const auto& g : pa.generators())
    if (!pb.contains(g)) return false;
  return true;
}

}  // namespace

std::vector<int> ColGaState::blue_vertices() const {
  std::vector<int> b;
  for (int u = 0; u < x.n(); ++u)
    if (!red[u] && !dropped[u]) b.push_back(u);
  return b;
}

std::vector<std::vector<int>> ColGaState::red_classes() const {
  std::map<int, std::vector<int>> by_color;
  for (int u = 0; u < x.n(); ++u)
    if (red[u] && !dropped[u]) by_color[x.color(u)].push_back(u);
  std::vector<std::vector<int>> out;
  for (auto& [c, v] : by_color) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

ColGaState colga_initial_state(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue) {
  const int n = x.n();
  if (!x.directed().empty()) throw std::invalid_argument("colga: directed edges are not part of the input");
  for (const auto& e : x.hyperedges())
    if (e.size() != 2) throw std::invalid_argument("colga: expected a graph");
  std::vector<int> side(n, -1);
  for (int r : red) {
    if (r < 0 || r >= n || side[r] >= 0) throw std::invalid_argument("colga: bad red vertex list");
    side[r] = 1;
  }
  for (int b : blue) {
    if (b < 0 || b >= n || side[b] >= 0) throw std::invalid_argument("colga: red and blue must partition V");
    side[b] = 0;
  }
  if (std::count(side.begin(), side.end(), -1)) throw std::invalid_argument("colga: red and blue must partition V");
  std::vector<int> c(n);
  for (int u = 0; u < n; ++u) c[u] = 2 * x.color(u) + side[u];
  ColGaState s{x.with_colors(dense(c)), std::vector<char>(n), std::vector<char>(n, 0)};
  for (int u = 0; u < n; ++u) s.red[u] = side[u] == 1;
  for (const auto& cls : s.red_classes())
    if (cls.size() > 3) throw std::invalid_argument("colga: red color classes must have size at most 3");
  return s;
}

std::vector<int> color_refine(const ColoredHypergraph& x) { return refine_colors(x, x.colors()); }

ColoredHypergraph local_complement(const ColoredHypergraph& x) {
  Adj a = adjacency(x);
  const auto classes = x.color_classes();
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i; j < classes.size(); ++j) {
      const auto& ci = classes[i];
      const auto& cj = classes[j];
      long edges = 0, slots = 0;
      for (int u : ci)
        for (int v : cj) {
          if (i == j && v <= u) continue;
          ++slots;
          edges += a[u][v];
        }
      if (edges <= slots - edges) continue;
      for (int u : ci)
        for (int v : cj) {
          if (i == j && v <= u) continue;
          a[u][v] = a[v][u] = !a[u][v];
        }
    }
  return from_adjacency(a, x.colors(), x.directed());
}

ColGaState fix_heavy_classes(ColGaState s, int k) {
  while (true) {
    s.x = s.x.with_colors(color_refine(s.x));
    s.x = local_complement(s.x);
    std::vector<int> colors = s.x.colors();
    int fresh = fresh_color(s.x);
    bool changed = false;
    for (const auto& cls : s.red_classes()) {
      if (cls.size() < 2) continue;
      int blue_deg = 0;
      for (int w : s.x.neighbors(cls.front())) blue_deg += !s.red[w] && !s.dropped[w];
      if (blue_deg <= k) continue;
      for (int u : cls) colors[u] = fresh++;
      changed = true;
    }
    if (!changed) return s;
    s.x = s.x.with_colors(dense(colors));
  }
}

ContractionResult contract_matching_components(const ColGaState& s) {
  ContractionResult r{s, false, true, {}};
  const int n = s.x.n();
  const auto classes = s.red_classes();
  Adj a = adjacency(s.x);

  // Red classes joined by perfect matchings.
  const int m = static_cast<int>(classes.size());
  std::vector<std::vector<int>> cadj(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int edges = 0;
      for (int u : classes[i])
        for (int v : classes[j]) edges += a[u][v];
      if (edges == 0) continue;
      bool matching = classes[i].size() == classes[j].size() && edges == static_cast<int>(classes[i].size());
      for (int u : classes[i]) {
        int d = 0;
        for (int v : classes[j]) d += a[u][v];
        matching = matching && d == 1;
      }
      if (!matching) throw std::logic_error("contract_matching_components: red classes joined by a non-matching");
      cadj[i].push_back(j);
      cadj[j].push_back(i);
    }
  for (int i = 0; i < m; ++i)
    for (int u : classes[i])
      for (int v : classes[i])
        if (a[u][v]) throw std::logic_error("contract_matching_components: edge inside a red class");

  std::vector<int> colors = s.x.colors();
  std::vector<DirectedEdge> directed = s.x.directed();
  int fresh = fresh_color(s.x);
  int fresh_directed = 0;
  for (const auto& d : directed) fresh_directed = std::max(fresh_directed, d.color + 1);
  std::vector<char> dropped = s.dropped;

  std::vector<char> seen(m, 0);
  for (int start = 0; start < m; ++start) {
    if (seen[start] || cadj[start].empty()) continue;
    // BFS over the component, transporting every red vertex to the first class
    std::vector<int> comp{start};
    seen[start] = 1;
    std::map<int, int> trans;
    for (int u : classes[start]) trans[u] = u;
    for (std::size_t qi = 0; qi < comp.size(); ++qi) {
      const int c = comp[qi];
      for (int d : cadj[c]) {
        if (seen[d]) continue;
        seen[d] = 1;
        comp.push_back(d);
        for (int u : classes[c])
          for (int v : classes[d])
            if (a[u][v]) trans[v] = trans[u];
      }
    }
    for (int c : comp)
      for (int d : cadj[c])
        for (int u : classes[c])
          for (int v : classes[d])
            if (a[u][v] && trans[u] != trans[v]) {
              r.lossless = false;
              r.reason = "matchings around a cycle of red classes compose to a nontrivial permutation";
              return r;
            }
    const auto& keep = classes[start];
    std::set<int> red_part, blue_part;
    for (int c : comp) red_part.insert(classes[c].begin(), classes[c].end());
    for (int u : red_part)
      for (int w : s.x.neighbors(u))
        if (!s.red[w] && !s.dropped[w]) blue_part.insert(w);
    std::vector<int> local(red_part.begin(), red_part.end());
    local.insert(local.end(), blue_part.begin(), blue_part.end());
    const std::vector<int> blue_list(blue_part.begin(), blue_part.end());
    auto local_before = induced(s.x.with_colors(colors), local);
    PermGroup h = automorphism_group(local_before);

    // action on the kept class
    std::vector<int> keep_pos;
    const auto red_end = local.end() - static_cast<long>(blue_list.size());
    for (int u : keep) keep_pos.push_back(static_cast<int>(std::lower_bound(local.begin(), red_end, u) - local.begin()));
    PermGroup hc = restrict_to(h, keep_pos);
    auto orbits = orbit_partition(hc);
    if (orbits.size() > 1) {
      for (std::size_t o = 1; o < orbits.size(); ++o) {
        for (int p : orbits[o]) colors[keep[p]] = fresh;
        ++fresh;
      }
      r.state.x = s.x.with_colors(dense(colors));
      r.restart = true;
      return r;
    }
    const BigInt hc_order = hc.order();
    const bool cyclic3 = keep.size() == 3 && hc_order == 3;
    if (!(hc_order == factorial(static_cast<int>(keep.size())) || cyclic3))
      throw std::logic_error("contract_matching_components: unexpected transitive action on a red class");

    // Reroute blue edges to the kept class and drop the other classes.
    for (int u : blue_list) {
      std::vector<int> targets;
      for (int w : red_part)
        if (a[u][w]) {
          targets.push_back(trans[w]);
          a[u][w] = a[w][u] = 0;
        }
      for (int v : targets) a[u][v] = a[v][u] = 1;
    }
    for (int u : red_part)
      for (int w : red_part) a[u][w] = 0;
    for (int c : comp) {
      if (c == start) continue;
      for (int u : classes[c]) {
        dropped[u] = 1;
        colors[u] = fresh++;
      }
    }
    if (cyclic3) {
      // the 3-cycle of hc sending keep[0] to keep[1]
      Perm g;
      hc.for_each_element([&](const Perm& p) {
        if (p[0] == 1) {
          g = p;
          return false;
        }
        return true;
      });
      const int v[3] = {keep[0], keep[g[0]], keep[g[g[0]]]};
      std::map<int, std::vector<int>> blue_classes;
      for (int u : blue_list) blue_classes[colors[u]].push_back(u);
      for (const auto& [col, d] : blue_classes) {
        std::vector<int> di[3];
        for (int u : d)
          for (int i = 0; i < 3; ++i)
            if (a[u][v[i]]) di[i].push_back(u);
        for (int i = 0; i < 3; ++i)
          for (int p : di[i])
            for (int q : di[(i + 1) % 3]) directed.push_back({p, q, fresh_directed});
      }
      ++fresh_directed;
    }

    // The blue action of the component must not change.
    ColoredHypergraph after = from_adjacency(a, colors, directed);
    std::vector<int> local_after(keep.begin(), keep.end());
    local_after.insert(local_after.end(), blue_list.begin(), blue_list.end());
    auto local_graph_after = induced(after, local_after);
    std::vector<int> blue_before_pos, blue_after_pos;
    for (std::size_t i = 0; i < blue_list.size(); ++i) {
      blue_before_pos.push_back(static_cast<int>(red_part.size() + i));
      blue_after_pos.push_back(static_cast<int>(keep.size() + i));
    }
    if (!same_projection(local_before, blue_before_pos, local_graph_after, blue_after_pos)) {
      r.lossless = false;
      r.reason = "contracting a matched component changes which blue permutations extend";
      return r;
    }
  }
  ColGaState out{from_adjacency(a, dense(colors), std::move(directed)), s.red, dropped};
  for (int u = 0; u < n; ++u)
    if (dropped[u]) out.red[u] = 0;
  r.state = std::move(out);
  return r;
}

EncodedInstance encode_hyperedges(const ColGaState& s) {
  EncodedInstance e;
  e.blue = s.blue_vertices();
  const int nb = static_cast<int>(e.blue.size());
  std::vector<int> index(s.x.n(), -1);
  for (int i = 0; i < nb; ++i) index[e.blue[i]] = i;
  const auto classes = s.red_classes();
  const int total = nb + static_cast<int>(classes.size());
  std::vector<int> colors(total);
  const auto base = dense(s.x.colors());
  int fresh = 0;
  for (int i = 0; i < nb; ++i) {
    colors[i] = base[e.blue[i]];
    fresh = std::max(fresh, colors[i] + 1);
  }
  std::set<std::vector<int>> edges;
  for (const auto& ed : s.x.hyperedges()) {
    const int u = ed[0], v = ed[1];
    if (index[u] >= 0 && index[v] >= 0) edges.insert({std::min(index[u], index[v]), std::max(index[u], index[v])});
    else if (s.red[u] && s.red[v]) throw std::logic_error("encode_hyperedges: red part is not edgeless");
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const int vc = nb + static_cast<int>(c);
    colors[vc] = fresh++;
    for (int v : classes[c]) {
      std::vector<int> he{vc};
      for (int w : s.x.neighbors(v))
        if (index[w] >= 0) he.push_back(index[w]);
      std::sort(he.begin(), he.end());
      edges.insert(std::move(he));
    }
  }
  std::vector<DirectedEdge> directed;
  for (const auto& d : s.x.directed()) {
    if (index[d.u] < 0 || index[d.v] < 0) throw std::logic_error("encode_hyperedges: directed edge leaves Blue");
    directed.push_back({index[d.u], index[d.v], d.color});
  }
  e.h = ColoredHypergraph(total, {edges.begin(), edges.end()}, std::move(colors), std::move(directed));
  return e;
}

BigInt blue_projection_order(const ColGaState& s) { return projection_order(s.x, s.blue_vertices()); }

BigInt blue_projection_order(const EncodedInstance& e) {
  std::vector<int> b(e.blue.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<int>(i);
  return projection_order(e.h, b);
}

namespace {

// Exact search on the blue projection of the automorphism group.
std::optional<Perm> projected_search(const ColGaState& s0, int k) {
  const auto blue = s0.blue_vertices();
  PermGroup p = restrict_to(automorphism_group(s0.x), blue);
  for (const auto& g : small_support_elements(Coset{p, Perm::identity(p.degree())}, k)) {
    if (weight(g) != k) continue;
    std::vector<int> pins(s0.x.n(), -1);
    for (std::size_t i = 0; i < blue.size(); ++i) pins[blue[i]] = blue[g[static_cast<int>(i)]];
    auto sigma = lift(s0.x, pins);
    if (!sigma) throw std::logic_error("colga: projected element does not lift");
    return sigma;
  }
  return std::nullopt;
}

int blue_weight(const Perm& p, const ColGaState& s) {
  int w = 0;
  for (int u : s.blue_vertices()) w += p[u] != u;
  return w;
}

}  // namespace

std::optional<Perm> colga(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue, int k,
                          const ColGaOptions& opt, ColGaTrace* trace) {
  ColGaTrace local;
  ColGaTrace& tr = trace ? *trace : local;
  tr.initial = colga_initial_state(x, red, blue);
  const ColGaState& s0 = tr.initial;
  const int nb = static_cast<int>(s0.blue_vertices().size());
  if (k < 0 || k > nb) return std::nullopt;
  if (k == 0) return Perm::identity(x.n());

  tr.step1 = s0;
  tr.step1.x = s0.x.with_colors(color_refine(s0.x));
  ColGaState s = s0;
  std::optional<Perm> result;
  while (true) {
    s = fix_heavy_classes(std::move(s), k);
    tr.step3 = s;
    auto c = contract_matching_components(s);
    if (c.restart) {
      ++tr.restarts;
      s = std::move(c.state);
      continue;
    }
    if (!c.lossless) {
      tr.fallback = true;
      tr.fallback_reason = c.reason;
      result = projected_search(s0, k);
      break;
    }
    tr.step4 = c.state;
    tr.step5 = encode_hyperedges(c.state);
    ExactWeightOptions ew;
    ew.threads = opt.threads;
    auto found = exact_cnf_hga(tr.step5->h, k, CnfFormula{}, ew);
    if (!found) break;
    std::vector<int> pins(x.n(), -1);
    for (std::size_t i = 0; i < tr.step5->blue.size(); ++i)
      pins[tr.step5->blue[i]] = tr.step5->blue[(*found)[static_cast<int>(i)]];
    for (std::size_t i = tr.step5->blue.size(); i < static_cast<std::size_t>(tr.step5->h.n()); ++i)
      if ((*found)[static_cast<int>(i)] != static_cast<int>(i))
        throw std::logic_error("colga: a class marker moved");
    result = lift(s0.x, pins);
    if (!result) throw std::logic_error("colga: blue witness does not lift to the input graph");
    break;
  }
  if (result && (!is_automorphism(*result, s0.x) || blue_weight(*result, s0) != k))
    throw std::logic_error("colga: witness fails verification");
  return result;
}

}  // namespace fptiso
