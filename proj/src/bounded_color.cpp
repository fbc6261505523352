#include "fptiso/bounded_color.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <set>

#include "fptiso/parallel.hpp"
#include "fptiso/splitters.hpp"

namespace fptiso {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Candidate {
  const ClassMinimalAuto* a;
  Bits sat;  // clauses C[sigma]-satisfied by sigma
};

// Compositions of k into `parts` parts, each at least 2, in colex order.
std::vector<std::vector<int>> compositions(int k, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      if (left >= 2) {
        cur[i] = left;
        out.push_back(cur);
      }
      return;
    }
    for (int v = 2; v <= left - 2 * (parts - 1 - i); ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts >= 1) rec(0, k);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

}  // namespace

std::optional<BoundedColorWitness> color_exact_cnf_ga_with(const ColoredHypergraph& x,
                                                           const std::vector<std::vector<int>>& classes, int k,
                                                           const CnfFormula& f,
                                                           const std::vector<ClassMinimalAuto>& minimal_autos,
                                                           const BoundedColorOptions& opt) {
  const int n = x.n();
  std::vector<int> class_of(n, -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int u : classes[i]) {
      if (u < 0 || u >= n || class_of[u] >= 0) throw std::invalid_argument("color classes must partition the vertices");
      class_of[u] = static_cast<int>(i);
    }
  if (std::count(class_of.begin(), class_of.end(), -1)) throw std::invalid_argument("color classes must cover the vertices");
  f.validate(n);

  const Perm id = Perm::identity(n);
  if (k == 0) {
    if (satisfies(id, f)) return BoundedColorWitness{id, {}};
    return std::nullopt;
  }
  if (k < 2 || k > n) return std::nullopt;

  const int m = static_cast<int>(classes.size());
  const std::size_t nc = f.clauses.size();

  std::vector<Candidate> cands;
  for (const auto& a : minimal_autos) {
    if (a.weight > k) continue;
    Bits sat(nc);
    std::vector<char> in_union(n, 0);
    for (int c : a.classes)
      for (int u : classes[c]) in_union[u] = 1;
    for (std::size_t j = 0; j < nc; ++j) sat[j] = clause_class_satisfied(a.sigma, f.clauses[j], in_union);
    cands.push_back({&a, std::move(sat)});
  }
  // Classes of the literals of each clause that the identity satisfies.
  std::vector<std::vector<int>> id_classes(nc);
  for (std::size_t j = 0; j < nc; ++j)
    for (const auto& l : f.clauses[j])
      if (literal_holds(id, l)) id_classes[j].push_back(class_of[l.u]);

  const int kk = std::min(k, m);
  const auto family = build_hash_family(m, kk);

  auto try_hash = [&](std::size_t hi) -> std::optional<BoundedColorWitness> {
    const auto& h = family->functions[hi];
    std::vector<int> hp(kk, 0);
    for (int ell = 1; ell <= std::min(kk, k / 2); ++ell) {
      const auto comps = compositions(k, ell);
      // h' : [kk] -> [ell], lexicographic, surjective only.
      std::fill(hp.begin(), hp.end(), 0);
      while (true) {
        std::vector<char> hit(ell, 0);
        for (int v : hp) hit[v] = 1;
        const bool surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
        if (surjective) {
          // lists[i][w]: candidates of weight w living in part i
          std::vector<std::vector<std::vector<const Candidate*>>> lists(ell, std::vector<std::vector<const Candidate*>>(k + 1));
          for (const auto& c : cands) {
            const int part = hp[h[c.a->classes[0]]];
            bool same = true;
            for (int cl : c.a->classes) same = same && hp[h[cl]] == part;
            if (same) lists[part][c.a->weight].push_back(&c);
          }
          for (const auto& comp : comps) {
            bool feasible = true;
            for (int i = 0; i < ell && feasible; ++i) feasible = !lists[i][comp[i]].empty();
            if (!feasible) continue;
            std::vector<const Candidate*> chosen(ell);
            std::vector<char> touched(m, 0);
            std::optional<BoundedColorWitness> found;
            std::function<bool(int, const Bits&)> dfs = [&](int i, const Bits& covered) -> bool {
              if (i == ell) {
                for (std::size_t j = 0; j < nc; ++j) {
                  if (covered[j]) continue;
                  const bool ok = std::any_of(id_classes[j].begin(), id_classes[j].end(),
                                              [&](int cl) { return !touched[cl]; });
                  if (!ok) return false;
                }
                std::vector<int> img(n);
                for (int u = 0; u < n; ++u) img[u] = u;
                BoundedColorWitness w{id, {}};
                for (const Candidate* c : chosen) {
                  for (int u = 0; u < n; ++u)
                    if (c->a->sigma[u] != u) img[u] = c->a->sigma[u];
                  w.factors.push_back(c->a->sigma);
                }
                w.sigma = Perm(img);
                found = std::move(w);
                return true;
              }
              std::set<std::pair<std::vector<int>, Bits>> seen;
              for (const Candidate* c : lists[i][comp[i]]) {
                if (!seen.emplace(c->a->classes, c->sat).second) continue;
                chosen[i] = c;
                for (int cl : c->a->classes) touched[cl] = 1;
                const bool ok = dfs(i + 1, covered | c->sat);
                for (int cl : c->a->classes) touched[cl] = 0;
                if (ok) return true;
              }
              return false;
            };
            if (dfs(0, Bits(nc))) return found;
          }
        }
        int pos = kk - 1;
        while (pos >= 0 && hp[pos] == ell - 1) hp[pos--] = 0;
        if (pos < 0) break;
        ++hp[pos];
      }
    }
    return std::nullopt;
  };
  return parallel_first<BoundedColorWitness>(family->functions.size(), opt.threads, try_hash);
}

std::optional<BoundedColorWitness> color_exact_cnf_ga_witness(const ColoredHypergraph& x,
                                                              const std::vector<std::vector<int>>& classes, int k,
                                                              const CnfFormula& f, const BoundedColorOptions& opt) {
  if (k <= 0) return color_exact_cnf_ga_with(x, classes, k, f, {}, opt);
  const auto autos = color_class_minimal_autos(x, classes, k);
  return color_exact_cnf_ga_with(x, classes, k, f, autos, opt);
}

std::optional<Perm> color_exact_cnf_ga(const ColoredHypergraph& x, const std::vector<std::vector<int>>& classes, int k,
                                       const CnfFormula& f, const BoundedColorOptions& opt) {
  auto w = color_exact_cnf_ga_witness(x, classes, k, f, opt);
  if (!w) return std::nullopt;
  return w->sigma;
}

}  // namespace fptiso
