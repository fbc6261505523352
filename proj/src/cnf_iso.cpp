#include "fptiso/cnf_iso.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "fptiso/oracle.hpp"
#include "fptiso/parallel.hpp"

namespace fptiso {

namespace {

// Recolors x and y so that the i-th pair gets a fresh color on both sides.
// Returns nullopt when the pairs are not a partial injection.
std::optional<std::pair<ColoredHypergraph, ColoredHypergraph>> pin(const ColoredHypergraph& x,
                                                                   const ColoredHypergraph& y,
                                                                   const std::vector<VertexPair>& pairs) {
  const int n = x.n();
  std::vector<int> fwd(n, -1), bwd(n, -1);
  for (auto [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("pin: vertex out of range");
    if ((fwd[u] >= 0 && fwd[u] != v) || (bwd[v] >= 0 && bwd[v] != u)) return std::nullopt;
    fwd[u] = v;
    bwd[v] = u;
  }
  int fresh = 0;
  for (int c : x.colors()) fresh = std::max(fresh, c + 1);
  for (int c : y.colors()) fresh = std::max(fresh, c + 1);
  std::vector<int> cx = x.colors(), cy = y.colors();
  for (int u = 0; u < n; ++u)
    if (fwd[u] >= 0) {
      cx[u] = fresh;
      cy[fwd[u]] = fresh;
      ++fresh;
    }
  return std::make_pair(x.with_colors(std::move(cx)), y.with_colors(std::move(cy)));
}

std::vector<VertexPair> with(std::vector<VertexPair> a, const std::vector<VertexPair>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

BigInt count_iso_fixing(const ColoredHypergraph& x, const ColoredHypergraph& y, const std::vector<VertexPair>& fixes) {
  if (x.n() != y.n()) throw DomainMismatch("count_iso_fixing: vertex counts differ");
  auto pinned = pin(x, y, fixes);
  if (!pinned) return 0;
  auto iso = iso_coset(pinned->first, pinned->second);
  if (!iso) return 0;
  return PermGroup(x.n(), iso->aut_generators).order();
}

BigInt forbidden_union_size(const ColoredHypergraph& x, const ColoredHypergraph& y,
                            const std::vector<VertexPair>& forced, const std::vector<VertexPair>& forbidden) {
  const std::size_t k = forbidden.size();
  if (k >= 63) throw std::length_error("forbidden_union_size: too many forbidden pairs");
  BigInt total = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
    std::vector<VertexPair> fixes = forced;
    for (std::size_t i = 0; i < k; ++i)
      if (s >> i & 1) fixes.push_back(forbidden[i]);
    BigInt n_s = count_iso_fixing(x, y, fixes);
    if (std::popcount(s) % 2) total += n_s;
    else total -= n_s;
  }
  return total;
}

bool compatible_iso_exists(const ColoredHypergraph& x, const ColoredHypergraph& y,
                           const std::vector<VertexPair>& forced, const std::vector<VertexPair>& forbidden) {
  return count_iso_fixing(x, y, forced) > forbidden_union_size(x, y, forced, forbidden);
}

AssignmentPairs assignment_pairs(const PartialAssignment& a) {
  AssignmentPairs out;
  std::map<int, int> image;
  for (std::size_t i = 0; i < a.vars.size(); ++i)
    if (a.values[i]) image[a.vars[i].first] = a.vars[i].second;
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    const auto [u, v] = a.vars[i];
    if (a.values[i]) out.forced.emplace_back(u, v);
    else if (!image.count(u)) out.forbidden.emplace_back(u, v);
  }
  return out;
}

std::optional<Perm> cnf_hgi(const ColoredHypergraph& x, const ColoredHypergraph& y, const CnfFormula& f,
                            const CnfIsoOptions& opt) {
  const int n = x.n();
  if (y.n() != n) throw DomainMismatch("cnf_hgi: vertex counts differ");
  f.validate(n);
  std::vector<PartialAssignment> alphas;
  for (auto& a : partial_assignments(f, n))
    if (assignment_satisfies(f, a)) alphas.push_back(std::move(a));

  auto attempt = [&](std::size_t i) -> std::optional<Perm> {
    auto [forced, forbidden] = assignment_pairs(alphas[i]);
    if (!compatible_iso_exists(x, y, forced, forbidden)) return std::nullopt;
    // Individualize until every color class of X' is a singleton.
    while (true) {
      auto pinned = pin(x, y, forced);
      const auto& cx = pinned->first.colors();
      const auto& cy = pinned->second.colors();
      std::map<int, std::vector<int>> cls;
      for (int u = 0; u < n; ++u) cls[cx[u]].push_back(u);
      const std::vector<int>* pick = nullptr;
      for (const auto& [c, members] : cls)
        if (members.size() > 1 && (!pick || members.size() < pick->size() ||
                                   (members.size() == pick->size() && members.front() < pick->front())))
          pick = &members;
      if (!pick) {
        std::map<int, int> in_y;
        for (int v = 0; v < n; ++v) in_y[cy[v]] = v;
        std::vector<int> img(n);
        for (int u = 0; u < n; ++u) img[u] = in_y.at(cx[u]);
        Perm sigma(std::move(img));
        if (!is_isomorphism(sigma, x, y) || !satisfies(sigma, f))
          throw std::logic_error("cnf_hgi: individualization produced an invalid isomorphism");
        return sigma;
      }
      const int u = pick->front();
      bool extended = false;
      for (int v = 0; v < n && !extended; ++v) {
        if (cy[v] != cx[u]) continue;
        auto trial = with(forced, {{u, v}});
        if (compatible_iso_exists(x, y, trial, forbidden)) {
          forced = std::move(trial);
          extended = true;
        }
      }
      if (!extended) throw std::logic_error("cnf_hgi: no extension although a compatible isomorphism exists");
    }
  };
  return parallel_first<Perm>(alphas.size(), opt.threads, attempt);
}

}  // namespace fptiso
