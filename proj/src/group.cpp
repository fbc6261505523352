#include "fptiso/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fptiso {

BigInt factorial(int m) {
  BigInt r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

void compute_orbit(StabLevel& lv, int n) {
  lv.orbit.assign(1, lv.base_point);
  lv.slot.assign(n, -1);
  lv.transversal.assign(1, Perm::identity(n));
  lv.transversal_inv.assign(1, Perm::identity(n));
  lv.slot[lv.base_point] = 0;
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    const int beta = lv.orbit[i];
    for (const Perm& s : lv.gens) {
      const int img = s[beta];
      if (lv.slot[img] >= 0) continue;
      Perm t = compose(lv.transversal[lv.slot[beta]], s);
      lv.slot[img] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(img);
      lv.transversal_inv.push_back(inverse(t));
      lv.transversal.push_back(std::move(t));
    }
  }
}

// Moved point of h lying in the largest orbit of <gens, h>; ties go to the smallest point.
int pick_base_point(int n, const std::vector<Perm>& gens, const Perm& h) {
  UnionFind uf(n);
  for (const Perm& s : gens)
    for (int u = 0; u < n; ++u) uf.unite(u, s[u]);
  for (int u = 0; u < n; ++u) uf.unite(u, h[u]);
  std::vector<int> size(n, 0);
  for (int u = 0; u < n; ++u) ++size[uf.find(u)];
  int best = -1;
  for (int u = 0; u < n; ++u) {
    if (h[u] == u) continue;
    if (best < 0 || size[uf.find(u)] > size[uf.find(best)]) best = u;
  }
  return best;
}

bool fixes_prefix(const Perm& s, const StabChain& c, int upto) {
  for (int l = 0; l < upto; ++l)
    if (s[c.levels[l].base_point] != c.levels[l].base_point) return false;
  return true;
}

}  // namespace

BigInt StabChain::order() const {
  BigInt r = 1;
  for (const auto& lv : levels) r *= static_cast<unsigned>(lv.orbit.size());
  return r;
}

std::pair<Perm, int> StabChain::sift(const Perm& g, int from_level) const {
  Perm h = g;
  const int L = static_cast<int>(levels.size());
  for (int i = from_level; i < L; ++i) {
    const auto& lv = levels[i];
    const int beta = h[lv.base_point];
    if (lv.slot[beta] < 0) return {h, i};
    if (beta != lv.base_point) h = compose(h, lv.transversal_inv[lv.slot[beta]]);
  }
  return {h, L};
}

bool StabChain::contains(const Perm& g) const {
  if (g.size() != n) return false;
  auto [h, level] = sift(g);
  return level == static_cast<int>(levels.size()) && h.is_identity();
}

std::vector<int> StabChain::base() const {
  std::vector<int> b;
  for (const auto& lv : levels) b.push_back(lv.base_point);
  return b;
}

std::string StabChain::dump() const {
  std::ostringstream os;
  os << "degree " << n << ", order " << order() << "\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    os << "level " << i << ": base " << lv.base_point << ", orbit size " << lv.orbit.size() << ", gens";
    for (const auto& s : lv.gens) os << ' ' << to_cycle_string(s);
    os << "\n";
  }
  return os.str();
}

StabChain build_stab_chain(int n, const std::vector<Perm>& gens_in, const std::vector<int>& base_prefix,
                           std::uint64_t seed) {
  StabChain c;
  c.n = n;
  std::vector<Perm> S;
  for (const Perm& g : gens_in) {
    if (g.size() != n) throw DomainMismatch("build_stab_chain: generator of wrong degree");
    if (!g.is_identity() && std::find(S.begin(), S.end(), g) == S.end()) S.push_back(g);
  }
  std::vector<char> is_base(n, 0);
  for (int p : base_prefix) {
    if (p < 0 || p >= n) throw std::invalid_argument("build_stab_chain: base point out of range");
    if (is_base[p]) continue;
    is_base[p] = 1;
    StabLevel lv;
    lv.base_point = p;
    c.levels.push_back(std::move(lv));
  }
  for (const Perm& s : S) {
    if (!fixes_prefix(s, c, static_cast<int>(c.levels.size()))) continue;
    StabLevel lv;
    lv.base_point = pick_base_point(n, S, s);
    is_base[lv.base_point] = 1;
    c.levels.push_back(std::move(lv));
  }
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    for (const Perm& s : S)
      if (fixes_prefix(s, c, static_cast<int>(i))) c.levels[i].gens.push_back(s);
    compute_orbit(c.levels[i], n);
  }
  if (S.empty()) return c;

  // Adds a sift residue found below `from` that failed at level j.
  auto add_residue = [&](const Perm& r, int from, int j) {
    if (j == static_cast<int>(c.levels.size())) {
      StabLevel lv;
      lv.base_point = pick_base_point(n, {}, r);
      c.levels.push_back(std::move(lv));
    }
    for (int l = from; l <= j; ++l) {
      c.levels[l].gens.push_back(r);
      compute_orbit(c.levels[l], n);
    }
  };

  // Random phase: product replacement with an accumulator.
  {
    std::mt19937_64 rng(seed);
    std::vector<Perm> state;
    const std::size_t slots = std::max<std::size_t>(10, S.size());
    for (std::size_t i = 0; i < slots; ++i) state.push_back(S[i % S.size()]);
    Perm acc = Perm::identity(n);
    auto step = [&]() {
      std::uniform_int_distribution<std::size_t> pick(0, slots - 1);
      std::size_t a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      state[a] = (rng() & 1) ? compose(state[a], state[b]) : compose(state[a], inverse(state[b]));
      acc = compose(acc, state[a]);
      return acc;
    };
    for (int i = 0; i < 40; ++i) step();
    int quiet = 0;
    while (quiet < 12) {
      auto [r, j] = c.sift(step());
      if (j < static_cast<int>(c.levels.size()) || !r.is_identity()) {
        add_residue(r, 1, j);
        quiet = 0;
      } else {
        ++quiet;
      }
    }
  }

  // Deterministic phase: every Schreier generator must sift.
  int i = static_cast<int>(c.levels.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    const StabLevel& lv = c.levels[i];
    for (std::size_t oi = 0; !restarted && oi < lv.orbit.size(); ++oi) {
      const int beta = lv.orbit[oi];
      for (std::size_t si = 0; si < lv.gens.size(); ++si) {
        const Perm& s = lv.gens[si];
        const int img = s[beta];
        Perm h = compose(compose(lv.transversal[lv.slot[beta]], s), lv.transversal_inv[lv.slot[img]]);
        if (h.is_identity()) continue;
        auto [r, j] = c.sift(h, i + 1);
        if (j < static_cast<int>(c.levels.size()) || !r.is_identity()) {
          add_residue(r, i + 1, j);
          i = j;
          restarted = true;
          break;
        }
      }
    }
    if (!restarted) --i;
  }
  return c;
}

struct PermGroup::Lazy {
  std::once_flag once;
  std::unique_ptr<StabChain> chain;
};

PermGroup::PermGroup(int n, std::vector<Perm> generators) : n_(n), lazy_(std::make_shared<Lazy>()) {
  for (auto& g : generators) {
    if (g.size() != n) throw DomainMismatch("PermGroup: generator of wrong degree");
    if (g.is_identity() || std::find(gens_.begin(), gens_.end(), g) != gens_.end()) continue;
    gens_.push_back(std::move(g));
  }
}

PermGroup PermGroup::symmetric(int n) {
  if (n < 2) return trivial(n);
  std::vector<int> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  return PermGroup(n, {Perm::from_cycles(n, {{0, 1}}), Perm::from_cycles(n, {cyc})});
}

PermGroup PermGroup::alternating(int n) {
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i) gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return PermGroup(n, std::move(gens));
}

const StabChain& PermGroup::chain() const {
  std::call_once(lazy_->once, [this] { lazy_->chain = std::make_unique<StabChain>(build_stab_chain(n_, gens_)); });
  return *lazy_->chain;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.size() != n_) return false;
  if (gens_.empty()) return p.is_identity();
  return chain().contains(p);
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& f) const {
  const StabChain& c = chain();
  const int L = static_cast<int>(c.levels.size());
  bool stop = false;
  std::function<void(int, const Perm&)> rec = [&](int i, const Perm& prefix) {
    if (stop) return;
    if (i < 0) {
      if (!f(prefix)) stop = true;
      return;
    }
    for (const Perm& t : c.levels[i].transversal) {
      rec(i - 1, compose(prefix, t));
      if (stop) return;
    }
  };
  rec(L - 1, Perm::identity(n_));
}

Perm PermGroup::random_element(std::mt19937_64& rng) const {
  const StabChain& c = chain();
  Perm g = Perm::identity(n_);
  for (int i = static_cast<int>(c.levels.size()) - 1; i >= 0; --i) {
    const auto& tv = c.levels[i].transversal;
    std::uniform_int_distribution<std::size_t> pick(0, tv.size() - 1);
    g = compose(g, tv[pick(rng)]);
  }
  return g;
}

bool Coset::contains(const Perm& sigma) const { return group.contains(compose(sigma, inverse(rep))); }

std::vector<std::vector<int>> orbit_partition(const PermGroup& g) {
  const int n = g.degree();
  UnionFind uf(n);
  for (const Perm& s : g.generators())
    for (int u = 0; u < n; ++u) uf.unite(u, s[u]);
  std::map<int, std::vector<int>> cells;
  for (int u = 0; u < n; ++u) cells[uf.find(u)].push_back(u);
  std::vector<std::vector<int>> out;
  for (auto& [root, cell] : cells) out.push_back(std::move(cell));
  return out;
}

std::vector<int> orbit_of(const PermGroup& g, int point) {
  std::vector<char> seen(g.degree(), 0);
  std::vector<int> orb{point};
  seen[point] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const Perm& s : g.generators()) {
      const int v = s[orb[i]];
      if (!seen[v]) {
        seen[v] = 1;
        orb.push_back(v);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

bool is_transitive(const PermGroup& g) {
  return g.degree() <= 1 || static_cast<int>(orbit_of(g, 0).size()) == g.degree();
}

PermGroup restrict_to(const PermGroup& g, const std::vector<int>& subset) {
  std::vector<int> index(g.degree(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) index[subset[i]] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::vector<int> img(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const int j = index[s[subset[i]]];
      if (j < 0) throw std::invalid_argument("restrict_to: subset is not invariant");
      img[i] = j;
    }
    gens.push_back(Perm(std::move(img)));
  }
  return PermGroup(static_cast<int>(subset.size()), std::move(gens));
}

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& points) {
  if (points.empty() || g.is_trivial()) return g;
  std::vector<int> prefix;
  for (int p : points)
    if (std::find(prefix.begin(), prefix.end(), p) == prefix.end()) prefix.push_back(p);
  StabChain c = build_stab_chain(g.degree(), g.generators(), prefix);
  if (c.levels.size() <= prefix.size()) return PermGroup::trivial(g.degree());
  return PermGroup(g.degree(), c.levels[prefix.size()].gens);
}

PermGroup color_stabilizer(const PermGroup& g, const std::vector<int>& color) {
  const int n = g.degree();
  if (g.is_trivial()) return g;
  bool preserved = true;
  for (const Perm& s : g.generators())
    for (int u = 0; u < n && preserved; ++u) preserved = color[s[u]] == color[u];
  if (preserved) return g;

  // Every point is a base point, smallest color classes first, so partial
  // images can be pruned at every level.
  std::map<int, int> class_size;
  for (int u = 0; u < n; ++u) ++class_size[color[u]];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return class_size[color[a]] < class_size[color[b]]; });
  const StabChain c = build_stab_chain(n, g.generators(), order);
  const int L = static_cast<int>(c.levels.size());

  std::vector<Perm> found;
  std::vector<int> found_level;

  // Depth-first search for an element h * partial with the color property.
  std::function<bool(int, const Perm&, Perm&)> dfs = [&](int j, const Perm& partial, Perm& out) {
    if (j == L) {
      for (int u = 0; u < n; ++u)
        if (color[partial[u]] != color[u]) return false;
      out = partial;
      return true;
    }
    const auto& lv = c.levels[j];
    for (const Perm& t : lv.transversal) {
      Perm next = compose(t, partial);
      if (color[next[lv.base_point]] != color[lv.base_point]) continue;
      if (dfs(j + 1, next, out)) return true;
    }
    return false;
  };

  for (int i = L - 1; i >= 0; --i) {
    const auto& lv = c.levels[i];
    const int b = lv.base_point;
    auto k_orbit = [&]() {
      std::vector<char> in(n, 0);
      std::vector<int> orb{b};
      in[b] = 1;
      for (std::size_t q = 0; q < orb.size(); ++q)
        for (const Perm& s : found) {
          const int v = s[orb[q]];
          if (!in[v]) {
            in[v] = 1;
            orb.push_back(v);
          }
        }
      return in;
    };
    std::vector<char> covered = k_orbit();
    for (int gamma : lv.orbit) {
      if (covered[gamma] || color[gamma] != color[b]) continue;
      Perm out;
      if (dfs(i + 1, lv.transversal[lv.slot[gamma]], out)) {
        found.push_back(out);
        found_level.push_back(i);
        covered = k_orbit();
      }
    }
  }
  return PermGroup(n, std::move(found));
}

PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<std::vector<int>>& family) {
  if (family.empty()) return g;
  std::vector<std::vector<int>> sig(g.degree());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (int u : family[i]) sig[u].push_back(static_cast<int>(i));
  std::map<std::vector<int>, int> ids;
  std::vector<int> color(g.degree());
  for (int u = 0; u < g.degree(); ++u) {
    auto it = ids.emplace(sig[u], static_cast<int>(ids.size())).first;
    color[u] = it->second;
  }
  return color_stabilizer(g, color);
}

std::vector<int> minimal_block_system(const PermGroup& g, int a, int b) {
  const int n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<int, int>> queue;
  if (uf.unite(a, b)) queue.emplace_back(a, b);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [x, y] = queue[q];
    for (const Perm& s : g.generators()) {
      const int cx = uf.find(s[x]), cy = uf.find(s[y]);
      if (uf.unite(cx, cy)) queue.emplace_back(cx, cy);
    }
  }
  std::vector<int> id(n);
  for (int u = 0; u < n; ++u) id[u] = uf.find(u);
  return id;
}

bool is_primitive(const PermGroup& g) {
  const int n = g.degree();
  if (!is_transitive(g)) return false;
  for (int x = 1; x < n; ++x) {
    auto id = minimal_block_system(g, 0, x);
    if (std::count(id.begin(), id.end(), id[0]) < n) return false;
  }
  return true;
}

namespace {

void check_is_orbit(const PermGroup& g, const std::vector<int>& orbit, const char* who) {
  if (orbit.empty()) throw std::invalid_argument(std::string(who) + ": empty orbit");
  std::vector<int> sorted = orbit;
  std::sort(sorted.begin(), sorted.end());
  if (orbit_of(g, sorted.front()) != sorted) throw std::invalid_argument(std::string(who) + ": not an orbit");
}

// Action of the generators of g (on points of `local` numbering) on block ids.
PermGroup induced_on_blocks(const PermGroup& g, const std::vector<int>& block_id, int nblocks,
                            const std::vector<int>& rep) {
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::vector<int> img(nblocks);
    for (int b = 0; b < nblocks; ++b) img[b] = block_id[s[rep[b]]];
    gens.push_back(Perm(std::move(img)));
  }
  return PermGroup(nblocks, std::move(gens));
}

}  // namespace

BlockSystem maximal_block_system(const PermGroup& g, const std::vector<int>& orbit_in) {
  check_is_orbit(g, orbit_in, "maximal_block_system");
  std::vector<int> orbit = orbit_in;
  std::sort(orbit.begin(), orbit.end());
  const int m = static_cast<int>(orbit.size());
  const PermGroup local = restrict_to(g, orbit);

  std::vector<int> block_id(m);
  std::iota(block_id.begin(), block_id.end(), 0);
  int nblocks = m;
  while (nblocks > 2) {
    std::vector<int> rep(nblocks, -1);
    for (int u = 0; u < m; ++u)
      if (rep[block_id[u]] < 0) rep[block_id[u]] = u;
    const PermGroup act = induced_on_blocks(local, block_id, nblocks, rep);
    bool coarsened = false;
    for (int x = 1; x < nblocks && !coarsened; ++x) {
      const auto sys = minimal_block_system(act, 0, x);
      if (std::count(sys.begin(), sys.end(), sys[0]) == nblocks) continue;
      std::map<int, int> renum;
      for (int b = 0; b < nblocks; ++b) renum.emplace(sys[b], static_cast<int>(renum.size()));
      for (int u = 0; u < m; ++u) block_id[u] = renum[sys[block_id[u]]];
      nblocks = static_cast<int>(renum.size());
      coarsened = true;
    }
    if (!coarsened) break;
  }
  BlockSystem bs;
  bs.orbit = orbit;
  std::map<int, std::vector<int>> cells;
  for (int u = 0; u < m; ++u) cells[block_id[u]].push_back(orbit[u]);
  for (auto& [id, cell] : cells) bs.blocks.push_back(std::move(cell));
  std::sort(bs.blocks.begin(), bs.blocks.end());
  return bs;
}

Perm BlockAction::map(const Perm& g) const {
  std::vector<int> img(image.degree());
  for (int b = 0; b < image.degree(); ++b) {
    const int rep = std::find(block_of.begin(), block_of.end(), b) - block_of.begin();
    img[b] = block_of[g[rep]];
  }
  return Perm(std::move(img));
}

BlockAction action_on_blocks(const PermGroup& g, const BlockSystem& bs) {
  BlockAction ba;
  ba.block_of.assign(g.degree(), -1);
  std::size_t total = 0;
  for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
    if (bs.blocks[b].size() != bs.blocks[0].size())
      throw std::invalid_argument("action_on_blocks: blocks of unequal size");
    for (int u : bs.blocks[b]) {
      if (ba.block_of[u] >= 0) throw std::invalid_argument("action_on_blocks: blocks overlap");
      ba.block_of[u] = static_cast<int>(b);
      ++total;
    }
  }
  if (total != bs.orbit.size()) throw std::invalid_argument("action_on_blocks: blocks do not cover the orbit");
  const int nb = static_cast<int>(bs.blocks.size());
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::vector<int> img(nb);
    for (int b = 0; b < nb; ++b) {
      const int target = ba.block_of[s[bs.blocks[b][0]]];
      for (int u : bs.blocks[b])
        if (ba.block_of[s[u]] != target || target < 0)
          throw std::invalid_argument("action_on_blocks: not a block system of the group");
      img[b] = target;
    }
    gens.push_back(Perm(std::move(img)));
  }
  ba.image = PermGroup(nb, std::move(gens));
  return ba;
}

const char* to_string(AltStatus s) {
  switch (s) {
    case AltStatus::kSym:
      return "IsSym";
    case AltStatus::kAlt:
      return "IsAlt";
    case AltStatus::kNeither:
      return "Neither";
  }
  return "?";
}

AltStatus contains_alternating(const PermGroup& g) {
  if (!is_transitive(g)) throw std::invalid_argument("contains_alternating: group is not transitive");
  const int m = g.degree();
  const BigInt ord = g.order();
  const BigInt full = factorial(m);
  if (ord == full) return AltStatus::kSym;
  if (m >= 3 && ord * 2 == full) return AltStatus::kAlt;
  return AltStatus::kNeither;
}

BigInt giant_threshold(int k) {
  if (k <= 1) return 1;
  return boost::multiprecision::pow(BigInt(k - 1), static_cast<unsigned>(2 * k));
}

bool primitive_giant_filter(const PermGroup& g, int k) {
  if (!is_primitive(g)) throw std::invalid_argument("primitive_giant_filter: group is not primitive");
  if (BigInt(g.degree()) <= giant_threshold(k)) return true;
  return contains_alternating(g) != AltStatus::kNeither;
}

bool orbits_linked(const PermGroup& g, const std::vector<int>& orbit1, const std::vector<int>& orbit2) {
  check_is_orbit(g, orbit1, "orbits_linked");
  check_is_orbit(g, orbit2, "orbits_linked");
  std::vector<int> a = orbit1, b = orbit2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> both;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  const BigInt o1 = restrict_to(g, a).order();
  const BigInt o2 = restrict_to(g, b).order();
  if (o1 != o2) return false;
  return restrict_to(g, both).order() == o1;
}

int matching_fixed_point(const PermGroup& g, const std::vector<int>& orbit1, const std::vector<int>& orbit2, int u) {
  check_is_orbit(g, orbit1, "matching_fixed_point");
  check_is_orbit(g, orbit2, "matching_fixed_point");
  if (std::find(orbit1.begin(), orbit1.end(), u) == orbit1.end())
    throw std::invalid_argument("matching_fixed_point: u is not in orbit1");
  const PermGroup gu = pointwise_stabilizer(g, {u});
  const BigInt ou = gu.order();
  std::vector<int> cand = orbit2;
  std::sort(cand.begin(), cand.end());
  for (int v : cand) {
    bool fixes = true;
    for (const Perm& s : gu.generators()) fixes = fixes && s[v] == v;
    if (fixes && pointwise_stabilizer(g, {v}).order() == ou) return v;
  }
  throw std::runtime_error("matching_fixed_point: no point with the same stabilizer");
}

}  // namespace fptiso
