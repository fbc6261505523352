#include "fptiso/exact_weight.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "fptiso/oracle.hpp"
#include "fptiso/parallel.hpp"

namespace fptiso {

const char* to_string(ShrinkRule r) {
  switch (r) {
    case ShrinkRule::kLargeBlocks: return "large-blocks";
    case ShrinkRule::kNonAltBlocks: return "non-alt-blocks";
    case ShrinkRule::kBlockStabilize: return "block-stabilize";
    case ShrinkRule::kSkipped: return "skipped";
  }
  return "?";
}

BigInt exact_weight_orbit_bound(int k, int mentioned) {
  BigInt m = std::max<BigInt>(giant_threshold(k), std::max<BigInt>(mentioned + k, 9));
  return (k * m + 1) / 2;
}

StartGroup exact_weight_start_group(const ColoredHypergraph& x, int k) {
  const int n = x.n();
  PermGroup aut = automorphism_group(x);
  if (k > kMaxMinimalComplexityWeight) return {aut, "full automorphism group"};
  auto gens = minimal_complexity_elements(Coset{aut, Perm::identity(n)}, k);
  std::erase_if(gens, [](const Perm& p) { return p.is_identity(); });
  return {PermGroup(n, std::move(gens)), "minimal-complexity automorphisms filtered from the automorphism group"};
}

namespace {

BigInt max3(const BigInt& a, const BigInt& b, const BigInt& c) { return std::max(a, std::max(b, c)); }

}  // namespace

PermGroup exact_weight_shrink(int k, const CnfFormula& f, const PermGroup& start,
                              const ExactWeightOptions& opt) {
  const auto t = f.mentioned_vertices();
  const BigInt giant = giant_threshold(k);
  const BigInt m = max3(giant, BigInt(static_cast<int>(t.size()) + k), BigInt(9));
  const BigInt km = BigInt(k) * m;
  PermGroup g = start;

  auto emit = [&](ShrinkRule rule, const PermGroup& before, const std::vector<int>& orbit) {
    if (opt.on_shrink) opt.on_shrink(ShrinkEvent{rule, before, g, orbit});
  };
  auto has_large_orbit = [&]() {
    for (const auto& o : orbit_partition(g))
      if (2 * BigInt(o.size()) > km) return true;
    return false;
  };

  while (has_large_orbit()) {
    std::vector<std::vector<int>> orbits;
    std::vector<BlockSystem> systems;
    // repeat ... until G remains unchanged
    while (true) {
      orbits = orbit_partition(g);
      systems.clear();
      bool changed = false;
      for (const auto& o : orbits) {
        BlockSystem bs = maximal_block_system(g, o);
        const bool large = 2 * static_cast<int>(bs.blocks.front().size()) > k;
        bool non_alt = false;
        if (!large && BigInt(bs.blocks.size()) > giant && bs.blocks.size() > 1)
          non_alt = contains_alternating(action_on_blocks(g, bs).image) == AltStatus::kNeither;
        if (large || non_alt) {
          PermGroup before = g;
          PermGroup next = setwise_stabilizer(g, bs.blocks);
          if (next.order() != g.order()) {
            g = std::move(next);
            emit(large ? ShrinkRule::kLargeBlocks : ShrinkRule::kNonAltBlocks, before, o);
            changed = true;
            break;
          }
        }
        systems.push_back(std::move(bs));
      }
      if (!changed) break;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < systems.size(); ++i)
      if (systems[i].blocks.size() > systems[best].blocks.size()) best = i;
    if (systems.empty() || BigInt(systems[best].blocks.size()) <= m) break;

    const auto& omega_max = orbits[best];
    const auto& blocks = systems[best].blocks;
    PermGroup h = pointwise_stabilizer(g, t);
    std::vector<char> in_max(g.degree(), 0);
    for (int u : omega_max) in_max[u] = 1;
    std::vector<int> omega_h;
    for (const auto& o : orbit_partition(h)) {
      if (!std::all_of(o.begin(), o.end(), [&](int u) { return in_max[u]; })) continue;
      if (o.size() > omega_h.size()) omega_h = o;
    }
    std::vector<char> in_h(g.degree(), 0);
    for (int u : omega_h) in_h[u] = 1;
    std::vector<const std::vector<int>*> bh;
    for (const auto& b : blocks)
      if (std::all_of(b.begin(), b.end(), [&](int u) { return in_h[u]; })) bh.push_back(&b);
    if (static_cast<int>(bh.size()) <= k) {
      emit(ShrinkRule::kSkipped, g, omega_max);
      break;
    }
    // blocks are ordered by smallest point, so the first one holds the smallest vertex
    PermGroup before = g;
    g = setwise_stabilizer(g, {*bh.front()});
    emit(ShrinkRule::kBlockStabilize, before, omega_max);
    if (g.order() == before.order()) break;
  }
  return g;
}

namespace {

struct StartCache {
  const ColoredHypergraph& x;
  std::mutex mu;
  std::map<int, StartGroup> by_k;

  const StartGroup& get(int k) {
    std::lock_guard lock(mu);
    auto it = by_k.find(k);
    if (it == by_k.end()) it = by_k.emplace(k, exact_weight_start_group(x, k)).first;
    return it->second;
  }
};

std::optional<Perm> hga(const ColoredHypergraph& x, int k, const CnfFormula& f, StartCache& cache,
                        const ExactWeightOptions& opt) {
  const int n = x.n();
  f.validate(n);
  if (k == 0) {
    Perm id = Perm::identity(n);
    if (satisfies(id, f)) return id;
    return std::nullopt;
  }
  if (k < 2 || k > n) return std::nullopt;
  const StartGroup& start = cache.get(k);
  PermGroup g = exact_weight_shrink(k, f, start.group, opt);
  return color_exact_cnf_ga(x, orbit_partition(g), k, f, BoundedColorOptions{opt.threads});
}

}  // namespace

std::optional<Perm> exact_cnf_hga(const ColoredHypergraph& x, int k, const CnfFormula& f,
                                  const ExactWeightOptions& opt) {
  StartCache cache{x, {}, {}};
  return hga(x, k, f, cache, opt);
}

std::optional<Perm> exact_cnf_hgi(const ColoredHypergraph& x1, const ColoredHypergraph& x2, int k, const CnfFormula& f,
                                  const ExactWeightOptions& opt) {
  const int n = x1.n();
  if (x2.n() != n) throw DomainMismatch("exact_cnf_hgi: vertex counts differ");
  f.validate(n);
  if (k < 0 || k > n) return std::nullopt;
  auto iso = iso_coset(x1, x2);
  if (!iso) return std::nullopt;
  const Coset coset{PermGroup(n, iso->aut_generators), iso->rep};
  auto small = small_support_elements(coset, k);
  if (small.empty()) return std::nullopt;
  const Perm pi = small.front();
  const Perm pi_inv = inverse(pi);
  const auto supp = support(pi);
  const CnfFormula base = translate(f, pi_inv);

  std::size_t total = 1;
  for (std::size_t i = 0; i < supp.size(); ++i) total *= 3;

  StartCache cache{x1, {}, {}};
  ExactWeightOptions inner = opt;
  inner.threads = 1;
  auto attempt = [&](std::size_t code) -> std::optional<Perm> {
    // digit 0: U, 1: M, 2: I
    CnfFormula fp = base;
    int u_count = 0, i_count = 0;
    for (int u : supp) {
      const int digit = static_cast<int>(code % 3);
      code /= 3;
      if (digit == 0) {
        fp.clauses.push_back({Literal{u, pi_inv[u], false}});
        ++u_count;
      } else if (digit == 1) {
        fp.clauses.push_back({Literal{u, pi_inv[u], true}});
        fp.clauses.push_back({Literal{u, u, true}});
      } else {
        fp.clauses.push_back({Literal{u, u, false}});
        ++i_count;
      }
    }
    const int kp = k - i_count + u_count;
    if (kp < 0 || kp > n) return std::nullopt;
    auto phi = hga(x1, kp, fp, cache, inner);
    if (!phi) return std::nullopt;
    return compose(*phi, pi);
  };
  return parallel_first<Perm>(total, opt.threads, attempt);
}

}  // namespace fptiso
