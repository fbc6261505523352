#include "fptiso/splitters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fptiso {

namespace {

constexpr double kSubsetBudget = 2e6;

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int next_prime(int m) {
  auto prime = [](int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  };
  while (!prime(m)) ++m;
  return m;
}

// All k-subsets of {0..n-1}, flattened.
std::vector<int> all_subsets(int n, int k) {
  std::vector<int> out, cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.insert(out.end(), cur.begin(), cur.end());
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

bool injective_on(const std::vector<int>& f, const int* s, int k) {
  unsigned mask = 0;
  for (int i = 0; i < k; ++i) {
    const unsigned bit = 1u << f[s[i]];
    if (mask & bit) return false;
    mask |= bit;
  }
  return true;
}

// Greedy cover of all k-subsets by candidates ((a*x + b) mod p) mod k, falling
// back to seeded random functions; each round picks the best of a batch.
std::vector<std::vector<int>> greedy_family(int n, int k) {
  std::vector<int> uncovered = all_subsets(n, k);
  std::size_t count = uncovered.size() / k;
  const int p = next_prime(std::max(n, k) + 1);
  std::mt19937_64 rng(0x5eedULL * 1000003 + n * 131 + k);
  std::vector<std::vector<int>> family;
  constexpr int kBatch = 32;
  while (count > 0) {
    std::vector<int> best;
    std::size_t best_cover = 0;
    for (int c = 0; c < kBatch; ++c) {
      std::vector<int> f(n);
      if (c % 2 == 0) {
        const std::uint64_t a = 1 + rng() % (p - 1), b = rng() % p;
        for (int x = 0; x < n; ++x) f[x] = static_cast<int>(((a * x + b) % p) % k);
      } else {
        for (int x = 0; x < n; ++x) f[x] = static_cast<int>(rng() % k);
      }
      std::size_t cover = 0;
      for (std::size_t i = 0; i < count; ++i) cover += injective_on(f, &uncovered[i * k], k);
      if (cover > best_cover) {
        best_cover = cover;
        best = std::move(f);
      }
    }
    if (best_cover == 0) continue;
    std::size_t w = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (injective_on(best, &uncovered[i * k], k)) continue;
      std::copy_n(&uncovered[i * k], k, &uncovered[w * k]);
      ++w;
    }
    count = w;
    uncovered.resize(count * k);
    family.push_back(std::move(best));
  }
  return family;
}

}  // namespace

HashFamily build_two_level_family(int n, int k) {
  // x -> (a*x mod p) mod k^2 is injective on any fixed k-set for at least
  // half of the a in 1..p-1; compose with a verified family on k^2 points.
  HashFamily h{n, k, {}};
  const int r = k * k;
  const int p = next_prime(n + 1);
  auto inner = greedy_family(r, k);
  for (int a = 1; a < p; ++a)
    for (const auto& g : inner) {
      std::vector<int> f(n);
      for (int x = 0; x < n; ++x) f[x] = g[static_cast<int>((static_cast<long long>(a) * x % p) % r)];
      h.functions.push_back(std::move(f));
    }
  return h;
}

namespace {

HashFamily construct(int n, int k) {
  HashFamily h{n, k, {}};
  if (k == 1) {
    h.functions.assign(1, std::vector<int>(n, 0));
  } else if (k == n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    h.functions.push_back(std::move(id));
  } else if (binomial(n, k) <= kSubsetBudget) {
    h.functions = greedy_family(n, k);
  } else if (binomial(k * k, k) <= kSubsetBudget) {
    h = build_two_level_family(n, k);
  } else {
    throw std::invalid_argument("build_hash_family: k too large for a verified construction");
  }
  return h;
}

}  // namespace

std::shared_ptr<const HashFamily> build_hash_family(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("build_hash_family: need 1 <= k <= n");
  if (k > 30) throw std::invalid_argument("build_hash_family: k too large");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const HashFamily>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
  }
  auto fam = std::make_shared<const HashFamily>(construct(n, k));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, k), fam).first->second;
}

bool is_perfect(const HashFamily& h) {
  if (h.k < 1 || h.k > h.n) return false;
  for (const auto& f : h.functions) {
    if (static_cast<int>(f.size()) != h.n) return false;
    for (int v : f)
      if (v < 0 || v >= h.k) return false;
  }
  const auto subs = all_subsets(h.n, h.k);
  for (std::size_t i = 0; i < subs.size(); i += h.k) {
    bool ok = false;
    for (const auto& f : h.functions)
      if (injective_on(f, &subs[i], h.k)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace fptiso
