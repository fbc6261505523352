#pragma once

#include <memory>
#include <vector>

namespace fptiso {

// Functions {0..n-1} -> {0..k-1} such that every subset of size <= k is mapped
// injectively by at least one member.
struct HashFamily {
  int n = 0, k = 0;
  std::vector<std::vector<int>> functions;
};

// Throws std::invalid_argument unless 1 <= k <= n, and when neither a direct
// verified construction nor the two-level one fits the enumeration budget.
// Results are cached per (n, k); the returned family is shared and immutable.
std::shared_ptr<const HashFamily> build_hash_family(int n, int k);

// The composed construction used when C(n, k) is too large to enumerate.
HashFamily build_two_level_family(int n, int k);

// Exhaustive check over all k-subsets.
bool is_perfect(const HashFamily& h);

}  // namespace fptiso
