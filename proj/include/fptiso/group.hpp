#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fptiso/perm.hpp"

namespace fptiso {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int m);

// One level of a base and strong generating set.
struct StabLevel {
  int base_point = -1;
  std::vector<Perm> gens;        // strong generators fixing all earlier base points
  std::vector<int> orbit;        // orbit of base_point under gens, discovery order
  std::vector<int> slot;         // point -> index into transversal, -1 if not in orbit
  std::vector<Perm> transversal;  // base_point^transversal[slot[b]] == b
  std::vector<Perm> transversal_inv;
};

struct StabChain {
  int n = 0;
  std::vector<StabLevel> levels;

  BigInt order() const;
  // Returns the residue of g and the first level where sifting failed
  // (levels.size() if g sifted through every level).
  std::pair<Perm, int> sift(const Perm& g, int from_level = 0) const;
  bool contains(const Perm& g) const;
  std::vector<int> base() const;
  std::string dump() const;
};

// Deterministic given (gens, base_prefix, seed). A random Schreier-Sims phase is
// followed by a full deterministic check of all Schreier generators, so the
// result is exact regardless of the random phase.
StabChain build_stab_chain(int n, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {},
                           std::uint64_t seed = 0x5eed);

// A permutation group given by generators. The stabilizer chain is built on the
// first query under a lock; afterwards all queries are read-only.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(int n, std::vector<Perm> generators);

  static PermGroup trivial(int n) { return PermGroup(n, {}); }
  static PermGroup symmetric(int n);
  static PermGroup alternating(int n);

  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const StabChain& chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Perm& p) const;
  bool is_trivial() const { return gens_.empty(); }

  // Calls f on every element until it returns false. Only sensible for small groups.
  void for_each_element(const std::function<bool(const Perm&)>& f) const;
  Perm random_element(std::mt19937_64& rng) const;

 private:
  struct Lazy;
  int n_ = 0;
  std::vector<Perm> gens_;
  std::shared_ptr<Lazy> lazy_;
};

// G * rep. Membership: sigma in coset iff sigma * rep^-1 in G.
struct Coset {
  PermGroup group;
  Perm rep;

  bool contains(const Perm& sigma) const;
};

std::vector<std::vector<int>> orbit_partition(const PermGroup& g);
std::vector<int> orbit_of(const PermGroup& g, int point);
bool is_transitive(const PermGroup& g);

// Action of g on an invariant subset; subset[i] becomes point i.
PermGroup restrict_to(const PermGroup& g, const std::vector<int>& subset);

PermGroup pointwise_stabilizer(const PermGroup& g, const std::vector<int>& points);
// Elements mapping every set of the family onto itself.
PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<std::vector<int>>& family);
// Elements with color[u^g] == color[u] for all u.
PermGroup color_stabilizer(const PermGroup& g, const std::vector<int>& color);

struct BlockSystem {
  std::vector<int> orbit;                // sorted
  std::vector<std::vector<int>> blocks;  // each sorted, ordered by smallest point
};

// Partition of [0, n) into the blocks of the smallest block system containing
// {a, b}, as a block id per point (ids are the smallest point of each block).
std::vector<int> minimal_block_system(const PermGroup& g, int a, int b);
bool is_primitive(const PermGroup& g);

BlockSystem maximal_block_system(const PermGroup& g, const std::vector<int>& orbit);

struct BlockAction {
  PermGroup image;              // acts on block indices 0..blocks-1
  std::vector<int> block_of;    // point -> block index, -1 outside the orbit
  Perm map(const Perm& g) const;
};
BlockAction action_on_blocks(const PermGroup& g, const BlockSystem& bs);

enum class AltStatus { kSym, kAlt, kNeither };
const char* to_string(AltStatus s);
// g must be transitive on its whole domain.
AltStatus contains_alternating(const PermGroup& g);

// (k-1)^(2k), defined as 1 for k <= 1.
BigInt giant_threshold(int k);
// False exactly when the degree exceeds giant_threshold(k) and g is not Alt/Sym;
// then no nontrivial element of g moves at most k points. g must be primitive.
bool primitive_giant_filter(const PermGroup& g, int k);

bool orbits_linked(const PermGroup& g, const std::vector<int>& orbit1, const std::vector<int>& orbit2);
// A point v of orbit2 whose stabilizer equals the stabilizer of u; throws if none.
int matching_fixed_point(const PermGroup& g, const std::vector<int>& orbit1, const std::vector<int>& orbit2, int u);

}  // namespace fptiso
