#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fptiso/bounded_color.hpp"
#include "fptiso/cnf.hpp"
#include "fptiso/group.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

enum class ShrinkRule {
  kLargeBlocks,     // some block of an orbit has more than k/2 points
  kNonAltBlocks,    // many blocks and the block action avoids Alt
  kBlockStabilize,  // setwise stabilizer of one block far from T
  kSkipped,         // the chosen block family was too small; shrink not applied
};
const char* to_string(ShrinkRule r);

struct ShrinkEvent {
  ShrinkRule rule;
  PermGroup before;
  PermGroup after;
  std::vector<int> orbit;
};

struct ExactWeightOptions {
  int threads = 1;
  std::function<void(const ShrinkEvent&)> on_shrink;
};

// Generators of the group the shrink loop starts from and how they were obtained.
struct StartGroup {
  PermGroup group;
  std::string backend;
};
StartGroup exact_weight_start_group(const ColoredHypergraph& x, int k);

// The group left after the shrink loop; its orbits are the color classes of
// the final bounded-color call.
PermGroup exact_weight_shrink(int k, const CnfFormula& f, const PermGroup& start,
                              const ExactWeightOptions& opt = {});

// (k * max((k-1)^(2k), |T| + k, 9)) / 2 rounded up.
BigInt exact_weight_orbit_bound(int k, int mentioned);

std::optional<Perm> exact_cnf_hga(const ColoredHypergraph& x, int k, const CnfFormula& f,
                                  const ExactWeightOptions& opt = {});
std::optional<Perm> exact_cnf_hgi(const ColoredHypergraph& x1, const ColoredHypergraph& x2, int k, const CnfFormula& f,
                                  const ExactWeightOptions& opt = {});

}  // namespace fptiso
