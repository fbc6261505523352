#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fptiso/cnf.hpp"
#include "fptiso/group.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

using VertexPair = std::pair<int, int>;

// |{sigma in Iso(x, y) : u^sigma = v for all (u, v) in fixes}|. Fixes that are
// not a partial injection give 0.
BigInt count_iso_fixing(const ColoredHypergraph& x, const ColoredHypergraph& y, const std::vector<VertexPair>& fixes);

// |union over i of {sigma in Iso : forced, u_i^sigma = v_i}| by the alternating sum
// over nonempty subsets of `forbidden`.
BigInt forbidden_union_size(const ColoredHypergraph& x, const ColoredHypergraph& y,
                            const std::vector<VertexPair>& forced, const std::vector<VertexPair>& forbidden);

// Some isomorphism respecting `forced` and avoiding every forbidden pair exists.
bool compatible_iso_exists(const ColoredHypergraph& x, const ColoredHypergraph& y,
                           const std::vector<VertexPair>& forced, const std::vector<VertexPair>& forbidden);

// Forced mappings and forbidden pairs an assignment to the variables of f imposes.
struct AssignmentPairs {
  std::vector<VertexPair> forced;
  std::vector<VertexPair> forbidden;
};
AssignmentPairs assignment_pairs(const PartialAssignment& a);

struct CnfIsoOptions {
  int threads = 1;
};

std::optional<Perm> cnf_hgi(const ColoredHypergraph& x, const ColoredHypergraph& y, const CnfFormula& f,
                            const CnfIsoOptions& opt = {});

}  // namespace fptiso
