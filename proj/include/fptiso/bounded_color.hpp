#pragma once

#include <optional>
#include <vector>

#include "fptiso/cnf.hpp"
#include "fptiso/hypergraph.hpp"
#include "fptiso/oracle.hpp"

namespace fptiso {

struct BoundedColorOptions {
  int threads = 1;
};

struct BoundedColorWitness {
  Perm sigma;
  std::vector<Perm> factors;  // color-class-minimal, pairwise disjoint supports, product sigma
};

// Color-preserving automorphism of x (colors of x and the classes) of weight
// exactly k that satisfies f, or none.
std::optional<BoundedColorWitness> color_exact_cnf_ga_witness(const ColoredHypergraph& x,
                                                              const std::vector<std::vector<int>>& classes, int k,
                                                              const CnfFormula& f,
                                                              const BoundedColorOptions& opt = {});
std::optional<Perm> color_exact_cnf_ga(const ColoredHypergraph& x, const std::vector<std::vector<int>>& classes, int k,
                                       const CnfFormula& f, const BoundedColorOptions& opt = {});

// Same search with the class-minimal automorphisms supplied by the caller.
std::optional<BoundedColorWitness> color_exact_cnf_ga_with(const ColoredHypergraph& x,
                                                           const std::vector<std::vector<int>>& classes, int k,
                                                           const CnfFormula& f,
                                                           const std::vector<ClassMinimalAuto>& minimal_autos,
                                                           const BoundedColorOptions& opt = {});

}  // namespace fptiso
