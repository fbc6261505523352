#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fptiso/cnf.hpp"
#include "fptiso/group.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

// Stable 1-WL coloring of a hypergraph (hyperedges and directed colored edges
// both contribute). Colors of the result are dense and ordered so that the
// result only depends on the isomorphism type of (x, initial).
std::vector<int> refine_colors(const ColoredHypergraph& x, const std::vector<int>& initial);

struct IsoResult {
  Perm rep;                          // some isomorphism x -> y
  std::vector<Perm> aut_generators;  // generators of Aut(x)
};

// Iso(x, y) = Aut(x) * rep, found by individualization-refinement backtracking.
std::optional<IsoResult> iso_coset(const ColoredHypergraph& x, const ColoredHypergraph& y);
std::optional<Perm> find_isomorphism(const ColoredHypergraph& x, const ColoredHypergraph& y);
PermGroup automorphism_group(const ColoredHypergraph& x);

// All sigma in the coset with weight(sigma) <= k, in a fixed order without repeats.
std::vector<Perm> small_support_elements(const Coset& c, int k);
// Elements of small_support_elements(c, k) that have minimal complexity in the coset.
std::vector<Perm> minimal_complexity_elements(const Coset& c, int k);
// The filtering step alone; `small` must be small_support_elements(c, k') for some k'
// at least the weight of every element tested.
std::vector<Perm> filter_minimal_complexity(const Coset& c, const std::vector<Perm>& small);
inline constexpr int kMaxMinimalComplexityWeight = 12;

struct ClassMinimalAuto {
  Perm sigma;
  std::vector<int> classes;  // indices of the touched classes, sorted
  int weight = 0;
};
// class_of[v] gives the class index of v; sigma must preserve classes and be an
// automorphism of x (including the colors of x).
bool is_color_class_minimal(const Perm& sigma, const ColoredHypergraph& x, const std::vector<int>& class_of);
// All color-class-minimal automorphisms of weight 1..k.
std::vector<ClassMinimalAuto> color_class_minimal_autos(const ColoredHypergraph& x,
                                                        const std::vector<std::vector<int>>& classes, int k);

struct OracleLimits {
  int max_n = 9;
};

class OracleTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exhaustive searches over Sym(n) with the exact predicates. Each returns the
// first solution in lexicographic order of image lists.
std::optional<Perm> brute_exact_cnf_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int k,
                                        const CnfFormula& f, OracleLimits lim = {});
std::optional<Perm> brute_cnf_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, const CnfFormula& f,
                                  OracleLimits lim = {});
std::optional<Perm> brute_exact_complexity_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int t,
                                               OracleLimits lim = {});
// Automorphism of x preserving its colors and the red/blue partition that moves exactly k blue vertices.
std::optional<Perm> brute_colga(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue,
                                int k, OracleLimits lim = {});
// Color-preserving automorphism preserving `classes` too, of weight exactly k, satisfying f.
std::optional<Perm> brute_color_exact_cnf_ga(const ColoredHypergraph& x, const std::vector<std::vector<int>>& classes,
                                             int k, const CnfFormula& f, OracleLimits lim = {});
// Calls fn on each isomorphism x -> y until it returns false.
void brute_for_each_isomorphism(const ColoredHypergraph& x, const ColoredHypergraph& y,
                                const std::function<bool(const Perm&)>& fn, OracleLimits lim = {});

}  // namespace fptiso
