#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fptiso/perm.hpp"

namespace fptiso {

// x_{u,v} is true under a permutation p iff u^p == v.
struct Literal {
  int u = 0, v = 0;
  bool negated = false;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};
using Clause = std::vector<Literal>;

struct CnfFormula {
  std::vector<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  // Distinct variables (u, v), sorted. Their count is the size measure |F|.
  std::vector<std::pair<int, int>> variables() const;
  int size() const { return static_cast<int>(variables().size()); }
  // Vertices occurring as u or v in some literal, sorted.
  std::vector<int> mentioned_vertices() const;
  void validate(int n) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

inline bool literal_holds(const Perm& p, const Literal& l) { return (p[l.u] == l.v) != l.negated; }
bool satisfies(const Perm& p, const CnfFormula& f);
bool clause_satisfied(const Perm& p, const Clause& c);

// Every clause has a literal with u in the union of the given classes that p satisfies.
bool class_satisfies(const Perm& p, const CnfFormula& f, const std::vector<std::vector<int>>& classes);
// Same with the union given as a 0/1 mask over vertices.
bool class_satisfies_mask(const Perm& p, const CnfFormula& f, const std::vector<char>& in_union);
bool clause_class_satisfied(const Perm& p, const Clause& c, const std::vector<char>& in_union);

// Replaces x_{u,v} by x_{u,v^p}. satisfies(compose(phi, pi), F) == satisfies(phi, translate(F, inverse(pi))).
CnfFormula translate(const CnfFormula& f, const Perm& p);
CnfFormula conjunction(const CnfFormula& a, const CnfFormula& b);

// Assignment to the variables of a formula that is the restriction of some
// permutation's assignment row by row.
struct PartialAssignment {
  std::vector<std::pair<int, int>> vars;
  std::vector<char> values;
};

// Calls fn for each partial permutation assignment over the variables of f (in
// binary counting order over the sorted variable list) until fn returns false.
void enumerate_partial_assignments(const CnfFormula& f, int n, const std::function<bool(const PartialAssignment&)>& fn);
std::vector<PartialAssignment> partial_assignments(const CnfFormula& f, int n);
// True if the formula evaluates to true under a total assignment of its variables.
bool assignment_satisfies(const CnfFormula& f, const PartialAssignment& a);

}  // namespace fptiso
