#include "fptiso/cnf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fptiso {

std::vector<std::pair<int, int>> CnfFormula::variables() const {
  std::set<std::pair<int, int>> vars;
  for (const auto& c : clauses)
    for (const auto& l : c) vars.emplace(l.u, l.v);
  return {vars.begin(), vars.end()};
}

std::vector<int> CnfFormula::mentioned_vertices() const {
  std::set<int> vs;
  for (const auto& c : clauses)
    for (const auto& l : c) {
      vs.insert(l.u);
      vs.insert(l.v);
    }
  return {vs.begin(), vs.end()};
}

void CnfFormula::validate(int n) const {
  for (const auto& c : clauses)
    for (const auto& l : c)
      if (l.u < 0 || l.u >= n || l.v < 0 || l.v >= n) throw std::invalid_argument("formula: vertex out of range");
}

bool clause_satisfied(const Perm& p, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return literal_holds(p, l); });
}

bool satisfies(const Perm& p, const CnfFormula& f) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return clause_satisfied(p, c); });
}

bool clause_class_satisfied(const Perm& p, const Clause& c, const std::vector<char>& in_union) {
  return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return in_union[l.u] && literal_holds(p, l); });
}

bool class_satisfies_mask(const Perm& p, const CnfFormula& f, const std::vector<char>& in_union) {
  for (const auto& c : f.clauses)
    if (!clause_class_satisfied(p, c, in_union)) return false;
  return true;
}

bool class_satisfies(const Perm& p, const CnfFormula& f, const std::vector<std::vector<int>>& classes) {
  std::vector<char> mask(p.size(), 0);
  for (const auto& c : classes)
    for (int u : c) mask[u] = 1;
  return class_satisfies_mask(p, f, mask);
}

CnfFormula translate(const CnfFormula& f, const Perm& p) {
  CnfFormula out = f;
  for (auto& c : out.clauses)
    for (auto& l : c) l.v = p[l.v];
  return out;
}

CnfFormula conjunction(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula out = a;
  out.clauses.insert(out.clauses.end(), b.clauses.begin(), b.clauses.end());
  return out;
}

void enumerate_partial_assignments(const CnfFormula& f, int n,
                                   const std::function<bool(const PartialAssignment&)>& fn) {
  PartialAssignment a;
  a.vars = f.variables();
  const std::size_t t = a.vars.size();
  if (t >= 63) throw std::invalid_argument("enumerate_partial_assignments: too many variables");
  std::map<int, std::vector<int>> rows;  // u -> indices into vars
  for (std::size_t i = 0; i < t; ++i) rows[a.vars[i].first].push_back(static_cast<int>(i));
  a.values.assign(t, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    bool ok = true;
    for (const auto& [u, idx] : rows) {
      int ones = 0;
      for (int i : idx) ones += (mask >> i) & 1;
      if (ones > 1 || (ones == 0 && static_cast<int>(idx.size()) == n)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < t; ++i) a.values[i] = (mask >> i) & 1;
    if (!fn(a)) return;
  }
}

std::vector<PartialAssignment> partial_assignments(const CnfFormula& f, int n) {
  std::vector<PartialAssignment> out;
  enumerate_partial_assignments(f, n, [&](const PartialAssignment& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

bool assignment_satisfies(const CnfFormula& f, const PartialAssignment& a) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (const auto& l : c) {
      auto it = std::lower_bound(a.vars.begin(), a.vars.end(), std::make_pair(l.u, l.v));
      if (it == a.vars.end() || *it != std::make_pair(l.u, l.v))
        throw std::invalid_argument("assignment_satisfies: variable not assigned");
      const bool val = a.values[it - a.vars.begin()];
      if (val != l.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace fptiso
