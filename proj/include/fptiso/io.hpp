#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "fptiso/cnf.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

using json = nlohmann::json;

// {"n":int, "hyperedges":[[int]], "colors":[int], "directed":[[u,v,c]], "red":[int], "blue":[int],
//  "formula":[[[u,v,neg]]], "k":int, "t":int}; everything except "n" is optional.
struct Instance {
  ColoredHypergraph x;
  std::optional<std::vector<int>> red, blue;
  std::optional<CnfFormula> formula;
  std::optional<int> k, t;

  friend bool operator==(const Instance&, const Instance&) = default;
};

ColoredHypergraph hypergraph_from_json(const json& j);
json hypergraph_to_json(const ColoredHypergraph& x);
// Clauses of [u, v, neg] triples; neg may be a bool or 0/1.
CnfFormula formula_from_json(const json& j);
json formula_to_json(const CnfFormula& f);
Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);
Perm perm_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace fptiso
