#include "fptiso/io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace fptiso {

namespace {

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw std::invalid_argument(std::string(what) + " must contain integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

ColoredHypergraph hypergraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("instance needs an integer field \"n\"");
  const int n = j["n"].get<int>();
  std::vector<std::vector<int>> edges;
  if (j.contains("hyperedges")) {
    if (!j["hyperedges"].is_array()) throw std::invalid_argument("hyperedges must be an array");
    for (const auto& e : j["hyperedges"]) edges.push_back(int_list(e, "hyperedge"));
  }
  std::vector<int> colors;
  if (j.contains("colors")) colors = int_list(j["colors"], "colors");
  std::vector<DirectedEdge> dir;
  if (j.contains("directed")) {
    if (!j["directed"].is_array()) throw std::invalid_argument("directed must be an array");
    for (const auto& d : j["directed"]) {
      auto t = int_list(d, "directed edge");
      if (t.size() != 3) throw std::invalid_argument("directed edges are [u, v, color]");
      dir.push_back({t[0], t[1], t[2]});
    }
  }
  return ColoredHypergraph(n, std::move(edges), std::move(colors), std::move(dir));
}

json hypergraph_to_json(const ColoredHypergraph& x) {
  json j;
  j["n"] = x.n();
  j["hyperedges"] = x.hyperedges();
  j["colors"] = x.colors();
  if (!x.directed().empty()) {
    json d = json::array();
    for (const auto& e : x.directed()) d.push_back({e.u, e.v, e.color});
    j["directed"] = d;
  }
  return j;
}

CnfFormula formula_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("formula must be an array of clauses");
  CnfFormula f;
  for (const auto& c : j) {
    if (!c.is_array()) throw std::invalid_argument("clause must be an array of literals");
    Clause clause;
    for (const auto& l : c) {
      if (!l.is_array() || l.size() != 3 || !l[0].is_number_integer() || !l[1].is_number_integer())
        throw std::invalid_argument("literal must be [u, v, neg]");
      bool neg;
      if (l[2].is_boolean())
        neg = l[2].get<bool>();
      else if (l[2].is_number_integer() && (l[2] == 0 || l[2] == 1))
        neg = l[2].get<int>() == 1;
      else
        throw std::invalid_argument("literal polarity must be a bool or 0/1");
      clause.push_back({l[0].get<int>(), l[1].get<int>(), neg});
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

json formula_to_json(const CnfFormula& f) {
  json j = json::array();
  for (const auto& c : f.clauses) {
    json cj = json::array();
    for (const auto& l : c) cj.push_back({l.u, l.v, l.negated ? 1 : 0});
    j.push_back(cj);
  }
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.x = hypergraph_from_json(j);
  const int n = inst.x.n();
  auto vertex_set = [&](const char* key) {
    auto v = int_list(j[key], key);
    std::set<int> s;
    for (int u : v)
      if (u < 0 || u >= n || !s.insert(u).second) throw std::invalid_argument(std::string(key) + ": bad vertex list");
    return std::vector<int>(s.begin(), s.end());
  };
  if (j.contains("red")) inst.red = vertex_set("red");
  if (j.contains("blue")) inst.blue = vertex_set("blue");
  if (inst.red && inst.blue) {
    std::vector<int> both;
    std::set_intersection(inst.red->begin(), inst.red->end(), inst.blue->begin(), inst.blue->end(),
                          std::back_inserter(both));
    if (!both.empty()) throw std::invalid_argument("red and blue overlap");
  }
  if (j.contains("formula")) {
    inst.formula = formula_from_json(j["formula"]);
    inst.formula->validate(n);
  }
  if (j.contains("k")) inst.k = j["k"].get<int>();
  if (j.contains("t")) inst.t = j["t"].get<int>();
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j = hypergraph_to_json(inst.x);
  if (inst.red) j["red"] = *inst.red;
  if (inst.blue) j["blue"] = *inst.blue;
  if (inst.formula) j["formula"] = formula_to_json(*inst.formula);
  if (inst.k) j["k"] = *inst.k;
  if (inst.t) j["t"] = *inst.t;
  return j;
}

Perm perm_from_json(const json& j) {
  if (j.is_string()) return parse_perm(j.get<std::string>());
  if (j.is_object() && j.contains("perm")) return perm_from_json(j["perm"]);
  return Perm(int_list(j, "perm"));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace fptiso
