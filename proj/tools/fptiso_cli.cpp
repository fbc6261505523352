// fptiso: solve, verify and generate constrained isomorphism instances.
//
//   fptiso solve exact-weight --k 2 -i c4.json
//   fptiso solve colga --k 3 -i c4_blue.json
//   fptiso verify exact-weight --k 2 -i c4.json -w witness.json
//   fptiso gen graph --n 6 --seed 42
//
// Exit codes: 0 SAT / valid, 1 UNSAT / invalid, 2 input error, 3 timeout.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <future>
#include <iostream>
#include <thread>

#include "fptiso/bounded_color.hpp"
#include "fptiso/cnf_iso.hpp"
#include "fptiso/colga.hpp"
#include "fptiso/exact_complexity.hpp"
#include "fptiso/exact_weight.hpp"
#include "fptiso/generate.hpp"
#include "fptiso/io.hpp"
#include "fptiso/oracle.hpp"

using namespace fptiso;

namespace {

const std::vector<std::string> kModes = {"bounded-color", "exact-weight", "cnf-iso", "exact-complexity", "colga"};

struct Args {
  std::string mode;
  std::string input, second, formula_path, witness_path;
  std::optional<int> k, t, bound;
  int threads = 1;
  double timeout = 0;
  bool oracle = false;
};

struct Loaded {
  Instance a;
  ColoredHypergraph y;
  CnfFormula f;
  int k = 0, t = 0;
};

Loaded load(const Args& args) {
  Loaded l{instance_from_json(read_json_file(args.input)), {}, {}};
  l.y = args.second.empty() ? l.a.x : instance_from_json(read_json_file(args.second)).x;
  if (l.y.n() != l.a.x.n()) throw std::invalid_argument("instances have different vertex counts");
  if (!args.formula_path.empty()) l.f = formula_from_json(read_json_file(args.formula_path));
  else if (l.a.formula) l.f = *l.a.formula;
  l.f.validate(l.a.x.n());
  l.k = args.k ? *args.k : l.a.k.value_or(-1);
  l.t = args.t ? *args.t : l.a.t.value_or(-1);
  if (args.mode == "exact-complexity") {
    if (l.t < 0) throw std::invalid_argument("exact-complexity needs --t");
  } else if (args.mode != "cnf-iso" && l.k < 0) {
    throw std::invalid_argument(args.mode + " needs --k");
  }
  if (args.mode == "colga") {
    if (!l.a.red && !l.a.blue) throw std::invalid_argument("colga needs \"red\" and/or \"blue\" in the instance");
    if (!args.second.empty()) throw std::invalid_argument("colga takes one instance");
  }
  if (args.mode == "bounded-color") {
    if (!args.second.empty()) throw std::invalid_argument("bounded-color takes one instance");
    if (args.bound)
      for (const auto& c : l.a.x.color_classes())
        if (static_cast<int>(c.size()) > *args.bound) throw std::invalid_argument("a color class exceeds --bound");
  }
  return l;
}

// Missing side of the red/blue split is the complement of the given one.
std::pair<std::vector<int>, std::vector<int>> sides(const Instance& inst) {
  std::vector<char> is_red(inst.x.n(), 0);
  if (inst.red)
    for (int u : *inst.red) is_red[u] = 1;
  else
    std::fill(is_red.begin(), is_red.end(), 1);
  if (inst.blue)
    for (int u : *inst.blue) is_red[u] = 0;
  std::vector<int> red, blue;
  for (int u = 0; u < inst.x.n(); ++u) (is_red[u] ? red : blue).push_back(u);
  return {red, blue};
}

std::optional<Perm> solve(const Args& args, const Loaded& l) {
  const auto& x = l.a.x;
  if (args.mode == "bounded-color") {
    const auto classes = x.color_classes();
    if (args.oracle) return brute_color_exact_cnf_ga(x, classes, l.k, l.f);
    return color_exact_cnf_ga(x, classes, l.k, l.f, {args.threads});
  }
  if (args.mode == "exact-weight") {
    if (args.oracle) return brute_exact_cnf_iso(x, l.y, l.k, l.f);
    ExactWeightOptions opt;
    opt.threads = args.threads;
    return args.second.empty() ? exact_cnf_hga(x, l.k, l.f, opt) : exact_cnf_hgi(x, l.y, l.k, l.f, opt);
  }
  if (args.mode == "cnf-iso") {
    if (args.oracle) return brute_cnf_iso(x, l.y, l.f);
    return cnf_hgi(x, l.y, l.f, {args.threads});
  }
  if (args.mode == "exact-complexity") {
    if (args.oracle) return brute_exact_complexity_iso(x, l.y, l.t);
    return exact_complexity_iso(x, l.y, l.t, {args.threads});
  }
  const auto [red, blue] = sides(l.a);
  if (args.oracle) return brute_colga(x, red, blue, l.k);
  return colga(x, red, blue, l.k, {args.threads});
}

bool verify(const Args& args, const Loaded& l, const Perm& p) {
  const auto& x = l.a.x;
  if (p.size() != x.n()) return false;
  if (args.mode == "bounded-color") return is_automorphism(p, x) && weight(p) == l.k && satisfies(p, l.f);
  if (args.mode == "exact-weight") return is_isomorphism(p, x, l.y) && weight(p) == l.k && satisfies(p, l.f);
  if (args.mode == "cnf-iso") return is_isomorphism(p, x, l.y) && satisfies(p, l.f);
  if (args.mode == "exact-complexity") return is_isomorphism(p, x, l.y) && cayley_complexity(p) == l.t;
  const auto [red, blue] = sides(l.a);
  if (!is_automorphism(p, x)) return false;
  std::vector<char> is_red(x.n(), 0);
  for (int u : red) is_red[u] = 1;
  int moved = 0;
  for (int u = 0; u < x.n(); ++u) {
    if (is_red[u] != is_red[p[u]]) return false;
    moved += !is_red[u] && p[u] != u;
  }
  return moved == l.k;
}

int run_solve(const Args& args) {
  const Loaded l = load(args);
  auto task = std::make_shared<std::packaged_task<std::optional<Perm>()>>([&args, &l] { return solve(args, l); });
  auto result = task->get_future();
  std::thread([task] { (*task)(); }).detach();
  if (args.timeout > 0 &&
      result.wait_for(std::chrono::duration<double>(args.timeout)) != std::future_status::ready) {
    std::cout << json{{"status", "TIMEOUT"}}.dump() << std::endl;
    std::_Exit(3);
  }
  const auto p = result.get();
  if (!p) {
    std::cout << json{{"status", "UNSAT"}}.dump() << std::endl;
    return 1;
  }
  if (!verify(args, l, *p)) throw std::logic_error("solver returned a witness that does not verify");
  std::cout << json{{"status", "SAT"}, {"perm", p->images()}}.dump() << std::endl;
  return 0;
}

int run_verify(const Args& args) {
  const Loaded l = load(args);
  json w = read_json_file(args.witness_path);
  if (w.is_object()) {
    if (!w.contains("perm")) throw std::invalid_argument("witness object needs \"perm\"");
    w = w["perm"];
  }
  const bool ok = verify(args, l, perm_from_json(w));
  std::cout << json{{"valid", ok}}.dump() << std::endl;
  return ok ? 0 : 1;
}

struct GenArgs {
  std::string kind;
  int n = 6, bound = 3, red = 3, clauses = 3, max_len = 2;
  double p = 0.4;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& g) {
  if (g.n < 1) throw std::invalid_argument("--n must be positive");
  if (g.p < 0 || g.p > 1) throw std::invalid_argument("--p must lie in [0, 1]");
  Rng rng(g.seed);
  Instance inst{ColoredHypergraph(g.n, {}), {}, {}, {}, {}, {}};
  if (g.kind == "graph") {
    inst.x = random_graph(g.n, g.p, rng);
  } else if (g.kind == "bounded") {
    if (g.bound < 1) throw std::invalid_argument("--bound must be positive");
    inst.x = random_graph(g.n, g.p, rng).with_colors(random_bounded_coloring(g.n, g.bound, rng));
  } else if (g.kind == "redblue") {
    if (g.red < 0 || g.red > g.n) throw std::invalid_argument("--red must lie in 0..n");
    auto rb = random_redblue(g.n, g.red, std::min(g.bound, 3), g.p, rng);
    inst.x = rb.x;
    inst.red = rb.red;
    inst.blue = rb.blue;
  } else if (g.kind == "cnf") {
    if (g.clauses < 0 || g.max_len < 1) throw std::invalid_argument("bad --clauses or --max-len");
    inst.x = random_graph(g.n, g.p, rng);
    inst.formula = random_formula(g.n, g.clauses, g.max_len, rng);
  } else {
    throw std::invalid_argument("unknown kind " + g.kind);
  }
  const std::string text = instance_to_json(inst).dump() + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::FILE* f = std::fopen(g.out.c_str(), "wb");
    if (!f) throw std::invalid_argument("cannot write " + g.out);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  return 0;
}

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("mode", args.mode, "solver")->required()->check(CLI::IsMember(kModes));
  sub->add_option("-i,--input", args.input, "instance JSON")->required();
  sub->add_option("-j,--second", args.second, "second instance for isomorphism queries");
  sub->add_option("-f,--formula", args.formula_path, "formula JSON (overrides the instance's)");
  sub->add_option("--k", args.k, "weight parameter");
  sub->add_option("--t", args.t, "Cayley complexity");
  sub->add_option("--bound", args.bound, "reject color classes larger than this");
  sub->add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained hypergraph isomorphism solvers"};
  app.require_subcommand(1);
  Args args;
  GenArgs gen;

  auto* solve_cmd = app.add_subcommand("solve", "run a solver");
  add_common(solve_cmd, args);
  solve_cmd->add_option("--timeout", args.timeout, "seconds; exit 3 when exceeded")->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--oracle", args.oracle, "use the brute-force backend (n <= 9)");

  auto* verify_cmd = app.add_subcommand("verify", "re-check a witness");
  add_common(verify_cmd, args);
  verify_cmd->add_option("-w,--witness", args.witness_path, "witness JSON: solver output or an image list")
      ->required();

  auto* gen_cmd = app.add_subcommand("gen", "write a seeded random instance");
  gen_cmd->add_option("kind", gen.kind, "graph | bounded | redblue | cnf")
      ->required()
      ->check(CLI::IsMember({"graph", "bounded", "redblue", "cnf"}));
  gen_cmd->add_option("--n", gen.n, "vertices");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--p", gen.p, "edge probability");
  gen_cmd->add_option("--bound", gen.bound, "color class bound (red classes are capped at 3)");
  gen_cmd->add_option("--red", gen.red, "number of red vertices");
  gen_cmd->add_option("--clauses", gen.clauses, "clauses in the formula");
  gen_cmd->add_option("--max-len", gen.max_len, "literals per clause");
  gen_cmd->add_option("-o,--output", gen.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*solve_cmd) return run_solve(args);
    if (*verify_cmd) return run_verify(args);
    return run_gen(gen);
  } catch (const OracleTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
