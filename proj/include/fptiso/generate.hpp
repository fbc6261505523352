#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fptiso/cnf.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

// Seeded instance generators. Only std::mt19937_64 output is consumed (no
// std distributions), so files are byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int m) { return m <= 0 ? 0 : static_cast<int>(eng_() % static_cast<std::uint64_t>(m)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive
  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[below(i + 1)]);
  }
  Perm permutation(int n);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

ColoredHypergraph random_graph(int n, double p, Rng& rng);
// m distinct hyperedges with sizes in 1..d.
ColoredHypergraph random_hypergraph(int n, int m, int d, Rng& rng);
// Same as x with vertices relabelled by p: vertex u becomes p[u].
ColoredHypergraph relabel(const ColoredHypergraph& x, const Perm& p);
// Random partition into classes of size at most b, returned as a coloring.
std::vector<int> random_bounded_coloring(int n, int b, Rng& rng);
// Graph plus a vertex-symmetric skeleton (union of random automorphism-rich
// pieces) so that nontrivial automorphisms are common.
ColoredHypergraph random_symmetric_graph(int n, Rng& rng);

struct RedBlueInstance {
  ColoredHypergraph x;  // colors: red classes first (sizes <= red_max), then blue classes
  std::vector<int> red, blue;
};
RedBlueInstance random_redblue(int n, int red_count, int red_max, double p, Rng& rng);
// Layers of s in {2,3} vertices joined by shifted matchings, so red classes are
// often linked by perfect matchings and Z_s acts on the whole graph. `noise`
// extra random edges break the symmetry. Leftover vertices (n mod s) are blue.
RedBlueInstance random_layered_redblue(int n, int s, int noise, Rng& rng);

// `clauses` clauses of 1..max_len literals over vertices 0..n-1.
CnfFormula random_formula(int n, int clauses, int max_len, Rng& rng);

}  // namespace fptiso
