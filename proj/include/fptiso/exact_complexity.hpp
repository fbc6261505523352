#pragma once

#include <optional>
#include <vector>

#include "fptiso/hypergraph.hpp"
#include "fptiso/perm.hpp"

namespace fptiso {

// Incidence graph between the moved points of the factors and their cycles.
struct CycleGraph {
  struct CycleVertex {
    int factor;
    std::vector<int> points;  // sorted
  };
  std::vector<int> primal;        // union of the supports, sorted
  std::vector<int> primal_color;  // parallel to primal
  std::vector<CycleVertex> cycles;

  bool is_forest() const;
};

// coloring empty means every point is colored by itself.
CycleGraph cycle_graph(const std::vector<Perm>& factors, const std::vector<int>& coloring = {});

// Throws std::invalid_argument on an identity factor.
bool is_complexity_additive(const std::vector<Perm>& factors);

// A colored forest whose primal vertices are colored bijectively by 0..k-1, so
// they are identified with their colors.
struct CyclePattern {
  struct Cycle {
    int color;
    std::vector<int> points;  // sorted primal colors
    friend auto operator<=>(const Cycle&, const Cycle&) = default;
  };
  int k = 0;       // primal vertices
  int colors = 0;  // cycle colors 0..colors-1
  std::vector<Cycle> cycles;  // sorted by (color, points)

  int complexity() const;
  // One permutation of {0..k-1} per cycle color; their product matches the pattern.
  std::vector<Perm> factors() const;
  Perm sigma() const;

  friend auto operator<=>(const CyclePattern&, const CyclePattern&) = default;
};

// Checks the five defining properties directly.
bool is_cycle_pattern(const CyclePattern& p);

// The pattern of a cycle graph whose primal colors are exactly 0..k-1, each used once.
std::optional<CyclePattern> pattern_of(const CycleGraph& g);

// All patterns with complexity t, sorted. Cached; t = 0 gives the empty pattern.
const std::vector<CyclePattern>& enumerate_patterns(int t);

bool realizes_color(const Perm& sigma, const std::vector<int>& h, const CyclePattern& p, int color);

struct ExactComplexityOptions {
  int threads = 1;
};

struct ExactComplexityWitness {
  Perm sigma;
  std::vector<Perm> factors;
  CyclePattern pattern;
};

std::optional<ExactComplexityWitness> exact_complexity_iso_witness(const ColoredHypergraph& x,
                                                                   const ColoredHypergraph& y, int t,
                                                                   const ExactComplexityOptions& opt = {});
std::optional<Perm> exact_complexity_iso(const ColoredHypergraph& x, const ColoredHypergraph& y, int t,
                                         const ExactComplexityOptions& opt = {});

}  // namespace fptiso
