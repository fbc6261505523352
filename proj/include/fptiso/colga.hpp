#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fptiso/exact_weight.hpp"
#include "fptiso/hypergraph.hpp"

namespace fptiso {

// A graph whose vertex colors are the current classes; `red` marks the red side.
// Dropped vertices were merged into a matched red class and are isolated.
struct ColGaState {
  ColoredHypergraph x;
  std::vector<char> red;
  std::vector<char> dropped;

  std::vector<int> blue_vertices() const;
  std::vector<std::vector<int>> red_classes() const;  // sorted by smallest vertex
};

// Initial state: colors are (side, color) pairs made dense. x must be a plain graph.
ColGaState colga_initial_state(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue);

// Stable 1-WL coloring from x's colors.
std::vector<int> color_refine(const ColoredHypergraph& x);
// Complements each class, and each pair of classes, where that lowers the edge count.
ColoredHypergraph local_complement(const ColoredHypergraph& x);

// Steps 1-3 until no red class has more than k blue neighbors per vertex.
ColGaState fix_heavy_classes(ColGaState s, int k);

struct ContractionResult {
  ColGaState state;
  bool restart = false;   // a class was split into orbits; run the refinement again
  bool lossless = true;   // false if some component cannot be contracted without changing the blue action
  std::string reason;
};
ContractionResult contract_matching_components(const ColGaState& s);

// Red vertices become hyperedges on Blue plus one new singleton-colored vertex per
// red class. The first |blue_vertices()| indices are the blue vertices in order.
struct EncodedInstance {
  ColoredHypergraph h;
  std::vector<int> blue;  // h index -> original vertex
};
EncodedInstance encode_hyperedges(const ColGaState& s);

// Order of the group of blue permutations that extend to color-preserving automorphisms.
BigInt blue_projection_order(const ColGaState& s);
BigInt blue_projection_order(const EncodedInstance& e);

struct ColGaTrace {
  ColGaState initial;
  ColGaState step1;  // input after the first refinement, before any complementation
  ColGaState step3;  // stable after fixing heavy classes
  ColGaState step4;
  std::optional<EncodedInstance> step5;
  int restarts = 0;
  bool fallback = false;
  std::string fallback_reason;
};

struct ColGaOptions {
  int threads = 1;
};

std::optional<Perm> colga(const ColoredHypergraph& x, const std::vector<int>& red, const std::vector<int>& blue, int k,
                          const ColGaOptions& opt = {}, ColGaTrace* trace = nullptr);

}  // namespace fptiso
