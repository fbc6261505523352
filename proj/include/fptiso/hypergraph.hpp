#pragma once

#include <compare>
#include <unordered_set>
#include <vector>

#include "fptiso/perm.hpp"

namespace fptiso {

struct DirectedEdge {
  int u = 0, v = 0, color = 0;
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

// Vertex-colored hypergraph on 0..n-1, optionally with colored directed edges.
// Hyperedges are kept sorted, and the hyperedge list itself is sorted, so two
// hypergraphs with the same edge set compare equal.
class ColoredHypergraph {
 public:
  ColoredHypergraph() = default;
  // colors defaults to all zero. Throws on out-of-range vertices, repeated
  // vertices inside a hyperedge, duplicate hyperedges or negative colors.
  ColoredHypergraph(int n, std::vector<std::vector<int>> hyperedges, std::vector<int> colors = {},
                    std::vector<DirectedEdge> directed = {});

  static ColoredHypergraph graph(int n, const std::vector<std::pair<int, int>>& edges, std::vector<int> colors = {});

  int n() const { return n_; }
  const std::vector<std::vector<int>>& hyperedges() const { return edges_; }
  const std::vector<int>& colors() const { return colors_; }
  int color(int v) const { return colors_[v]; }
  const std::vector<DirectedEdge>& directed() const { return directed_; }

  bool has_hyperedge(const std::vector<int>& sorted_edge) const { return edge_set_.count(sorted_edge) > 0; }
  bool has_directed(const DirectedEdge& e) const;
  // Vertices sharing a hyperedge with v, sorted.
  const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }
  // Hyperedges containing v (indices into hyperedges()).
  const std::vector<int>& incident(int v) const { return incident_[v]; }

  ColoredHypergraph with_colors(std::vector<int> colors) const;
  // Classes in increasing color order, each sorted.
  std::vector<std::vector<int>> color_classes() const;

  friend bool operator==(const ColoredHypergraph& a, const ColoredHypergraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.colors_ == b.colors_ && a.directed_ == b.directed_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> edges_;
  std::vector<int> colors_;
  std::vector<DirectedEdge> directed_;
  std::unordered_set<std::vector<int>, VecHash> edge_set_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<int>> incident_;
};

// p maps hyperedges of x onto hyperedges of y, colors of x onto the same
// colors in y, and directed edges of x onto directed edges of y.
bool is_isomorphism(const Perm& p, const ColoredHypergraph& x, const ColoredHypergraph& y);
inline bool is_automorphism(const Perm& p, const ColoredHypergraph& x) { return is_isomorphism(p, x, x); }

int max_hyperedge_size(const ColoredHypergraph& x);
int blue_degree(const ColoredHypergraph& x, int v, const std::vector<int>& blue);
// Vertex i of the result is vertex_set[i]; keeps hyperedges and directed edges
// lying entirely inside the set.
ColoredHypergraph induced(const ColoredHypergraph& x, const std::vector<int>& vertex_set);

bool is_b_bounded(const std::vector<std::vector<int>>& classes, int b);

}  // namespace fptiso
