#include "fptiso/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fptiso {

std::size_t VecHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull ^ v.size();
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

ColoredHypergraph::ColoredHypergraph(int n, std::vector<std::vector<int>> hyperedges, std::vector<int> colors,
                                     std::vector<DirectedEdge> directed)
    : n_(n), edges_(std::move(hyperedges)), colors_(std::move(colors)), directed_(std::move(directed)) {
  if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
  if (colors_.empty()) colors_.assign(n, 0);
  if (static_cast<int>(colors_.size()) != n) throw std::invalid_argument("hypergraph: colors has wrong length");
  for (int c : colors_)
    if (c < 0) throw std::invalid_argument("hypergraph: negative color");
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("hypergraph: hyperedge vertex out of range");
      if (i && e[i] == e[i - 1]) throw std::invalid_argument("hypergraph: repeated vertex in hyperedge");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("hypergraph: duplicate hyperedge");
  for (const auto& d : directed_)
    if (d.u < 0 || d.u >= n || d.v < 0 || d.v >= n || d.color < 0)
      throw std::invalid_argument("hypergraph: bad directed edge");
  std::sort(directed_.begin(), directed_.end());
  directed_.erase(std::unique(directed_.begin(), directed_.end()), directed_.end());

  edge_set_.insert(edges_.begin(), edges_.end());
  nbrs_.assign(n, {});
  incident_.assign(n, {});
  std::vector<std::set<int>> nb(n);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    for (int u : edges_[i]) {
      incident_[u].push_back(static_cast<int>(i));
      for (int w : edges_[i])
        if (w != u) nb[u].insert(w);
    }
  for (int u = 0; u < n; ++u) nbrs_[u].assign(nb[u].begin(), nb[u].end());
}

ColoredHypergraph ColoredHypergraph::graph(int n, const std::vector<std::pair<int, int>>& edges,
                                           std::vector<int> colors) {
  std::vector<std::vector<int>> he;
  for (auto [a, b] : edges) he.push_back({a, b});
  return ColoredHypergraph(n, std::move(he), std::move(colors));
}

bool ColoredHypergraph::has_directed(const DirectedEdge& e) const {
  return std::binary_search(directed_.begin(), directed_.end(), e);
}

ColoredHypergraph ColoredHypergraph::with_colors(std::vector<int> colors) const {
  return ColoredHypergraph(n_, edges_, std::move(colors), directed_);
}

std::vector<std::vector<int>> ColoredHypergraph::color_classes() const {
  std::map<int, std::vector<int>> cls;
  for (int u = 0; u < n_; ++u) cls[colors_[u]].push_back(u);
  std::vector<std::vector<int>> out;
  for (auto& [c, vs] : cls) out.push_back(std::move(vs));
  return out;
}

bool is_isomorphism(const Perm& p, const ColoredHypergraph& x, const ColoredHypergraph& y) {
  if (p.size() != x.n() || x.n() != y.n()) throw DomainMismatch("is_isomorphism: domain mismatch");
  if (x.hyperedges().size() != y.hyperedges().size() || x.directed().size() != y.directed().size()) return false;
  for (int u = 0; u < x.n(); ++u)
    if (x.color(u) != y.color(p[u])) return false;
  std::vector<int> img;
  for (const auto& e : x.hyperedges()) {
    img.clear();
    for (int u : e) img.push_back(p[u]);
    std::sort(img.begin(), img.end());
    if (!y.has_hyperedge(img)) return false;
  }
  for (const auto& d : x.directed())
    if (!y.has_directed({p[d.u], p[d.v], d.color})) return false;
  return true;
}

int max_hyperedge_size(const ColoredHypergraph& x) {
  std::size_t d = 0;
  for (const auto& e : x.hyperedges()) d = std::max(d, e.size());
  return static_cast<int>(d);
}

int blue_degree(const ColoredHypergraph& x, int v, const std::vector<int>& blue) {
  std::vector<char> is_blue(x.n(), 0);
  for (int b : blue) is_blue[b] = 1;
  int d = 0;
  for (int w : x.neighbors(v)) d += is_blue[w];
  return d;
}

ColoredHypergraph induced(const ColoredHypergraph& x, const std::vector<int>& vertex_set) {
  std::vector<int> index(x.n(), -1);
  std::vector<int> colors;
  for (std::size_t i = 0; i < vertex_set.size(); ++i) {
    if (index[vertex_set[i]] >= 0) throw std::invalid_argument("induced: repeated vertex");
    index[vertex_set[i]] = static_cast<int>(i);
    colors.push_back(x.color(vertex_set[i]));
  }
  std::vector<std::vector<int>> edges;
  for (const auto& e : x.hyperedges()) {
    std::vector<int> img;
    for (int u : e) {
      if (index[u] < 0) break;
      img.push_back(index[u]);
    }
    if (img.size() == e.size()) edges.push_back(std::move(img));
  }
  std::vector<DirectedEdge> dir;
  for (const auto& d : x.directed())
    if (index[d.u] >= 0 && index[d.v] >= 0) dir.push_back({index[d.u], index[d.v], d.color});
  return ColoredHypergraph(static_cast<int>(vertex_set.size()), std::move(edges), std::move(colors), std::move(dir));
}

bool is_b_bounded(const std::vector<std::vector<int>>& classes, int b) {
  return std::all_of(classes.begin(), classes.end(), [b](const auto& c) { return static_cast<int>(c.size()) <= b; });
}

}  // namespace fptiso
