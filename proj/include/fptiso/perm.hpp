#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fptiso {

// Permutations act on the right: u^(ab) = (u^a)^b, so compose(a, b) applies a
// first and then b. Every solver in the library uses this convention.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  // Skips the bijection check; for images produced by trusted code.
  static Perm unchecked(std::vector<int> images);
  // Builds a permutation of {0..n-1} from disjoint cycles.
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator[](int u) const { return images_[u]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;

  friend bool operator==(const Perm& a, const Perm& b) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) = default;

 private:
  std::vector<int> images_;
};

class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
// r^-1 p r; the cycles of the result are the r-images of the cycles of p.
Perm conjugate(const Perm& p, const Perm& r);

std::vector<int> support(const Perm& p);
int weight(const Perm& p);
// Minimum number of transpositions whose product is p.
int cayley_complexity(const Perm& p);

// Nontrivial cycles, each starting at its smallest point, sorted by that point.
std::vector<std::vector<int>> cycle_decomposition(const Perm& p);

// Accepts "(0 1 2)(4 5)", "()" for the identity, or an image list "[1,2,0]".
// Cycle notation needs n; an image list fixes n itself (n < 0 means "infer").
Perm parse_perm(std::string_view text, int n = -1);
std::string to_cycle_string(const Perm& p);
std::string to_image_string(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace fptiso
