#include "fptiso/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fptiso {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<char> seen(n, 0);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("Perm: images are not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  return unchecked(std::move(img));
}

Perm Perm::unchecked(std::vector<int> images) {
  Perm p;
  p.images_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<char> used(n, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int u = c[i];
      if (u < 0 || u >= n) throw std::invalid_argument("Perm: cycle point out of range");
      if (used[u]) throw std::invalid_argument("Perm: cycles are not disjoint");
      used[u] = 1;
      img[u] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw DomainMismatch("compose: domain mismatch");
  std::vector<int> img(a.size());
  for (int u = 0; u < a.size(); ++u) img[u] = b[a[u]];
  return Perm::unchecked(std::move(img));
}

Perm inverse(const Perm& p) {
  std::vector<int> img(p.size());
  for (int u = 0; u < p.size(); ++u) img[p[u]] = u;
  return Perm::unchecked(std::move(img));
}

Perm conjugate(const Perm& p, const Perm& r) {
  if (p.size() != r.size()) throw DomainMismatch("conjugate: domain mismatch");
  std::vector<int> img(p.size());
  for (int u = 0; u < p.size(); ++u) img[r[u]] = r[p[u]];
  return Perm::unchecked(std::move(img));
}

std::vector<int> support(const Perm& p) {
  std::vector<int> s;
  for (int u = 0; u < p.size(); ++u)
    if (p[u] != u) s.push_back(u);
  return s;
}

int weight(const Perm& p) {
  int w = 0;
  for (int u = 0; u < p.size(); ++u) w += (p[u] != u);
  return w;
}

int cayley_complexity(const Perm& p) {
  return weight(p) - static_cast<int>(cycle_decomposition(p).size());
}

std::vector<std::vector<int>> cycle_decomposition(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(p.size(), 0);
  for (int u = 0; u < p.size(); ++u) {
    if (seen[u] || p[u] == u) continue;
    std::vector<int> c;
    for (int v = u; !seen[v]; v = p[v]) {
      seen[v] = 1;
      c.push_back(v);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

namespace {

std::vector<int> read_ints(std::string_view s) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back(std::stoi(std::string(s.substr(i, j - i))));
      i = j;
    } else if (s[i] == ' ' || s[i] == ',' || s[i] == '\t' || s[i] == '\n') {
      ++i;
    } else {
      throw std::invalid_argument("parse_perm: unexpected character '" + std::string(1, s[i]) + "'");
    }
  }
  return out;
}

}  // namespace

Perm parse_perm(std::string_view text, int n) {
  std::size_t b = text.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) throw std::invalid_argument("parse_perm: empty input");
  text = text.substr(b, text.find_last_not_of(" \t\n") - b + 1);
  if (text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("parse_perm: unterminated image list");
    std::vector<int> img = read_ints(text.substr(1, text.size() - 2));
    if (n >= 0 && static_cast<int>(img.size()) != n)
      throw DomainMismatch("parse_perm: image list length differs from domain size");
    return Perm(std::move(img));
  }
  if (n < 0) throw std::invalid_argument("parse_perm: cycle notation needs the domain size");
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("parse_perm: expected '('");
    std::size_t j = text.find(')', i);
    if (j == std::string_view::npos) throw std::invalid_argument("parse_perm: unbalanced parenthesis");
    std::vector<int> c = read_ints(text.substr(i + 1, j - i - 1));
    if (c.size() >= 2) cycles.push_back(std::move(c));
    i = j + 1;
  }
  return Perm::from_cycles(n, cycles);
}

std::string to_cycle_string(const Perm& p) {
  auto cycles = cycle_decomposition(p);
  if (cycles.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cycles) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

std::string to_image_string(const Perm& p) {
  std::ostringstream os;
  os << '[';
  for (int u = 0; u < p.size(); ++u) os << (u ? "," : "") << p[u];
  os << ']';
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fptiso
