#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tsg/graph.hpp"

namespace tsg {

// Bijection on vertex indices 0..n-1 of some graph. Composition is
// right-to-left: (p * q)(x) = p(q(x)).
class VertexPermutation {
 public:
  VertexPermutation() = default;
  explicit VertexPermutation(std::vector<std::uint8_t> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (auto x : img_) {
      if (x >= img_.size() || seen[x]) throw InputError("permutation images are not a bijection");
      seen[x] = 1;
    }
  }
  static VertexPermutation from_ints(const std::vector<int>& images) {
    return VertexPermutation(std::vector<std::uint8_t>(images.begin(), images.end()));
  }
  static VertexPermutation identity(int n) {
    std::vector<std::uint8_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    VertexPermutation p;
    p.img_ = std::move(v);
    return p;
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  VertexPermutation operator*(const VertexPermutation& q) const {
    VertexPermutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[q.img_[i]];
    return r;
  }

  VertexPermutation inverse() const {
    VertexPermutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  // lcm of cycle lengths
  int order() const {
    long long o = 1;
    for (int len : cycle_lengths()) o = std::lcm(o, static_cast<long long>(len));
    return static_cast<int>(o);
  }

  VertexPermutation pow(long long k) const {
    const long long o = order();
    long long e = ((k % o) + o) % o;
    VertexPermutation r = identity(size());
    VertexPermutation b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  VertexPermutation conjugate_by(const VertexPermutation& s) const { return s * (*this) * s.inverse(); }

  Bits fixed_points() const {
    Bits b = 0;
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] == i) b |= bit(static_cast<int>(i));
    return b;
  }
  int moved_count() const { return size() - popcount(fixed_points()); }

  // Nontrivial cycles, each starting at its smallest element, ordered by that element.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<int> c;
      for (int x = i; !seen[x]; x = img_[x]) {
        seen[x] = 1;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  // All cycle lengths including fixed points, descending.
  std::vector<int> cycle_type() const {
    auto t = cycle_lengths();
    std::sort(t.rbegin(), t.rend());
    return t;
  }

  bool operator==(const VertexPermutation& o) const { return img_ == o.img_; }
  bool operator<(const VertexPermutation& o) const { return img_ < o.img_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : img_) h = (h ^ x) * 1099511628211ULL;
    return h;
  }

 private:
  std::vector<int> cycle_lengths() const {
    std::vector<int> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int x = i; !seen[x]; x = img_[x]) {
        seen[x] = 1;
        ++len;
      }
      out.push_back(len);
    }
    return out;
  }

  std::vector<std::uint8_t> img_;
};

struct PermutationHash {
  std::size_t operator()(const VertexPermutation& p) const { return p.hash(); }
};

inline bool single_char_labels(const std::vector<Label>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const Label& l) { return l.size() == 1; });
}

// Cycle notation: "(bcd)(fgh)" for single-character labels, "(v1 v2)(v3 v4 v5)"
// otherwise; identity is "()".
inline std::string to_cycle_string(const VertexPermutation& p, const std::vector<Label>& labels) {
  auto cyc = p.cycles();
  if (cyc.empty()) return "()";
  // Each cycle starts at its least label; cycles ordered by that label.
  for (auto& c : cyc)
    std::rotate(c.begin(),
                std::min_element(c.begin(), c.end(), [&](int a, int b) { return labels[a] < labels[b]; }),
                c.end());
  std::sort(cyc.begin(), cyc.end(), [&](const auto& a, const auto& b) { return labels[a[0]] < labels[b[0]]; });
  const bool compact = single_char_labels(labels);
  std::string s;
  for (const auto& c : cyc) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i && !compact) s += ' ';
      s += labels[c[i]];
    }
    s += ')';
  }
  return s;
}

inline std::string to_cycle_string(const VertexPermutation& p, const SimpleGraph& g) {
  return to_cycle_string(p, g.vertices());
}

// Inverse of to_cycle_string. Inside a cycle, labels are separated by
// whitespace or commas; a cycle without separators is read one character
// per label.
inline VertexPermutation parse_cycles(const std::string& text, const SimpleGraph& g) {
  std::vector<int> img(g.order());
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(g.order(), 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("cycle notation '" + text + "': " + why);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '(' at offset " + std::to_string(i));
    auto close = text.find(')', i);
    if (close == std::string::npos) fail("unclosed cycle");
    std::string body = text.substr(i + 1, close - i - 1);
    i = close + 1;
    std::vector<Label> toks;
    bool separated = body.find_first_of(" ,\t") != std::string::npos;
    if (separated) {
      std::string cur;
      for (char ch : body) {
        if (ch == ' ' || ch == ',' || ch == '\t') {
          if (!cur.empty()) toks.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      if (!cur.empty()) toks.push_back(cur);
    } else if (g.contains(body) && !single_char_labels(g.vertices())) {
      toks.push_back(body);
    } else {
      for (char ch : body) toks.emplace_back(1, ch);
    }
    std::vector<int> idx;
    for (const auto& t : toks) {
      auto v = g.find(t);
      if (!v) fail("unknown vertex '" + t + "'");
      if (used[*v]) fail("vertex '" + t + "' appears twice");
      used[*v] = 1;
      idx.push_back(*v);
    }
    for (std::size_t k = 0; k < idx.size(); ++k) img[idx[k]] = idx[(k + 1) % idx.size()];
  }
  return VertexPermutation::from_ints(img);
}

inline bool is_automorphism(const SimpleGraph& g, const VertexPermutation& p) {
  if (p.size() != g.order()) return false;
  for (auto [u, v] : g.edge_indices())
    if (!g.adjacent(p(u), p(v))) return false;
  return true;
}

}  // namespace tsg
