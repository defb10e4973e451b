#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tsg/canonical.hpp"
#include "tsg/graph.hpp"
#include "tsg/permutation.hpp"

namespace tsg {

// Finite permutation group stored by its full element list, sorted
// lexicographically by image vector (so the identity is element 0).
class PermGroup {
 public:
  PermGroup() = default;

  PermGroup(int degree, std::vector<VertexPermutation> elements,
            std::vector<VertexPermutation> generators = {})
      : degree_(degree), elems_(std::move(elements)), gens_(std::move(generators)) {
    elems_.push_back(VertexPermutation::identity(degree_));
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    index_.reserve(elems_.size() * 2);
    for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], static_cast<int>(i));
    std::erase_if(gens_, [](const VertexPermutation& g) { return g.is_identity(); });
    if (gens_.empty() && elems_.size() > 1) gens_ = greedy_generators();
  }

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const std::vector<VertexPermutation>& elements() const { return elems_; }
  const VertexPermutation& element(int i) const { return elems_.at(i); }
  const std::vector<VertexPermutation>& generators() const { return gens_; }

  int index_of(const VertexPermutation& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const VertexPermutation& p) const { return index_.count(p) != 0; }

  bool is_abelian() const {
    for (const auto& a : gens_)
      for (const auto& b : gens_)
        if (a * b != b * a) return false;
    return true;
  }

  bool operator==(const PermGroup& o) const { return elems_ == o.elems_; }

 private:
  std::vector<VertexPermutation> greedy_generators() const;

  int degree_ = 0;
  std::vector<VertexPermutation> elems_;
  std::vector<VertexPermutation> gens_;
  std::unordered_map<VertexPermutation, int, PermutationHash> index_;
};

// Closure of gens under composition. All gens must have the given degree.
inline PermGroup generated_subgroup(int degree, const std::vector<VertexPermutation>& gens) {
  std::vector<VertexPermutation> gs;
  for (const auto& g : gens) {
    if (g.size() != degree) throw InputError("generated_subgroup: generator degree mismatch");
    if (!g.is_identity()) gs.push_back(g);
  }
  std::unordered_set<VertexPermutation, PermutationHash> seen;
  std::vector<VertexPermutation> list{VertexPermutation::identity(degree)};
  seen.insert(list[0]);
  for (std::size_t i = 0; i < list.size(); ++i)
    for (const auto& g : gs) {
      auto y = g * list[i];
      if (seen.insert(y).second) list.push_back(std::move(y));
    }
  if (gs.empty()) return PermGroup(degree, std::move(list), {});
  return PermGroup(degree, std::move(list), gs);
}

inline std::vector<VertexPermutation> PermGroup::greedy_generators() const {
  std::vector<VertexPermutation> gens;
  std::unordered_set<VertexPermutation, PermutationHash> span{VertexPermutation::identity(degree_)};
  // Try high-order elements first to keep the set short.
  std::vector<const VertexPermutation*> cand;
  for (const auto& e : elems_) cand.push_back(&e);
  std::stable_sort(cand.begin(), cand.end(),
                   [](auto* a, auto* b) { return a->order() > b->order(); });
  for (auto* e : cand) {
    if (span.count(*e)) continue;
    gens.push_back(*e);
    std::vector<VertexPermutation> list(span.begin(), span.end());
    for (std::size_t i = 0; i < list.size(); ++i)
      for (const auto& g : gens) {
        auto y = g * list[i];
        if (span.insert(y).second) list.push_back(std::move(y));
      }
    if (span.size() == elems_.size()) break;
  }
  return gens;
}

namespace detail {

// Enumerates all automorphisms by backtracking over a BFS vertex order,
// candidates restricted to equal refined colour and consistent adjacency.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const SimpleGraph& g) : g_(g), n_(g.order()) {
    colour_ = initial_colours(g_);
    refine(g_, colour_);
    std::vector<char> placed(n_, 0);
    for (int s = 0; s < n_; ++s) {
      if (placed[s]) continue;
      std::vector<int> q{s};
      placed[s] = 1;
      for (std::size_t i = 0; i < q.size(); ++i)
        for_each_bit(g_.neighbours(q[i]), [&](int w) {
          if (!placed[w]) {
            placed[w] = 1;
            q.push_back(w);
          }
        });
      order_.insert(order_.end(), q.begin(), q.end());
    }
    img_.assign(n_, -1);
  }

  std::vector<VertexPermutation> run() {
    out_.clear();
    used_ = 0;
    extend(0);
    return std::move(out_);
  }

 private:
  void extend(int depth) {
    if (depth == n_) {
      out_.push_back(VertexPermutation::from_ints(img_));
      return;
    }
    const int v = order_[depth];
    Bits cand = g_.all_vertices() & ~used_;
    // An earlier-mapped neighbour pins the candidate to its image's neighbourhood.
    for (int d = 0; d < depth; ++d) {
      int u = order_[d];
      if (g_.adjacent(u, v)) cand &= g_.neighbours(img_[u]);
      else cand &= ~g_.neighbours(img_[u]);
    }
    for_each_bit(cand, [&](int w) {
      if (colour_[w] != colour_[v]) return;
      img_[v] = w;
      used_ |= bit(w);
      extend(depth + 1);
      used_ &= ~bit(w);
      img_[v] = -1;
    });
  }

  const SimpleGraph& g_;
  int n_;
  std::vector<int> colour_, order_, img_;
  Bits used_ = 0;
  std::vector<VertexPermutation> out_;
};

}  // namespace detail

inline PermGroup automorphism_group(const SimpleGraph& g) {
  if (g.order() > 255) throw InputError("automorphism_group: graph too large");
  return PermGroup(g.order(), detail::AutomorphismSearch(g).run());
}

// Orbits under conjugation. Identity class first, then by smallest member;
// members sorted by element index.
inline std::vector<std::vector<int>> conjugacy_classes(const PermGroup& G) {
  std::vector<int> cls(G.order(), -1);
  std::vector<std::vector<int>> out;
  std::vector<VertexPermutation> gi;
  for (const auto& s : G.generators()) gi.push_back(s.inverse());
  for (int i = 0; i < G.order(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members{i};
    cls[i] = id;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto& x = G.element(members[k]);
      for (std::size_t s = 0; s < gi.size(); ++s) {
        int j = G.index_of(G.generators()[s] * x * gi[s]);
        if (cls[j] < 0) {
          cls[j] = id;
          members.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline constexpr int kUnrestrictedSubgroupLimit = 400;

// All subgroups H of G with H contained in `allowed` (element indices of G;
// must include the identity, index 0). Built from cyclic subgroups by
// repeatedly adjoining one allowed element; closures leaving `allowed`
// are abandoned. Result ordered by (order, element indices).
inline std::vector<PermGroup> subgroups_within(const PermGroup& G, std::vector<int> allowed) {
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.empty() || allowed.front() != 0)
    throw InputError("subgroups_within: allowed set must contain the identity");
  if (allowed.back() >= G.order()) throw InputError("subgroups_within: element index out of range");
  const int m = static_cast<int>(allowed.size());
  if (m == G.order() && G.order() > kUnrestrictedSubgroupLimit)
    throw InputError("subgroups_within: unrestricted search refused for group of order " +
                     std::to_string(G.order()));

  std::vector<int> local(G.order(), -1);
  for (int i = 0; i < m; ++i) local[allowed[i]] = i;
  std::vector<std::int16_t> mul(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int gi = G.index_of(G.element(allowed[a]) * G.element(allowed[b]));
      mul[static_cast<std::size_t>(a) * m + b] = static_cast<std::int16_t>(local[gi]);
    }

  const int words = (m + 63) / 64;
  struct Sub {
    std::vector<Bits> mask;
    std::vector<int> elems;
    std::vector<int> gens;
  };
  struct MaskHash {
    std::size_t operator()(const std::vector<Bits>& v) const {
      std::size_t h = 0;
      for (auto w : v) h = h * 1000003ULL ^ std::hash<Bits>{}(w);
      return h;
    }
  };

  // Closure of base ∪ {x} inside allowed, or nullopt.
  auto close = [&](const Sub* base, int x) -> std::optional<Sub> {
    Sub s;
    s.mask.assign(words, 0);
    if (base) {
      s.mask = base->mask;
      s.elems = base->elems;
      s.gens = base->gens;
    } else {
      s.mask[0] |= 1;
      s.elems.push_back(0);
    }
    s.gens.push_back(x);
    for (std::size_t i = 0; i < s.elems.size(); ++i)
      for (int g : s.gens) {
        int y = mul[static_cast<std::size_t>(g) * m + s.elems[i]];
        if (y < 0) return std::nullopt;
        Bits& w = s.mask[y >> 6];
        if (!((w >> (y & 63)) & 1U)) {
          w |= bit(y & 63);
          s.elems.push_back(y);
        }
      }
    return s;
  };

  std::vector<Sub> all;
  std::unordered_set<std::vector<Bits>, MaskHash> seen;
  {
    Sub triv;
    triv.mask.assign(words, 0);
    triv.mask[0] = 1;
    triv.elems = {0};
    seen.insert(triv.mask);
    all.push_back(std::move(triv));
  }
  std::vector<std::size_t> frontier;
  for (int x = 1; x < m; ++x)
    if (auto s = close(nullptr, x); s && seen.insert(s->mask).second) {
      frontier.push_back(all.size());
      all.push_back(std::move(*s));
    }
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t fi : frontier) {
      for (int x = 1; x < m; ++x) {
        if ((all[fi].mask[x >> 6] >> (x & 63)) & 1U) continue;
        auto s = close(&all[fi], x);
        if (s && seen.insert(s->mask).second) {
          next.push_back(all.size());
          all.push_back(std::move(*s));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<PermGroup> out;
  out.reserve(all.size());
  for (const auto& s : all) {
    std::vector<VertexPermutation> el, gens;
    for (int e : s.elems) el.push_back(G.element(allowed[e]));
    for (int g : s.gens) gens.push_back(G.element(allowed[g]));
    out.emplace_back(G.degree(), std::move(el), std::move(gens));
  }
  std::sort(out.begin(), out.end(), [&](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

inline std::vector<PermGroup> subgroups_within(const PermGroup& G,
                                               const std::vector<VertexPermutation>& allowed) {
  std::vector<int> idx;
  for (const auto& p : allowed) {
    int i = G.index_of(p);
    if (i < 0) throw InputError("subgroups_within: allowed element not in group");
    idx.push_back(i);
  }
  return subgroups_within(G, idx);
}

inline bool is_subgroup_of(const PermGroup& H, const PermGroup& G) {
  return std::all_of(H.elements().begin(), H.elements().end(),
                     [&](const VertexPermutation& p) { return G.contains(p); });
}

// ---- small-group identification ----

struct GroupType {
  int order = 1;
  bool abelian = true;
  std::map<int, int> census;  // element order -> count
  std::string name;           // e.g. "Z3", "D6", "S4", "Z7:Z3"; empty when unrecognized
  std::vector<std::string> generators;

  bool recognized() const { return !name.empty(); }

  std::string census_string() const {
    std::string s;
    for (auto [o, c] : census) {
      if (!s.empty()) s += ' ';
      s += std::to_string(o);
      if (c != 1) s += "^" + std::to_string(c);
    }
    return s;
  }

  std::string descriptor() const {
    if (recognized()) return name;
    return "unrecognized(order " + std::to_string(order) + (abelian ? ", abelian" : ", nonabelian") +
           "; orders " + census_string() + ")";
  }

  // Types are compared by isomorphism invariants.
  bool operator==(const GroupType& o) const {
    if (recognized() || o.recognized()) return name == o.name;
    return order == o.order && abelian == o.abelian && census == o.census;
  }
  bool operator<(const GroupType& o) const {
    if (order != o.order) return order > o.order;
    return descriptor() < o.descriptor();
  }
};

namespace detail {

inline long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Element-order census of S_n.
inline std::map<int, int> symmetric_census(int n) {
  std::map<int, int> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      long long denom = 1, ord = 1;
      std::map<int, int> mult;
      for (int p : parts) ++mult[p];
      for (auto [k, c] : mult) {
        for (int i = 0; i < c; ++i) denom *= k;
        denom *= factorial(c);
        ord = std::lcm(ord, static_cast<long long>(k));
      }
      out[static_cast<int>(ord)] += static_cast<int>(factorial(n) / denom);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace detail

inline GroupType identify_group_type(const PermGroup& G, const std::vector<Label>& labels = {}) {
  GroupType t;
  t.order = G.order();
  t.abelian = G.is_abelian();
  std::vector<int> ord(G.order());
  for (int i = 0; i < G.order(); ++i) {
    ord[i] = G.element(i).order();
    ++t.census[ord[i]];
  }
  std::vector<Label> lab = labels;
  if (lab.empty())
    for (int i = 0; i < G.degree(); ++i) lab.push_back(std::to_string(i));
  for (const auto& g : G.generators()) t.generators.push_back(to_cycle_string(g, lab));

  const int n = t.order;
  if (n == 1) {
    t.name = "trivial";
    return t;
  }
  if (t.census.count(n)) {
    t.name = "Z" + std::to_string(n);
    return t;
  }
  if (n == 4 && t.abelian) {
    t.name = "D2";
    return t;
  }
  for (int k = 4; k <= 8; ++k)
    if (detail::factorial(k) == n && t.census == detail::symmetric_census(k)) {
      t.name = "S" + std::to_string(k);
      return t;
    }
  if (!t.abelian && n % 2 == 0 && n >= 6) {
    const int half = n / 2;
    for (int r = 0; r < n; ++r) {
      if (ord[r] != half) continue;
      const auto& R = G.element(r);
      const auto Rinv = R.inverse();
      std::unordered_set<VertexPermutation, PermutationHash> cyc;
      for (int k = 0; k < half; ++k) cyc.insert(R.pow(k));
      for (int m = 0; m < n; ++m) {
        if (ord[m] != 2) continue;
        const auto& M = G.element(m);
        if (cyc.count(M)) continue;
        if (M * R * M == Rinv) {
          t.name = "D" + std::to_string(half);
          return t;
        }
      }
      // In D_k (k >= 3) every element of order k is a rotation generator, so one r decides.
      break;
    }
  }
  if (n == 21 && !t.abelian) {
    t.name = "Z7:Z3";
    return t;
  }
  return t;
}

}  // namespace tsg
