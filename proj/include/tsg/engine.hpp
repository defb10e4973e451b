#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tsg/fixed_subgraph.hpp"
#include "tsg/graph.hpp"
#include "tsg/group.hpp"
#include "tsg/permutation.hpp"

namespace tsg {

enum class Rule { R1, R2, R3, R4, R5, R6, R7, R9 };
enum class Polarity { Pos, Neg };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
    case Rule::R6: return "R6";
    case Rule::R7: return "R7";
    case Rule::R9: return "R9";
  }
  return "?";
}

inline Rule rule_from_string(const std::string& s) {
  for (Rule r : {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R9})
    if (s == to_string(r)) return r;
  throw InputError("unknown rule '" + s + "'");
}

inline const char* to_string(Polarity p) { return p == Polarity::Pos ? "pos" : "neg"; }

// Why one polarity of one automorphism is excluded.
struct RuleTrace {
  Rule rule = Rule::R1;
  std::string variant;          // R6: "a" | "b" | "c"; R9: "vertex" | "edge"
  int step = 0;                 // order of derivation within the fixpoint
  int power = 0;                // R6, R9
  std::string source;           // R6: pi^k, R7: the conjugate it copies (cycle notation)
  std::vector<Label> path;      // R5
  Label vertex;                 // R9 vertex variant
  LabelPair edge;               // R9 edge variant
  std::string citation;

  bool operator==(const RuleTrace&) const = default;
};

struct ElementStatus {
  std::optional<RuleTrace> pos, neg;

  bool pos_open() const { return !pos; }
  bool neg_open() const { return !neg; }
  const std::optional<RuleTrace>& get(Polarity p) const { return p == Polarity::Pos ? pos : neg; }
  std::optional<RuleTrace>& get(Polarity p) { return p == Polarity::Pos ? pos : neg; }
};

namespace citation {
inline constexpr const char* R1 =
    "F does not embed in a circle, but an orientation-preserving finite-order realization fixes a circle or nothing";
inline constexpr const char* R2 =
    "F is nonplanar, but a finite-order realization fixes a circle, a sphere, two points or nothing";
inline constexpr const char* R3 = "odd order, but an orientation-reversing realization has even order";
inline constexpr const char* R4 =
    "F has more than two points and the order is not 2; an orientation-reversing realization fixing that much is a reflection";
inline constexpr const char* R5 =
    "a path joins two swapped vertices through unfixed vertices and unflipped edges, which an orientation-reversing realization cannot carry";
inline constexpr const char* R6a = "pi^k is not positively realizable, yet h^k would realize it positively";
inline constexpr const char* R6b = "k is odd and pi^k is not negatively realizable, yet h^k would reverse orientation";
inline constexpr const char* R6c =
    "k is even and pi^k is not positively realizable, yet h^k preserves orientation when h reverses it";
inline constexpr const char* R7 = "conjugate automorphisms are realized by conjugate homeomorphisms of the same embedding";
inline constexpr const char* R9 =
    "an orientation-preserving realization with nonempty fixed set fixes a circle C, and fix(h^k) is a circle containing C, so equals C; pi^k fixes more than pi";
}  // namespace citation

inline RuleTrace make_trace(Rule r, const char* cite) {
  RuleTrace t;
  t.rule = r;
  t.citation = cite;
  return t;
}

// ---- direct rules ----

inline std::optional<RuleTrace> rule_R1_s1(const FixedSubgraph& f) {
  if (embeds_in_s1(f)) return std::nullopt;
  return make_trace(Rule::R1, citation::R1);
}

inline std::optional<RuleTrace> rule_R2_planarity(const FixedSubgraph& f) {
  if (f_is_planar(f)) return std::nullopt;
  return make_trace(Rule::R2, citation::R2);
}

inline std::optional<RuleTrace> rule_R3_odd_order(const VertexPermutation& p) {
  if (p.order() % 2 == 0) return std::nullopt;
  return make_trace(Rule::R3, citation::R3);
}

inline std::optional<RuleTrace> rule_R4_order_two(const VertexPermutation& p, const FixedSubgraph& f) {
  if (!more_than_two_points(f) || p.order() == 2) return std::nullopt;
  return make_trace(Rule::R4, citation::R4);
}

inline bool flips(const VertexPermutation& p, int u, int v) { return p(u) == v && p(v) == u; }

// Shortest path between some swapped pair (a, p(a)) whose vertices are all
// unfixed and whose edges are not flipped. Pairs are tried in label order.
inline std::optional<std::vector<int>> find_path_witness(const SimpleGraph& g, const VertexPermutation& p) {
  const int n = g.order();
  const Bits unfixed = g.all_vertices() & ~p.fixed_points();
  std::vector<int> by_label(n);
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(), [&](int x, int y) { return g.label(x) < g.label(y); });
  for (int a : by_label) {
    const int b = p(a);
    if (b == a || p(b) != a || g.label(b) < g.label(a)) continue;
    std::vector<int> prev(n, -1);
    prev[a] = a;
    std::vector<int> q{a};
    for (std::size_t i = 0; i < q.size() && prev[b] < 0; ++i) {
      int x = q[i];
      for_each_bit(g.neighbours(x) & unfixed, [&](int y) {
        if (prev[y] >= 0 || flips(p, x, y)) return;
        prev[y] = x;
        q.push_back(y);
      });
    }
    if (prev[b] < 0) continue;
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }
  return std::nullopt;
}

inline bool has_interchanged_pair(const VertexPermutation& p) {
  for (int a = 0; a < p.size(); ++a)
    if (p(a) != a && p(p(a)) == a) return true;
  return false;
}

inline std::optional<RuleTrace> rule_R5_path(const SimpleGraph& g, const VertexPermutation& p,
                                             const FixedSubgraph& f) {
  if (!more_than_two_points(f)) return std::nullopt;
  auto w = find_path_witness(g, p);
  if (!w) return std::nullopt;
  auto t = make_trace(Rule::R5, citation::R5);
  for (int v : *w) t.path.push_back(g.label(v));
  return t;
}

inline std::optional<RuleTrace> rule_R9_axis(const SimpleGraph& g, const VertexPermutation& p,
                                             const FixedSubgraph& f) {
  if (f.empty()) return std::nullopt;
  const int o = p.order();
  const Bits fixed = p.fixed_points();
  VertexPermutation q = p;
  for (int k = 2; k < o; ++k) {
    q = p * q;  // p^k
    Bits extra = q.fixed_points() & ~fixed;
    if (extra) {
      auto t = make_trace(Rule::R9, citation::R9);
      t.variant = "vertex";
      t.power = k;
      t.vertex = g.label(std::countr_zero(extra));
      return t;
    }
    for (auto [u, v] : g.edge_indices()) {
      if (!flips(q, u, v)) continue;
      bool kept = (p(u) == u && p(v) == v) || flips(p, u, v);
      if (kept) continue;
      auto t = make_trace(Rule::R9, citation::R9);
      t.variant = "edge";
      t.power = k;
      t.edge = {g.label(u), g.label(v)};
      return t;
    }
  }
  return std::nullopt;
}

// ---- fixpoint ----

struct FixpointOptions {
  std::optional<unsigned> shuffle_seed;  // randomize element and rule order
};

struct Analysis {
  SimpleGraph graph;
  PermGroup group;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<std::vector<int>> powers;  // powers[i][k] = index of element_i^k, k < order
  std::vector<ElementStatus> status;
  int r7_firings = 0;
  int steps = 0;

  std::string cycles(int i) const { return to_cycle_string(group.element(i), graph); }
  bool identity(int i) const { return i == 0; }
};

namespace detail {

inline std::vector<std::vector<int>> power_table(const PermGroup& G) {
  std::vector<std::vector<int>> out(G.order());
  for (int i = 0; i < G.order(); ++i) {
    const auto& p = G.element(i);
    VertexPermutation q = VertexPermutation::identity(G.degree());
    do {
      out[i].push_back(G.index_of(q));
      q = p * q;
    } while (!q.is_identity());
  }
  return out;
}

}  // namespace detail

inline Analysis run_fixpoint(const SimpleGraph& g, PermGroup G, const FixpointOptions& opt = {}) {
  Analysis a;
  a.graph = g;
  a.group = std::move(G);
  a.classes = conjugacy_classes(a.group);
  a.class_of.assign(a.group.order(), -1);
  for (std::size_t c = 0; c < a.classes.size(); ++c)
    for (int i : a.classes[c]) a.class_of[i] = static_cast<int>(c);
  a.powers = detail::power_table(a.group);
  a.status.assign(a.group.order(), {});

  std::optional<std::mt19937> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed);
  std::vector<int> order(a.group.order() - 1);
  std::iota(order.begin(), order.end(), 1);
  auto shuffled = [&] {
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    return order;
  };
  auto assign = [&](int i, Polarity pol, RuleTrace t) {
    auto& slot = a.status[i].get(pol);
    if (slot) return false;
    t.step = ++a.steps;
    slot = std::move(t);
    return true;
  };

  // Direct rules.
  for (int i : shuffled()) {
    const auto& p = a.group.element(i);
    FixedSubgraph f = fixed_subgraph(g, p);
    std::vector<int> rules{1, 2, 3, 4, 5, 9};
    if (rng) std::shuffle(rules.begin(), rules.end(), *rng);
    for (int r : rules) {
      switch (r) {
        case 1:
          if (auto t = rule_R1_s1(f)) assign(i, Polarity::Pos, *t);
          break;
        case 2:
          if (auto t = rule_R2_planarity(f)) {
            assign(i, Polarity::Pos, *t);
            assign(i, Polarity::Neg, *t);
          }
          break;
        case 3:
          if (auto t = rule_R3_odd_order(p)) assign(i, Polarity::Neg, *t);
          break;
        case 4:
          if (auto t = rule_R4_order_two(p, f)) assign(i, Polarity::Neg, *t);
          break;
        case 5:
          if (auto t = rule_R5_path(g, p, f)) assign(i, Polarity::Neg, *t);
          break;
        case 9:
          if (auto t = rule_R9_axis(g, p, f)) assign(i, Polarity::Pos, *t);
          break;
      }
    }
  }

  // Powers to a fixpoint, then one conjugacy sweep; repeat while anything moves.
  while (true) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i : shuffled()) {
        const auto& pw = a.powers[i];
        const int o = static_cast<int>(pw.size());
        for (int k = 2; k < o; ++k) {
          const auto& sq = a.status[pw[k]];
          auto r6 = [&](const char* variant, const char* cite) {
            auto t = make_trace(Rule::R6, cite);
            t.variant = variant;
            t.power = k;
            t.source = a.cycles(pw[k]);
            return t;
          };
          if (sq.pos && !a.status[i].pos) changed |= assign(i, Polarity::Pos, r6("a", citation::R6a));
          if (k % 2 == 1 && sq.neg && !a.status[i].neg)
            changed |= assign(i, Polarity::Neg, r6("b", citation::R6b));
          if (k % 2 == 0 && sq.pos && !a.status[i].neg)
            changed |= assign(i, Polarity::Neg, r6("c", citation::R6c));
        }
      }
    }
    bool fired = false;
    for (const auto& cls : a.classes)
      for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
        int src = -1;
        for (int i : cls)
          if (a.status[i].get(pol)) src = i;
        if (src < 0) continue;
        for (int i : cls) {
          if (a.status[i].get(pol)) continue;
          auto t = make_trace(Rule::R7, citation::R7);
          t.source = a.cycles(src);
          assign(i, pol, t);
          ++a.r7_firings;
          fired = true;
        }
      }
    if (!fired) break;
  }
  return a;
}

inline Analysis run_fixpoint(const SimpleGraph& g, const FixpointOptions& opt = {}) {
  return run_fixpoint(g, automorphism_group(g), opt);
}

// ---- replay ----

// Re-derives one exclusion from its trace alone (plus earlier statuses for
// R6/R7, which must carry a smaller step).
inline bool replay(const Analysis& a, int i, Polarity pol, const RuleTrace& t) {
  const SimpleGraph& g = a.graph;
  if (i == 0) return false;  // identity never excluded
  const auto& p = a.group.element(i);
  const FixedSubgraph f = fixed_subgraph(g, p);
  auto earlier = [&](const std::string& src, Polarity sp) -> int {
    VertexPermutation q;
    try {
      q = parse_cycles(src, g);
    } catch (const InputError&) {
      return -1;
    }
    int j = a.group.index_of(q);
    if (j < 0) return -1;
    const auto& st = a.status[j].get(sp);
    return st && st->step < t.step ? j : -1;
  };
  switch (t.rule) {
    case Rule::R1: return pol == Polarity::Pos && !embeds_in_s1(f);
    case Rule::R2: return !f_is_planar(f);
    case Rule::R3: return pol == Polarity::Neg && p.order() % 2 == 1;
    case Rule::R4: return pol == Polarity::Neg && more_than_two_points(f) && p.order() != 2;
    case Rule::R5: {
      if (pol != Polarity::Neg || !more_than_two_points(f) || t.path.size() < 2) return false;
      std::vector<int> w;
      for (const auto& l : t.path) {
        auto v = g.find(l);
        if (!v) return false;
        w.push_back(*v);
      }
      if (!flips(p, w.front(), w.back())) return false;
      for (int v : w)
        if (p(v) == v) return false;
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (!g.adjacent(w[k], w[k + 1]) || flips(p, w[k], w[k + 1])) return false;
      return true;
    }
    case Rule::R6: {
      const int o = p.order();
      if (t.power < 2 || t.power >= o) return false;
      if (parse_cycles(t.source, g) != p.pow(t.power)) return false;
      if (t.variant == "a") return pol == Polarity::Pos && earlier(t.source, Polarity::Pos) >= 0;
      if (t.variant == "b")
        return pol == Polarity::Neg && t.power % 2 == 1 && earlier(t.source, Polarity::Neg) >= 0;
      if (t.variant == "c")
        return pol == Polarity::Neg && t.power % 2 == 0 && earlier(t.source, Polarity::Pos) >= 0;
      return false;
    }
    case Rule::R7: {
      int j = earlier(t.source, pol);
      return j >= 0 && a.class_of[j] == a.class_of[i];
    }
    case Rule::R9: {
      if (pol != Polarity::Pos || f.empty()) return false;
      const int o = p.order();
      if (t.power < 2 || t.power >= o) return false;
      const auto q = p.pow(t.power);
      if (t.variant == "vertex") {
        auto v = g.find(t.vertex);
        return v && q(*v) == *v && p(*v) != *v;
      }
      if (t.variant == "edge") {
        auto u = g.find(t.edge.first), v = g.find(t.edge.second);
        if (!u || !v || !g.adjacent(*u, *v) || !flips(q, *u, *v)) return false;
        bool kept = (p(*u) == *u && p(*v) == *v) || flips(p, *u, *v);
        return !kept;
      }
      return false;
    }
  }
  return false;
}

struct AuditResult {
  int checked = 0;
  std::vector<std::string> failures;
  bool clean() const { return failures.empty(); }
};

inline AuditResult audit(const Analysis& a) {
  AuditResult r;
  if (a.status[0].pos || a.status[0].neg) r.failures.push_back("identity carries an exclusion");
  for (int i = 1; i < a.group.order(); ++i)
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      const auto& t = a.status[i].get(pol);
      if (!t) continue;
      ++r.checked;
      if (!replay(a, i, pol, *t))
        r.failures.push_back(a.cycles(i) + " " + to_string(pol) + " " + to_string(t->rule) + t->variant);
    }
  return r;
}

// Exclusion pattern, for schedule comparisons.
inline std::vector<std::pair<bool, bool>> exclusion_pattern(const Analysis& a) {
  std::vector<std::pair<bool, bool>> out;
  for (const auto& s : a.status) out.emplace_back(bool(s.pos), bool(s.neg));
  return out;
}

inline bool class_uniform(const Analysis& a) {
  for (const auto& cls : a.classes)
    for (int i : cls)
      if (bool(a.status[i].pos) != bool(a.status[cls[0]].pos) ||
          bool(a.status[i].neg) != bool(a.status[cls[0]].neg))
        return false;
  return true;
}

// ---- certificates ----

struct UpperBounds {
  int allowed = 0;                    // pos-open nontrivial elements
  std::vector<PermGroup> subgroups;   // every subgroup inside pos-open ∪ {id}
  std::vector<PermGroup> maximal;     // maximal by inclusion
  std::vector<GroupType> types;       // nontrivial, deduplicated, largest first
};

inline UpperBounds positive_upper_bounds(const Analysis& a) {
  UpperBounds ub;
  std::vector<int> allowed{0};
  for (int i = 1; i < a.group.order(); ++i)
    if (a.status[i].pos_open()) allowed.push_back(i);
  ub.allowed = static_cast<int>(allowed.size()) - 1;
  ub.subgroups = subgroups_within(a.group, allowed);
  for (std::size_t i = 0; i < ub.subgroups.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < ub.subgroups.size() && maximal; ++j)
      if (j != i && ub.subgroups[j].order() > ub.subgroups[i].order() &&
          is_subgroup_of(ub.subgroups[i], ub.subgroups[j]))
        maximal = false;
    if (maximal) ub.maximal.push_back(ub.subgroups[i]);
  }
  for (const auto& h : ub.subgroups) {
    if (h.order() == 1) continue;
    GroupType t = identify_group_type(h, a.graph.vertices());
    if (std::find(ub.types.begin(), ub.types.end(), t) == ub.types.end()) ub.types.push_back(std::move(t));
  }
  std::sort(ub.types.begin(), ub.types.end());
  return ub;
}

enum class Verdict { Proved, Unknown };
inline const char* to_string(Verdict v) { return v == Verdict::Proved ? "Proved" : "Unknown"; }

struct ChiralityCertificate {
  std::string graph;
  Verdict verdict = Verdict::Unknown;
  struct Entry {
    std::string representative;
    int class_size = 0;
    std::optional<RuleTrace> neg;
  };
  std::vector<Entry> classes;         // nontrivial classes
  std::vector<std::string> surviving; // representatives whose neg is open
};

inline ChiralityCertificate intrinsically_chiral(const Analysis& a, const std::string& name) {
  ChiralityCertificate c;
  c.graph = name;
  for (std::size_t k = 1; k < a.classes.size(); ++k) {
    int rep = a.classes[k][0];
    c.classes.push_back({a.cycles(rep), static_cast<int>(a.classes[k].size()), a.status[rep].neg});
    for (int i : a.classes[k])
      if (a.status[i].neg_open()) {
        c.surviving.push_back(a.cycles(rep));
        break;
      }
  }
  c.verdict = c.surviving.empty() ? Verdict::Proved : Verdict::Unknown;
  return c;
}

}  // namespace tsg
