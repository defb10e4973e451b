#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tsg/canonical.hpp"
#include "tsg/graph.hpp"

namespace tsg {

enum class MoveKind { NablaY, YNabla };

inline const char* to_string(MoveKind k) { return k == MoveKind::NablaY ? "nabla-Y" : "Y-nabla"; }

inline MoveKind move_kind_from_string(const std::string& s) {
  if (s == "nabla-Y") return MoveKind::NablaY;
  if (s == "Y-nabla") return MoveKind::YNabla;
  throw InputError("unknown move kind '" + s + "'");
}

struct MoveRecord {
  MoveKind kind = MoveKind::NablaY;
  std::vector<Label> site;  // triangle corners, or the Y vertex
  Label new_label;          // nabla-Y only
  std::string source_fingerprint;
  std::string target_fingerprint;

  bool operator==(const MoveRecord&) const = default;
};

// Replace triangle t by a new vertex joined to its corners.
inline SimpleGraph nabla_y(const SimpleGraph& g, const std::array<Label, 3>& t, const Label& new_label) {
  if (g.contains(new_label)) throw InputError("nabla_y: label '" + new_label + "' already in use");
  int a = g.index(t[0]), b = g.index(t[1]), c = g.index(t[2]);
  if (a == b || b == c || a == c || !g.adjacent(a, b) || !g.adjacent(b, c) || !g.adjacent(a, c))
    throw MoveError("nabla_y: {" + t[0] + "," + t[1] + "," + t[2] + "} is not a triangle");
  auto vs = g.vertices();
  vs.push_back(new_label);
  const int x = g.order();
  std::vector<std::pair<int, int>> es;
  auto in_t = [&](int v) { return v == a || v == b || v == c; };
  for (auto [u, v] : g.edge_indices())
    if (!(in_t(u) && in_t(v))) es.emplace_back(u, v);
  es.emplace_back(a, x);
  es.emplace_back(b, x);
  es.emplace_back(c, x);
  return SimpleGraph(std::move(vs), es);
}

// Delete degree-3 vertex v and join its neighbours pairwise.
inline SimpleGraph y_nabla(const SimpleGraph& g, const Label& v) {
  const int x = g.index(v);
  if (g.degree(x) != 3)
    throw MoveError("y_nabla: vertex '" + v + "' has degree " + std::to_string(g.degree(x)) + ", not 3");
  std::vector<int> nb;
  for_each_bit(g.neighbours(x), [&](int w) { nb.push_back(w); });
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (g.adjacent(nb[i], nb[j]))
        throw MoveError("y_nabla: neighbours '" + g.label(nb[i]) + "' and '" + g.label(nb[j]) +
                        "' of '" + v + "' are adjacent");
  std::vector<Label> vs;
  std::vector<int> remap(g.order(), -1);
  for (int u = 0; u < g.order(); ++u)
    if (u != x) {
      remap[u] = static_cast<int>(vs.size());
      vs.push_back(g.label(u));
    }
  std::vector<std::pair<int, int>> es;
  for (auto [u, w] : g.edge_indices())
    if (u != x && w != x) es.emplace_back(remap[u], remap[w]);
  es.emplace_back(remap[nb[0]], remap[nb[1]]);
  es.emplace_back(remap[nb[0]], remap[nb[2]]);
  es.emplace_back(remap[nb[1]], remap[nb[2]]);
  return SimpleGraph(std::move(vs), es);
}

inline std::vector<std::array<int, 3>> triangles(const SimpleGraph& g) {
  std::vector<std::array<int, 3>> out;
  for (auto [u, v] : g.edge_indices())
    for_each_bit(g.neighbours(u) & g.neighbours(v) & ~((bit(v) << 1) - 1),
                 [&](int w) { out.push_back({u, v, w}); });
  return out;
}

// Vertices where y_nabla is legal.
inline std::vector<int> y_sites(const SimpleGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) != 3) continue;
    Bits nb = g.neighbours(v);
    bool independent = true;
    for_each_bit(nb, [&](int w) {
      if (g.neighbours(w) & nb) independent = false;
    });
    if (independent) out.push_back(v);
  }
  return out;
}

// First unused single lowercase letter, then v1, v2, ...
inline Label fresh_label(const SimpleGraph& g) {
  for (char c = 'a'; c <= 'z'; ++c)
    if (!g.contains(std::string(1, c))) return std::string(1, c);
  for (int i = 1;; ++i)
    if (!g.contains("v" + std::to_string(i))) return "v" + std::to_string(i);
}

struct FamilyMember {
  std::string name;
  SimpleGraph graph;
  std::string fingerprint;
  std::vector<MoveRecord> provenance;  // moves from the seed, in order
};

struct FamilyArrow {
  std::string from, to;
  MoveKind kind;
  auto operator<=>(const FamilyArrow&) const = default;
};

struct FamilyCatalog {
  std::vector<FamilyMember> members;
  std::set<FamilyArrow> adjacency;

  const FamilyMember* find(const std::string& name) const {
    for (const auto& m : members)
      if (m.name == name) return &m;
    return nullptr;
  }
  const FamilyMember& at(const std::string& name) const {
    if (auto* m = find(name)) return *m;
    throw InputError("unknown family member '" + name + "'");
  }
  const FamilyMember* find_fingerprint(const std::string& fp) const {
    for (const auto& m : members)
      if (m.fingerprint == fp) return &m;
    return nullptr;
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& m : members) out.push_back(m.name);
    return out;
  }
  std::size_t size() const { return members.size(); }
};

// Stable short name derived from a fingerprint.
inline std::string fingerprint_name(const std::string& fp, int order) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : fp) h = (h ^ c) * 1099511628211ULL;
  char buf[32];
  std::snprintf(buf, sizeof buf, "G%d-%08llx", order, h & 0xffffffffULL);
  return buf;
}

// File-system friendly stem: N'10 -> Np10.
inline std::string file_stem(const std::string& name) {
  std::string s;
  for (char c : name) s += c == '\'' ? std::string("p") : std::string(1, c);
  return s;
}

struct ClosureOptions {
  const FamilyCatalog* name_hints = nullptr;
  std::optional<unsigned> shuffle_seed;  // permute frontier and move order
  bool allow_nabla_y = true;
  bool allow_y_nabla = true;
  std::size_t max_members = 10000;
};

// Breadth-first closure under legal moves, deduplicated by canonical form.
inline FamilyCatalog closure(const SimpleGraph& seed, const ClosureOptions& opt = {}) {
  if (!is_connected(seed)) throw InputError("closure: seed graph must be connected");
  FamilyCatalog cat;
  std::unordered_map<std::string, std::size_t> by_fp;
  std::optional<std::mt19937> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed);

  auto name_for = [&](const std::string& fp, int order) {
    if (opt.name_hints)
      if (auto* h = opt.name_hints->find_fingerprint(fp)) return h->name;
    return fingerprint_name(fp, order);
  };
  auto add = [&](SimpleGraph g, std::string fp, std::vector<MoveRecord> prov) {
    if (cat.members.size() >= opt.max_members)
      throw std::runtime_error("closure: more than " + std::to_string(opt.max_members) + " members");
    by_fp.emplace(fp, cat.members.size());
    std::string nm = name_for(fp, g.order());
    cat.members.push_back({std::move(nm), std::move(g), std::move(fp), std::move(prov)});
    return cat.members.size() - 1;
  };

  add(seed, canonical_form(seed).fingerprint, {});
  std::deque<std::size_t> frontier{0};
  std::vector<std::tuple<std::string, std::string, MoveKind>> arrows;  // by fingerprint
  while (!frontier.empty()) {
    if (rng) std::shuffle(frontier.begin(), frontier.end(), *rng);
    std::size_t cur = frontier.front();
    frontier.pop_front();
    const SimpleGraph g = cat.members[cur].graph;
    const std::string gfp = cat.members[cur].fingerprint;

    std::vector<MoveRecord> moves;
    if (opt.allow_nabla_y) {
      const Label x = fresh_label(g);
      for (auto t : triangles(g))
        moves.push_back({MoveKind::NablaY, {g.label(t[0]), g.label(t[1]), g.label(t[2])}, x, gfp, {}});
    }
    if (opt.allow_y_nabla)
      for (int v : y_sites(g)) moves.push_back({MoveKind::YNabla, {g.label(v)}, {}, gfp, {}});
    if (rng) std::shuffle(moves.begin(), moves.end(), *rng);

    for (auto& mv : moves) {
      SimpleGraph h = mv.kind == MoveKind::NablaY
                          ? nabla_y(g, {mv.site[0], mv.site[1], mv.site[2]}, mv.new_label)
                          : y_nabla(g, mv.site[0]);
      if (h.size() != g.size()) throw std::logic_error("closure: move changed the edge count");
      std::string hfp = canonical_form(h).fingerprint;
      mv.target_fingerprint = hfp;
      arrows.emplace_back(gfp, hfp, mv.kind);
      if (by_fp.count(hfp)) continue;
      auto prov = cat.members[cur].provenance;
      prov.push_back(mv);
      frontier.push_back(add(std::move(h), hfp, std::move(prov)));
    }
  }
  for (auto& [a, b, k] : arrows)
    cat.adjacency.insert({cat.members[by_fp.at(a)].name, cat.members[by_fp.at(b)].name, k});
  return cat;
}

// Table order of the named family members.
inline const std::vector<std::string>& heawood_names() {
  static const std::vector<std::string> names = {"K7",  "H8",  "H9",  "H10", "H11",  "H12",  "F9",
                                                 "F10", "E10", "E11", "C11", "C12",  "C13",  "C14",
                                                 "N9",  "N10", "N11", "N'10", "N'11", "N'12"};
  return names;
}

inline SimpleGraph k7_seed() {
  return SimpleGraph::complete({"b", "c", "d", "e", "f", "g", "h"});
}

// The named family built by explicit move scripts. C14 is the unique
// 14-vertex member of the closure of K7.
inline FamilyCatalog build_reference_catalog() {
  FamilyCatalog cat;
  auto fp = [](const SimpleGraph& g) { return canonical_form(g).fingerprint; };
  auto put = [&](const std::string& name, SimpleGraph g, std::vector<MoveRecord> prov) {
    std::string f = fp(g);
    cat.members.push_back({name, std::move(g), std::move(f), std::move(prov)});
  };
  auto dy = [&](const std::string& from, const std::string& name, const char* tri, const char* x) {
    const auto& src = cat.at(from);
    std::array<Label, 3> t{std::string(1, tri[0]), std::string(1, tri[1]), std::string(1, tri[2])};
    SimpleGraph h;
    try {
      h = nabla_y(src.graph, t, x);
    } catch (const std::exception& e) {
      throw std::logic_error("reference script " + name + ": " + e.what());
    }
    auto prov = src.provenance;
    prov.push_back({MoveKind::NablaY, {t[0], t[1], t[2]}, x, src.fingerprint, fp(h)});
    put(name, std::move(h), std::move(prov));
  };
  auto yd = [&](const std::string& from, const std::string& name, const char* v) {
    const auto& src = cat.at(from);
    SimpleGraph h;
    try {
      h = y_nabla(src.graph, v);
    } catch (const std::exception& e) {
      throw std::logic_error("reference script " + name + ": " + e.what());
    }
    auto prov = src.provenance;
    prov.push_back({MoveKind::YNabla, {v}, {}, src.fingerprint, fp(h)});
    put(name, std::move(h), std::move(prov));
  };

  put("K7", k7_seed(), {});
  dy("K7", "H8", "bcd", "a");
  dy("H8", "H9", "efg", "i");
  dy("H9", "H10", "beh", "j");
  dy("H10", "H11", "hcf", "k");
  dy("H11", "H12", "hdg", "l");
  dy("H8", "F9", "dfg", "i");
  dy("F9", "F10", "deh", "j");
  dy("F9", "E10", "bef", "j");
  dy("E10", "E11", "cfh", "k");
  dy("E10", "C11", "ceg", "k");
  dy("C11", "C12", "cfh", "l");
  dy("C12", "C13", "deh", "m");
  yd("H12", "N11", "h");
  yd("N11", "N10", "i");
  yd("N10", "N9", "a");
  yd("C13", "N'12", "f");
  yd("N'12", "N'11", "m");
  yd("N'11", "N'10", "c");

  ClosureOptions opt;
  opt.name_hints = &cat;
  FamilyCatalog full = closure(cat.at("K7").graph, opt);
  std::string c14_auto;
  for (const auto& m : full.members)
    if (m.graph.order() == 14) {
      if (!c14_auto.empty()) throw std::logic_error("reference catalog: more than one 14-vertex member");
      c14_auto = m.name;
      cat.members.push_back({"C14", m.graph, m.fingerprint, m.provenance});
    }
  if (c14_auto.empty()) throw std::logic_error("reference catalog: no 14-vertex member");
  for (auto a : full.adjacency) {
    if (a.from == c14_auto) a.from = "C14";
    if (a.to == c14_auto) a.to = "C14";
    cat.adjacency.insert(a);
  }
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < heawood_names().size(); ++i) rank[heawood_names()[i]] = i;
  std::stable_sort(cat.members.begin(), cat.members.end(),
                   [&](const FamilyMember& a, const FamilyMember& b) { return rank.at(a.name) < rank.at(b.name); });
  return cat;
}

}  // namespace tsg
