#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsg/graph.hpp"
#include "tsg/permutation.hpp"
#include "tsg/planarity.hpp"

namespace tsg {

// F = A ∪ B for an automorphism: A is induced on the fixed vertices, B holds
// one midpoint per edge whose endpoints are swapped. Label-level fields
// follow the vertex order of the source graph.
struct FixedSubgraph {
  std::vector<Label> fixed_vertices;
  std::vector<LabelPair> induced_edges;
  std::vector<LabelPair> midpoints;

  // A as a graph (isolated fixed vertices included).
  SimpleGraph graph_part() const { return SimpleGraph(fixed_vertices, induced_edges); }
  bool empty() const { return fixed_vertices.empty() && midpoints.empty(); }
  bool operator==(const FixedSubgraph&) const = default;
};

struct PointCount {
  bool infinite = false;
  int finite = 0;  // meaningful when !infinite
  bool operator==(const PointCount&) const = default;
};

inline FixedSubgraph fixed_subgraph(const SimpleGraph& g, const VertexPermutation& p) {
  if (!is_automorphism(g, p)) throw InputError("fixed_subgraph: permutation is not an automorphism");
  FixedSubgraph f;
  for (int v = 0; v < g.order(); ++v)
    if (p(v) == v) f.fixed_vertices.push_back(g.label(v));
  for (auto [u, v] : g.edge_indices()) {
    if (p(u) == u && p(v) == v) f.induced_edges.emplace_back(g.label(u), g.label(v));
    else if (p(u) == v && p(v) == u) f.midpoints.emplace_back(g.label(u), g.label(v));
  }
  return f;
}

// Component shapes of A.
enum class ComponentShape { Point, Path, Cycle, Other };

struct ComponentInfo {
  ComponentShape shape;
  int vertices;
  int edges;
};

inline std::vector<ComponentInfo> component_info(const FixedSubgraph& f) {
  SimpleGraph a = f.graph_part();
  std::vector<ComponentInfo> out;
  for (Bits c : components(a, a.all_vertices())) {
    int nv = popcount(c), ne = 0, maxdeg = 0;
    bool all2 = true;
    for_each_bit(c, [&](int v) {
      int d = a.degree(v);
      ne += d;
      maxdeg = std::max(maxdeg, d);
      if (d != 2) all2 = false;
    });
    ne /= 2;
    ComponentShape s = ComponentShape::Other;
    if (nv == 1) s = ComponentShape::Point;
    else if (ne == nv - 1 && maxdeg <= 2) s = ComponentShape::Path;
    else if (ne == nv && all2) s = ComponentShape::Cycle;
    out.push_back({s, nv, ne});
  }
  return out;
}

// F lies in a circle: a disjoint union of arcs and points, or one whole circle.
inline bool embeds_in_s1(const FixedSubgraph& f) {
  auto comps = component_info(f);
  bool arcs = true;
  for (const auto& c : comps)
    if (c.shape != ComponentShape::Point && c.shape != ComponentShape::Path) arcs = false;
  if (arcs) return true;
  return comps.size() == 1 && comps[0].shape == ComponentShape::Cycle && f.midpoints.empty();
}

inline bool f_is_planar(const FixedSubgraph& f) { return is_planar(f.graph_part()); }

inline PointCount point_count(const FixedSubgraph& f) {
  if (!f.induced_edges.empty()) return {true, 0};
  return {false, static_cast<int>(f.fixed_vertices.size() + f.midpoints.size())};
}

inline bool more_than_two_points(const FixedSubgraph& f) {
  auto pc = point_count(f);
  return pc.infinite || pc.finite > 2;
}

// e.g. "5v 6e 0m: other(4v,6e) + pt"
inline std::string summary(const FixedSubgraph& f) {
  std::string s = std::to_string(f.fixed_vertices.size()) + "v " + std::to_string(f.induced_edges.size()) +
                  "e " + std::to_string(f.midpoints.size()) + "m";
  auto comps = component_info(f);
  if (comps.empty() && f.midpoints.empty()) return s + ": empty";
  std::string parts;
  auto add = [&](const std::string& x) { parts += (parts.empty() ? "" : " + ") + x; };
  for (const auto& c : comps) {
    switch (c.shape) {
      case ComponentShape::Point: add("pt"); break;
      case ComponentShape::Path: add("path" + std::to_string(c.vertices)); break;
      case ComponentShape::Cycle: add("cycle" + std::to_string(c.vertices)); break;
      case ComponentShape::Other:
        add("other(" + std::to_string(c.vertices) + "v," + std::to_string(c.edges) + "e)");
        break;
    }
  }
  if (!f.midpoints.empty()) add(std::to_string(f.midpoints.size()) + " mid");
  return s + ": " + parts;
}

}  // namespace tsg
