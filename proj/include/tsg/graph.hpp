#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tsg {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Label = std::string;
using LabelPair = std::pair<Label, Label>;
using Bits = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline int popcount(Bits b) { return std::popcount(b); }
inline Bits bit(int i) { return Bits{1} << i; }

// Iterate set bits low to high.
template <class F>
void for_each_bit(Bits b, F&& f) {
  while (b) {
    int i = std::countr_zero(b);
    f(i);
    b &= b - 1;
  }
}

// Labeled simple graph. Vertices keep their insertion order; edges are
// stored as index pairs (u < v), sorted.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  SimpleGraph(std::vector<Label> vertices, const std::vector<LabelPair>& edges)
      : labels_(std::move(vertices)) {
    if (labels_.size() > static_cast<std::size_t>(kMaxVertices))
      throw InputError("graph has " + std::to_string(labels_.size()) +
                       " vertices; at most 64 supported");
    adj_.assign(labels_.size(), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw InputError("empty vertex label");
      if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
        throw InputError("duplicate vertex label '" + labels_[i] + "'");
    }
    for (const auto& [a, b] : edges) add_edge_checked(a, b);
    finish();
  }

  // Index-based constructor used internally by moves and subgraph routines.
  SimpleGraph(std::vector<Label> vertices, const std::vector<std::pair<int, int>>& edges)
      : SimpleGraph(std::move(vertices), std::vector<LabelPair>{}) {
    for (auto [u, v] : edges) add_edge_checked(labels_.at(u), labels_.at(v));
    finish();
  }

  static SimpleGraph complete(const std::vector<Label>& vertices) {
    std::vector<LabelPair> e;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j) e.emplace_back(vertices[i], vertices[j]);
    return SimpleGraph(vertices, e);
  }

  int order() const { return static_cast<int>(labels_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }

  const std::vector<Label>& vertices() const { return labels_; }
  const Label& label(int i) const { return labels_.at(i); }
  const std::vector<std::pair<int, int>>& edge_indices() const { return edges_; }

  std::vector<LabelPair> edges() const {
    std::vector<LabelPair> out;
    out.reserve(edges_.size());
    for (auto [u, v] : edges_) out.emplace_back(labels_[u], labels_[v]);
    return out;
  }

  std::optional<int> find(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Label& l) const { return index_.count(l) != 0; }
  int index(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw InputError("unknown vertex label '" + l + "'");
    return it->second;
  }

  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  bool adjacent(const Label& a, const Label& b) const { return adjacent(index(a), index(b)); }
  Bits neighbours(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  Bits all_vertices() const { return labels_.size() == 64 ? ~Bits{0} : bit(order()) - 1; }

  // Same labels in the same order and the same edge set.
  bool operator==(const SimpleGraph& o) const { return labels_ == o.labels_ && adj_ == o.adj_; }

 private:
  void add_edge_checked(const Label& a, const Label& b) {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia == index_.end())
      throw InputError("edge [" + a + "," + b + "]: unknown vertex label '" + a + "'");
    if (ib == index_.end())
      throw InputError("edge [" + a + "," + b + "]: unknown vertex label '" + b + "'");
    int u = ia->second, v = ib->second;
    if (u == v) throw InputError("edge [" + a + "," + b + "]: loop");
    if (adjacent(u, v)) throw InputError("edge [" + a + "," + b + "]: duplicate edge");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  void finish() {
    edges_.clear();
    for (int u = 0; u < order(); ++u)
      for_each_bit(adj_[u] & ~((bit(u) << 1) - 1), [&](int v) { edges_.emplace_back(u, v); });
  }

  std::vector<Label> labels_;
  std::unordered_map<Label, int> index_;
  std::vector<Bits> adj_;
  std::vector<std::pair<int, int>> edges_;
};

inline std::map<Label, int> degree_sequence(const SimpleGraph& g) {
  std::map<Label, int> out;
  for (int v = 0; v < g.order(); ++v) out[g.label(v)] = g.degree(v);
  return out;
}

// Vertex order follows g, not s.
inline SimpleGraph induced_subgraph(const SimpleGraph& g, const std::set<Label>& s) {
  Bits keep = 0;
  for (const auto& l : s) keep |= bit(g.index(l));
  std::vector<Label> vs;
  std::vector<int> remap(g.order(), -1);
  for_each_bit(keep, [&](int v) {
    remap[v] = static_cast<int>(vs.size());
    vs.push_back(g.label(v));
  });
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : g.edge_indices())
    if (remap[u] >= 0 && remap[v] >= 0) es.emplace_back(remap[u], remap[v]);
  return SimpleGraph(std::move(vs), es);
}

// Vertices reachable from `start` inside `within`.
inline Bits reach(const SimpleGraph& g, int start, Bits within) {
  Bits seen = bit(start), frontier = seen;
  while (frontier) {
    Bits next = 0;
    for_each_bit(frontier, [&](int v) { next |= g.neighbours(v); });
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

// Connected components of the subgraph induced on `within`.
inline std::vector<Bits> components(const SimpleGraph& g, Bits within) {
  std::vector<Bits> out;
  while (within) {
    Bits c = reach(g, std::countr_zero(within), within);
    out.push_back(c);
    within &= ~c;
  }
  return out;
}

// The empty graph counts as connected.
inline bool is_connected(const SimpleGraph& g) {
  return g.order() == 0 || components(g, g.all_vertices()).size() == 1;
}

namespace detail {

// Maximum number of internally vertex-disjoint s-t paths (s, t non-adjacent),
// by unit-capacity augmenting paths on the split graph, stopping at `cap`.
inline int disjoint_paths(const SimpleGraph& g, int s, int t, int cap) {
  const int n = g.order();
  // node 2v = v_in, 2v+1 = v_out
  const int N = 2 * n;
  std::vector<std::vector<int>> res(N, std::vector<int>(N, 0));
  for (int v = 0; v < n; ++v) res[2 * v][2 * v + 1] = (v == s || v == t) ? n : 1;
  for (auto [u, v] : g.edge_indices()) {
    res[2 * u + 1][2 * v] = n;
    res[2 * v + 1][2 * u] = n;
  }
  const int src = 2 * s + 1, dst = 2 * t;
  int flow = 0;
  while (flow < cap) {
    std::vector<int> prev(N, -1);
    prev[src] = src;
    std::vector<int> queue{src};
    for (std::size_t qi = 0; qi < queue.size() && prev[dst] < 0; ++qi) {
      int x = queue[qi];
      for (int y = 0; y < N; ++y)
        if (prev[y] < 0 && res[x][y] > 0) {
          prev[y] = x;
          queue.push_back(y);
        }
    }
    if (prev[dst] < 0) break;
    for (int y = dst; y != src; y = prev[y]) {
      --res[prev[y]][y];
      ++res[y][prev[y]];
    }
    ++flow;
  }
  return flow;
}

}  // namespace detail

// Menger: k-connected iff |V| > k and every non-adjacent pair is joined by
// k internally disjoint paths.
inline bool is_k_connected(const SimpleGraph& g, int k) {
  if (k <= 0) throw InputError("is_k_connected: k must be positive, got " + std::to_string(k));
  if (g.order() <= k) return false;
  if (!is_connected(g)) return false;
  for (int s = 0; s < g.order(); ++s)
    for (int t = s + 1; t < g.order(); ++t)
      if (!g.adjacent(s, t) && detail::disjoint_paths(g, s, t, k) < k) return false;
  return true;
}

}  // namespace tsg
