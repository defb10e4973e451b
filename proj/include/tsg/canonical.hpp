#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsg/graph.hpp"

namespace tsg {

struct CanonicalForm {
  std::vector<Label> order;                    // vertex labels in canonical position order
  std::vector<std::pair<int, int>> edges;      // edges over canonical positions, sorted
  std::string fingerprint;

  bool operator==(const CanonicalForm& o) const { return fingerprint == o.fingerprint; }
};

namespace detail {

// Colour refinement to the coarsest equitable partition finer than `colour`.
// New colours are ranks of (old colour, sorted neighbour colours), so the
// result depends only on the isomorphism class of (g, colour).
inline void refine(const SimpleGraph& g, std::vector<int>& colour) {
  const int n = g.order();
  int classes = n == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v].first;
      s.push_back(colour[v]);
      for_each_bit(g.neighbours(v), [&](int w) { s.push_back(colour[w]); });
      std::sort(s.begin() + 1, s.end());
      sig[v].second = v;
    }
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) keys[v] = sig[v].first;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
    int now = static_cast<int>(keys.size());
    if (now == classes) return;
    classes = now;
  }
}

inline std::vector<int> initial_colours(const SimpleGraph& g) {
  std::vector<int> c(g.order());
  for (int v = 0; v < g.order(); ++v) c[v] = g.degree(v);
  // compress to ranks
  std::vector<int> d = c;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  for (auto& x : c) x = static_cast<int>(std::lower_bound(d.begin(), d.end(), x) - d.begin());
  return c;
}

inline bool discrete(const std::vector<int>& colour) {
  std::vector<char> seen(colour.size(), 0);
  for (int c : colour) {
    if (seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

// First (lowest colour) non-singleton cell.
inline std::vector<int> target_cell(const std::vector<int>& colour) {
  const int n = static_cast<int>(colour.size());
  std::vector<int> count(n, 0);
  for (int c : colour) ++count[c];
  int best = -1;
  for (int c = 0; c < n; ++c)
    if (count[c] > 1) {
      best = c;
      break;
    }
  std::vector<int> cell;
  for (int v = 0; v < n; ++v)
    if (colour[v] == best) cell.push_back(v);
  return cell;
}

inline std::vector<int> individualize(const std::vector<int>& colour, int w) {
  std::vector<int> c(colour.size());
  for (std::size_t v = 0; v < colour.size(); ++v)
    c[v] = 2 * colour[v] + (static_cast<int>(v) == w ? 0 : 1);
  std::vector<int> d = c;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  for (auto& x : c) x = static_cast<int>(std::lower_bound(d.begin(), d.end(), x) - d.begin());
  return c;
}

// Adjacency rows under the position map pos (vertex -> position).
inline std::vector<Bits> encode(const SimpleGraph& g, const std::vector<int>& pos) {
  const int n = g.order();
  std::vector<Bits> rows(n, 0);
  for (auto [u, v] : g.edge_indices()) {
    rows[pos[u]] |= bit(pos[v]);
    rows[pos[v]] |= bit(pos[u]);
  }
  return rows;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const SimpleGraph& g) : g_(g) {}

  std::vector<int> run() {
    auto c = initial_colours(g_);
    refine(g_, c);
    std::vector<int> prefix;
    search(c, prefix);
    return best_pos_;
  }

 private:
  void search(const std::vector<int>& colour, std::vector<int>& prefix) {
    if (discrete(colour)) {
      leaf(colour);
      return;
    }
    std::vector<int> explored;
    for (int w : target_cell(colour)) {
      if (pruned(prefix, explored, w)) continue;
      auto c = individualize(colour, w);
      refine(g_, c);
      prefix.push_back(w);
      search(c, prefix);
      prefix.pop_back();
      explored.push_back(w);
    }
  }

  void leaf(const std::vector<int>& pos) {
    auto rows = encode(g_, pos);
    if (best_pos_.empty() || rows < best_rows_) {
      best_rows_ = std::move(rows);
      best_pos_ = pos;
    } else if (rows == best_rows_) {
      // best^-1 . pos is an automorphism; keep it for pruning.
      const int n = g_.order();
      std::vector<int> at_best(n);
      for (int v = 0; v < n; ++v) at_best[best_pos_[v]] = v;
      std::vector<int> sigma(n);
      for (int v = 0; v < n; ++v) sigma[v] = at_best[pos[v]];
      autos_.push_back(std::move(sigma));
    }
  }

  // Skip w when an automorphism fixing the prefix maps an explored sibling to w.
  bool pruned(const std::vector<int>& prefix, const std::vector<int>& explored, int w) const {
    if (explored.empty()) return false;
    std::vector<const std::vector<int>*> stab;
    for (const auto& a : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return a[p] == p; });
      if (fixes) stab.push_back(&a);
    }
    if (stab.empty()) return false;
    Bits orbit = 0;
    for (int e : explored) orbit |= bit(e);
    Bits frontier = orbit;
    while (frontier) {
      Bits next = 0;
      for_each_bit(frontier, [&](int x) {
        for (auto* a : stab) next |= bit((*a)[x]);
      });
      next &= ~orbit;
      orbit |= next;
      frontier = next;
    }
    return (orbit >> w) & 1U;
  }

  const SimpleGraph& g_;
  std::vector<Bits> best_rows_;
  std::vector<int> best_pos_;
  std::vector<std::vector<int>> autos_;
};

inline std::string hex_rows(const std::vector<Bits>& rows, int n) {
  std::string s;
  char buf[24];
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(rows[i]));
    if (i) s += '.';
    s += buf;
  }
  return s;
}

}  // namespace detail

inline CanonicalForm canonical_form(const SimpleGraph& g) {
  const int n = g.order();
  CanonicalForm cf;
  std::vector<int> pos = n ? detail::CanonicalSearch(g).run() : std::vector<int>{};
  cf.order.resize(n);
  for (int v = 0; v < n; ++v) cf.order[pos[v]] = g.label(v);
  for (auto [u, v] : g.edge_indices()) cf.edges.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  std::sort(cf.edges.begin(), cf.edges.end());
  cf.fingerprint = "n" + std::to_string(n) + "m" + std::to_string(g.size()) + ":" +
                   detail::hex_rows(detail::encode(g, pos), n);
  return cf;
}

// The graph relabeled into canonical order, with the original labels.
inline SimpleGraph canonical_relabeling(const SimpleGraph& g) {
  auto cf = canonical_form(g);
  return SimpleGraph(cf.order, cf.edges);
}

inline bool are_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a).fingerprint == canonical_form(b).fingerprint;
}

// Witness a -> b, label to label, when the graphs are isomorphic.
inline std::optional<std::vector<std::pair<Label, Label>>> find_isomorphism(const SimpleGraph& a,
                                                                            const SimpleGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
  auto ca = canonical_form(a), cb = canonical_form(b);
  if (ca.fingerprint != cb.fingerprint) return std::nullopt;
  std::vector<std::pair<Label, Label>> m;
  for (int i = 0; i < a.order(); ++i) m.emplace_back(ca.order[i], cb.order[i]);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace tsg
