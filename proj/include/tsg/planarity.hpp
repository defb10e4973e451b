#pragma once

#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "tsg/graph.hpp"

namespace tsg {

// Exact planarity (Boyer-Myrvold via Boost.Graph).
inline bool is_planar(int n, const std::vector<std::pair<int, int>>& edges) {
  // Euler bound short-circuit; also keeps Boost away from trivially dense input.
  if (n >= 3 && static_cast<int>(edges.size()) > 3 * n - 6) return false;
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                  boost::property<boost::vertex_index_t, int>>;
  G bg(n);
  for (auto [u, v] : edges) boost::add_edge(u, v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

inline bool is_planar(const SimpleGraph& g) { return is_planar(g.order(), g.edge_indices()); }

}  // namespace tsg
