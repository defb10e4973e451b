#pragma once

#include <string>

#include "tsg/moves.hpp"

namespace testutil {

inline const tsg::FamilyCatalog& catalog() {
  static const tsg::FamilyCatalog cat = tsg::build_reference_catalog();
  return cat;
}

inline const tsg::SimpleGraph& G(const std::string& name) { return catalog().at(name).graph; }

inline tsg::SimpleGraph make(const std::string& vs, const std::vector<std::string>& edges) {
  std::vector<tsg::Label> v;
  for (char c : vs) v.emplace_back(1, c);
  std::vector<tsg::LabelPair> e;
  for (const auto& s : edges) e.emplace_back(std::string(1, s[0]), std::string(1, s[1]));
  return tsg::SimpleGraph(v, e);
}

inline tsg::SimpleGraph complete(const std::string& vs) {
  std::vector<tsg::Label> v;
  for (char c : vs) v.emplace_back(1, c);
  return tsg::SimpleGraph::complete(v);
}

}  // namespace testutil
