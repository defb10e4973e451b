#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tsg/graph.hpp"

namespace tsg {

struct GraphFile {
  std::string name;
  SimpleGraph graph;
};

namespace detail {

inline std::string line_context(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
  std::size_t start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  start = (start == std::string::npos || offset == 0) ? 0 : start + 1;
  std::size_t end = text.find('\n', offset);
  if (end == std::string::npos) end = text.size();
  return "line " + std::to_string(line) + ": " + text.substr(start, end - start);
}

inline std::string regex_escape(const std::string& s) {
  static const std::regex special(R"([.^$|()\[\]{}*+?\\])");
  return std::regex_replace(s, special, R"(\$&)");
}

// Offset of the `nth` textual occurrence of edge [a,b] or [b,a] (0-based).
inline std::size_t edge_offset(const std::string& text, const std::string& a, const std::string& b, int nth) {
  std::regex pat("\\[\\s*\"(" + regex_escape(a) + "\"\\s*,\\s*\"" + regex_escape(b) + "|" + regex_escape(b) +
                 "\"\\s*,\\s*\"" + regex_escape(a) + ")\"\\s*\\]");
  int seen = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), pat); it != std::sregex_iterator(); ++it) {
    if (seen++ == nth) return static_cast<std::size_t>(it->position());
  }
  return std::string::npos;
}

}  // namespace detail

// Parses the graph file format; `source` names the input in diagnostics.
inline GraphFile parse_graph_text(const std::string& text, const std::string& source = "<input>") {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": malformed JSON, " + detail::line_context(text, e.byte ? e.byte - 1 : 0) +
                     " (" + e.what() + ")");
  }
  auto fail = [&](const std::string& why) { throw InputError(source + ": " + why); };
  if (!j.is_object()) fail("top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "name" && it.key() != "vertices" && it.key() != "edges") fail("unknown key '" + it.key() + "'");
  if (!j.contains("vertices") || !j["vertices"].is_array()) fail("missing 'vertices' array");
  if (!j.contains("edges") || !j["edges"].is_array()) fail("missing 'edges' array");
  GraphFile gf;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("'name' must be text");
    gf.name = j["name"].get<std::string>();
  }
  std::vector<Label> vs;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) fail("vertex labels must be text");
    vs.push_back(v.get<std::string>());
  }
  {
    std::vector<Label> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) fail("duplicate vertex '" + *dup + "'");
  }
  std::vector<LabelPair> es;
  std::map<std::pair<Label, Label>, int> count;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      fail("each edge must be a pair of labels, got " + e.dump());
    Label a = e[0].get<std::string>(), b = e[1].get<std::string>();
    auto key = std::minmax(a, b);
    int nth = count[{key.first, key.second}]++;
    auto where = [&](int k) {
      auto off = detail::edge_offset(text, a, b, k);
      return off == std::string::npos ? std::string() : ", " + detail::line_context(text, off);
    };
    if (a == b) fail("loop edge [" + a + "," + b + "]" + where(nth));
    if (nth > 0) fail("duplicate edge [" + a + "," + b + "]" + where(nth));
    for (const auto& x : {a, b})
      if (std::find(vs.begin(), vs.end(), x) == vs.end())
        fail("edge [" + a + "," + b + "] uses unknown vertex '" + x + "'" + where(nth));
    es.emplace_back(a, b);
  }
  try {
    gf.graph = SimpleGraph(vs, es);
  } catch (const InputError& e) {
    fail(e.what());
  }
  return gf;
}

inline GraphFile parse_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_text(ss.str(), path.string());
}

// Sorted keys, two-space indent, edges oriented and ordered by vertex position.
inline std::string emit_graph_file(const std::string& name, const SimpleGraph& g) {
  nlohmann::json j;
  j["name"] = name;
  j["vertices"] = g.vertices();
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) j["edges"].push_back({a, b});
  return j.dump(2) + "\n";
}

// The text emit_graph_file would produce for the same content.
inline std::string normalize_graph_text(const std::string& text) {
  auto gf = parse_graph_text(text);
  return emit_graph_file(gf.name, gf.graph);
}

// Write via a temporary sibling and rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(tmp.string() + ": cannot write");
    out << content;
    if (!out) throw InputError(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tsg
