#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsg/engine.hpp"
#include "tsg/fixed_subgraph.hpp"
#include "tsg/group.hpp"
#include "tsg/moves.hpp"

namespace tsg {

// ---- published baseline ----

struct Table1Row {
  std::string graph;
  std::string printed_name;
  std::string aut_group;
  int aut_order = 0;
  std::vector<std::string> positively_realizable;  // as printed
};

// Printed group name -> engine type name ("\mathbb{Z}_3" -> "Z3",
// "D_3 \times \mathbb{Z}_2" -> "D6"); "trivial" -> "".
inline std::string normalize_group_name(std::string s) {
  auto erase_all = [&](const std::string& what, const std::string& with) {
    for (std::size_t p; (p = s.find(what)) != std::string::npos;) s.replace(p, what.size(), with);
  };
  erase_all("\\mathbb", "");
  erase_all("\\times", "x");
  erase_all("\\rtimes", ":");
  std::string out;
  for (char c : s)
    if (c != '{' && c != '}' && c != '_' && c != '$' && c != ' ') out += c;
  if (out == "trivial") return "";
  static const std::map<std::string, std::string> alias = {{"D3xZ2", "D6"}, {"Z2xZ2", "D2"}};
  if (auto it = alias.find(out); it != alias.end()) return it->second;
  return out;
}

inline const std::vector<Table1Row>& table1() {
  static const std::vector<Table1Row> rows = [] {
    auto j = nlohmann::json::parse(
#include "tsg/data/table1.inc"
    );
    std::vector<Table1Row> out;
    for (const auto& r : j)
      out.push_back({r["graph"], r["printed_name"], r["aut_group"], r["aut_order"],
                     r["positively_realizable"].get<std::vector<std::string>>()});
    return out;
  }();
  return rows;
}

inline const Table1Row* table1_row(const std::string& graph) {
  for (const auto& r : table1())
    if (r.graph == graph) return &r;
  return nullptr;
}

inline std::vector<std::string> table1_types(const Table1Row& r) {
  std::vector<std::string> out;
  for (const auto& s : r.positively_realizable)
    if (auto n = normalize_group_name(s); !n.empty()) out.push_back(n);
  return out;
}

// ---- report ----

struct ClassRow {
  std::string representative;
  int class_size = 0;
  int order = 0;
  std::string f_summary;
  int fixed_vertices = 0;
  int induced_edges = 0;
  int midpoints = 0;
  bool points_infinite = false;
  int points = 0;
  bool s1 = false;
  bool planar = false;
  std::string path;  // "N/A1" | "N/A2" | "N/A3" | witness "b-f-c" | "none"
  std::optional<RuleTrace> pos;
  std::optional<RuleTrace> neg;

  bool operator==(const ClassRow&) const = default;
};

struct Table1Comparison {
  std::string status;  // MATCH | SUPERSET | MISMATCH | NO-BASELINE
  std::vector<std::string> baseline, excess, missing;
  bool operator==(const Table1Comparison&) const = default;
};

struct AnalysisReport {
  std::string graph;
  int vertices = 0;
  int edges = 0;
  int aut_order = 0;
  std::string aut_type;
  int class_count = 0;  // nontrivial classes
  std::vector<ClassRow> rows;
  int pos_open_elements = 0;
  int subgroup_count = 0;
  std::vector<std::string> upper_bounds;
  std::vector<std::string> maximal_subgroups;  // "type <gens>"
  std::string chirality;
  std::vector<std::string> chirality_surviving;
  int r7_firings = 0;
  bool audit_clean = false;
  int audit_checked = 0;
  Table1Comparison comparison;

  bool operator==(const AnalysisReport&) const = default;
};

// Table tag for the path column. Precedence: no swapped pair, nonplanar F,
// at most two points, else a witness (or "none").
inline std::string path_tag(const SimpleGraph& g, const VertexPermutation& p, const FixedSubgraph& f) {
  if (!has_interchanged_pair(p)) return "N/A1";
  if (!f_is_planar(f)) return "N/A3";
  if (!more_than_two_points(f)) return "N/A2";
  auto w = find_path_witness(g, p);
  if (!w) return "none";
  std::string s;
  for (int v : *w) s += (s.empty() ? "" : "-") + g.label(v);
  return s;
}

// Fewest moved points, then shortest/lexicographic notation.
inline int class_representative(const Analysis& a, const std::vector<int>& cls) {
  int best = cls[0];
  auto key = [&](int i) {
    auto s = a.cycles(i);
    return std::make_tuple(a.group.element(i).moved_count(), s.size(), s);
  };
  for (int i : cls)
    if (key(i) < key(best)) best = i;
  return best;
}

inline Table1Comparison compare_table1(const std::string& graph, const std::vector<std::string>& bounds) {
  Table1Comparison c;
  const Table1Row* row = table1_row(graph);
  if (!row) {
    c.status = "NO-BASELINE";
    return c;
  }
  c.baseline = table1_types(*row);
  for (const auto& b : bounds)
    if (std::find(c.baseline.begin(), c.baseline.end(), b) == c.baseline.end()) c.excess.push_back(b);
  for (const auto& b : c.baseline)
    if (std::find(bounds.begin(), bounds.end(), b) == bounds.end()) c.missing.push_back(b);
  c.status = !c.missing.empty() ? "MISMATCH" : c.excess.empty() ? "MATCH" : "SUPERSET";
  return c;
}

inline AnalysisReport make_report(const std::string& name, const SimpleGraph& g, const FixpointOptions& opt = {}) {
  Analysis a = run_fixpoint(g, opt);
  AnalysisReport r;
  r.graph = name;
  r.vertices = g.order();
  r.edges = g.size();
  r.aut_order = a.group.order();
  r.aut_type = identify_group_type(a.group, g.vertices()).descriptor();
  r.class_count = static_cast<int>(a.classes.size()) - 1;
  for (std::size_t k = 1; k < a.classes.size(); ++k) {
    const int i = class_representative(a, a.classes[k]);
    const auto& p = a.group.element(i);
    const FixedSubgraph f = fixed_subgraph(g, p);
    ClassRow row;
    row.representative = a.cycles(i);
    row.class_size = static_cast<int>(a.classes[k].size());
    row.order = p.order();
    row.f_summary = summary(f);
    row.fixed_vertices = static_cast<int>(f.fixed_vertices.size());
    row.induced_edges = static_cast<int>(f.induced_edges.size());
    row.midpoints = static_cast<int>(f.midpoints.size());
    auto pc = point_count(f);
    row.points_infinite = pc.infinite;
    row.points = pc.finite;
    row.s1 = embeds_in_s1(f);
    row.planar = f_is_planar(f);
    row.path = path_tag(g, p, f);
    row.pos = a.status[i].pos;
    row.neg = a.status[i].neg;
    r.rows.push_back(std::move(row));
  }
  auto ub = positive_upper_bounds(a);
  r.pos_open_elements = ub.allowed;
  r.subgroup_count = static_cast<int>(ub.subgroups.size());
  for (const auto& t : ub.types) r.upper_bounds.push_back(t.descriptor());
  for (const auto& h : ub.maximal) {
    if (h.order() == 1) continue;
    auto t = identify_group_type(h, g.vertices());
    std::string s = t.descriptor() + " <";
    for (std::size_t q = 0; q < t.generators.size(); ++q) s += (q ? ", " : "") + t.generators[q];
    r.maximal_subgroups.push_back(s + ">");
  }
  auto cc = intrinsically_chiral(a, name);
  r.chirality = to_string(cc.verdict);
  r.chirality_surviving = cc.surviving;
  r.r7_firings = a.r7_firings;
  auto au = audit(a);
  r.audit_clean = au.clean();
  r.audit_checked = au.checked;
  r.comparison = compare_table1(name, r.upper_bounds);
  return r;
}

// ---- JSON records ----

inline void to_json(nlohmann::json& j, const RuleTrace& t) {
  j = {{"rule", to_string(t.rule)}, {"step", t.step}, {"citation", t.citation}};
  if (!t.variant.empty()) j["variant"] = t.variant;
  if (t.power) j["power"] = t.power;
  if (!t.source.empty()) j["source"] = t.source;
  if (!t.path.empty()) j["path"] = t.path;
  if (!t.vertex.empty()) j["vertex"] = t.vertex;
  if (!t.edge.first.empty()) j["edge"] = {t.edge.first, t.edge.second};
}

inline void from_json(const nlohmann::json& j, RuleTrace& t) {
  t = RuleTrace{};
  t.rule = rule_from_string(j.at("rule").get<std::string>());
  t.step = j.at("step");
  t.citation = j.at("citation");
  t.variant = j.value("variant", std::string());
  t.power = j.value("power", 0);
  t.source = j.value("source", std::string());
  t.path = j.value("path", std::vector<Label>{});
  t.vertex = j.value("vertex", std::string());
  if (j.contains("edge")) t.edge = {j["edge"][0], j["edge"][1]};
}

inline void to_json(nlohmann::json& j, const ClassRow& r) {
  j = {{"representative", r.representative},
       {"class_size", r.class_size},
       {"order", r.order},
       {"f_summary", r.f_summary},
       {"fixed_vertices", r.fixed_vertices},
       {"induced_edges", r.induced_edges},
       {"midpoints", r.midpoints},
       {"points", r.points_infinite ? nlohmann::json("infinite") : nlohmann::json(r.points)},
       {"s1", r.s1},
       {"planar", r.planar},
       {"path", r.path},
       {"pos", r.pos ? nlohmann::json(*r.pos) : nlohmann::json("open")},
       {"neg", r.neg ? nlohmann::json(*r.neg) : nlohmann::json("open")}};
}

inline void from_json(const nlohmann::json& j, ClassRow& r) {
  r.representative = j.at("representative");
  r.class_size = j.at("class_size");
  r.order = j.at("order");
  r.f_summary = j.at("f_summary");
  r.fixed_vertices = j.at("fixed_vertices");
  r.induced_edges = j.at("induced_edges");
  r.midpoints = j.at("midpoints");
  const auto& pts = j.at("points");
  r.points_infinite = pts.is_string();
  r.points = pts.is_string() ? 0 : pts.get<int>();
  r.s1 = j.at("s1");
  r.planar = j.at("planar");
  r.path = j.at("path");
  auto status = [](const nlohmann::json& s) -> std::optional<RuleTrace> {
    if (s.is_string()) return std::nullopt;
    return s.get<RuleTrace>();
  };
  r.pos = status(j.at("pos"));
  r.neg = status(j.at("neg"));
}

inline void to_json(nlohmann::json& j, const Table1Comparison& c) {
  j = {{"status", c.status}, {"baseline", c.baseline}, {"excess", c.excess}, {"missing", c.missing}};
}

inline void from_json(const nlohmann::json& j, Table1Comparison& c) {
  c.status = j.at("status");
  c.baseline = j.at("baseline").get<std::vector<std::string>>();
  c.excess = j.at("excess").get<std::vector<std::string>>();
  c.missing = j.at("missing").get<std::vector<std::string>>();
}

inline constexpr int kReportSchemaVersion = 1;

inline void to_json(nlohmann::json& j, const AnalysisReport& r) {
  j = {{"schema", kReportSchemaVersion},
       {"graph", r.graph},
       {"vertices", r.vertices},
       {"edges", r.edges},
       {"automorphisms", {{"order", r.aut_order}, {"type", r.aut_type}, {"classes", r.class_count}}},
       {"rows", r.rows},
       {"upper_bounds",
        {{"types", r.upper_bounds},
         {"maximal", r.maximal_subgroups},
         {"pos_open_elements", r.pos_open_elements},
         {"subgroups", r.subgroup_count}}},
       {"chirality", {{"verdict", r.chirality}, {"surviving", r.chirality_surviving}}},
       {"engine", {{"r7_firings", r.r7_firings}, {"audit_clean", r.audit_clean}, {"audit_checked", r.audit_checked}}},
       {"baseline", r.comparison}};
}

inline void from_json(const nlohmann::json& j, AnalysisReport& r) {
  if (j.at("schema").get<int>() != kReportSchemaVersion) throw InputError("report record: unsupported schema");
  r.graph = j.at("graph");
  r.vertices = j.at("vertices");
  r.edges = j.at("edges");
  const auto& au = j.at("automorphisms");
  r.aut_order = au.at("order");
  r.aut_type = au.at("type");
  r.class_count = au.at("classes");
  r.rows = j.at("rows").get<std::vector<ClassRow>>();
  const auto& ub = j.at("upper_bounds");
  r.upper_bounds = ub.at("types").get<std::vector<std::string>>();
  r.maximal_subgroups = ub.at("maximal").get<std::vector<std::string>>();
  r.pos_open_elements = ub.at("pos_open_elements");
  r.subgroup_count = ub.at("subgroups");
  r.chirality = j.at("chirality").at("verdict");
  r.chirality_surviving = j.at("chirality").at("surviving").get<std::vector<std::string>>();
  const auto& en = j.at("engine");
  r.r7_firings = en.at("r7_firings");
  r.audit_clean = en.at("audit_clean");
  r.audit_checked = en.at("audit_checked");
  r.comparison = j.at("baseline").get<Table1Comparison>();
}

// ---- text rendering ----

inline std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    std::ostringstream ln;
    for (std::size_t c = 0; c < r.size(); ++c) {
      ln << std::left << std::setw(static_cast<int>(w[c])) << r[c];
      if (c + 1 < r.size()) ln << "  ";
    }
    std::string t = ln.str();
    t.erase(t.find_last_not_of(' ') + 1);
    os << t << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
  return os.str();
}

inline std::string status_text(const std::optional<RuleTrace>& t) {
  if (!t) return "open";
  return std::string(to_string(t->rule)) + t->variant;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string render_rows(const AnalysisReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& x : r.rows)
    rows.push_back({x.representative, std::to_string(x.class_size), std::to_string(x.order), x.f_summary,
                    x.s1 ? "Yes" : "No", x.planar ? "Yes" : "No", x.path, status_text(x.pos), status_text(x.neg)});
  return render_table({"representative", "size", "order", "F", "S1", "S2", "path", "pos", "neg"}, rows);
}

inline std::string render_report(const AnalysisReport& r) {
  std::ostringstream os;
  os << "== " << r.graph << "  (" << r.vertices << " vertices, " << r.edges << " edges)\n";
  os << "Aut: order " << r.aut_order << ", " << r.aut_type << ", " << r.class_count << " nontrivial classes\n";
  os << render_rows(r);
  os << "positive upper bound: {" << join(r.upper_bounds) << "}\n";
  os << "chirality: " << r.chirality;
  if (!r.chirality_surviving.empty()) os << " (neg-open: " << join(r.chirality_surviving) << ")";
  os << '\n';
  os << "baseline: " << r.comparison.status;
  if (!r.comparison.excess.empty()) os << " excess {" << join(r.comparison.excess) << "}";
  if (!r.comparison.missing.empty()) os << " missing {" << join(r.comparison.missing) << "}";
  os << "  baseline {" << join(r.comparison.baseline) << "}\n";
  return os.str();
}

// ---- DOT ----

inline std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Members as nodes, nabla-Y moves as arrows.
inline std::string export_dot(const FamilyCatalog& cat, const std::string& title = "family") {
  std::ostringstream os;
  os << "digraph " << dot_id(title) << " {\n  rankdir=LR;\n";
  for (const auto& m : cat.members)
    os << "  " << dot_id(m.name) << " [label=" << dot_id(m.name + "\\n" + std::to_string(m.graph.order()) + "v") << "];\n";
  for (const auto& a : cat.adjacency)
    if (a.kind == MoveKind::NablaY && a.from != a.to) os << "  " << dot_id(a.from) << " -> " << dot_id(a.to) << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string export_dot(const SimpleGraph& g, const std::string& title = "graph") {
  std::ostringstream os;
  os << "graph " << dot_id(title) << " {\n";
  for (const auto& v : g.vertices()) os << "  " << dot_id(v) << ";\n";
  for (const auto& [a, b] : g.edges()) os << "  " << dot_id(a) << " -- " << dot_id(b) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tsg
