// tsgtool: family generation, automorphism analysis and symmetry-bound reports
// for the graphs obtained from K7 by nabla-Y / Y-nabla moves.

#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsg/engine.hpp"
#include "tsg/graph_io.hpp"
#include "tsg/moves.hpp"
#include "tsg/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Output {
  std::string format = "text";
  std::string out_dir;

  bool records() const { return format == "records"; }

  // Print to stdout, or write <out_dir>/<stem> atomically.
  void emit(const std::string& stem, const std::string& content) const {
    if (out_dir.empty()) {
      std::cout << content;
      return;
    }
    tsg::write_file_atomic(fs::path(out_dir) / stem, content);
    std::cerr << "wrote " << (fs::path(out_dir) / stem).string() << '\n';
  }
  std::string ext() const { return records() ? ".json" : ".txt"; }
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));
  cmd->add_option("--out", o.out_dir, "write results into this directory instead of stdout");
}

const tsg::FamilyCatalog& reference() {
  static const tsg::FamilyCatalog cat = tsg::build_reference_catalog();
  return cat;
}

// A catalog name (H9, N'10 or its stem Np10) or a graph file path.
tsg::GraphFile resolve_graph(const std::string& arg) {
  for (const auto& m : reference().members)
    if (m.name == arg || tsg::file_stem(m.name) == arg) return {m.name, m.graph};
  if (fs::exists(arg)) {
    auto gf = tsg::parse_graph_file(arg);
    if (gf.name.empty()) gf.name = fs::path(arg).stem().string();
    return gf;
  }
  throw tsg::InputError("unknown graph '" + arg + "' (not a catalog name or a readable file)");
}

tsg::SimpleGraph seed_graph(const std::string& seed) {
  if (seed == "K7") return tsg::k7_seed();
  if (seed == "K6") return tsg::SimpleGraph::complete({"a", "b", "c", "d", "e", "f"});
  return tsg::parse_graph_file(seed).graph;
}

json provenance_json(const std::vector<tsg::MoveRecord>& prov) {
  json arr = json::array();
  for (const auto& m : prov) {
    json j = {{"kind", tsg::to_string(m.kind)}, {"site", m.site}};
    if (!m.new_label.empty()) j["new_label"] = m.new_label;
    j["source"] = m.source_fingerprint;
    j["target"] = m.target_fingerprint;
    arr.push_back(j);
  }
  return arr;
}

int cmd_family(const std::string& seed, bool dot, const Output& out) {
  tsg::ClosureOptions opt;
  if (seed == "K7") opt.name_hints = &reference();
  tsg::FamilyCatalog cat = tsg::closure(seed_graph(seed), opt);
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < tsg::heawood_names().size(); ++i) rank[tsg::heawood_names()[i]] = i;
  std::stable_sort(cat.members.begin(), cat.members.end(), [&](const auto& a, const auto& b) {
    auto ka = std::make_tuple(rank.count(a.name) ? rank[a.name] : rank.size(), a.graph.order(), a.name);
    auto kb = std::make_tuple(rank.count(b.name) ? rank[b.name] : rank.size(), b.graph.order(), b.name);
    return ka < kb;
  });

  json manifest = {{"seed", seed}, {"members", json::array()}, {"moves", json::array()}};
  std::map<int, int> hist;
  for (const auto& m : cat.members) {
    ++hist[m.graph.order()];
    manifest["members"].push_back({{"name", m.name},
                                   {"file", tsg::file_stem(m.name) + ".json"},
                                   {"vertices", m.graph.order()},
                                   {"edges", m.graph.size()},
                                   {"fingerprint", m.fingerprint},
                                   {"provenance", provenance_json(m.provenance)}});
  }
  for (const auto& a : cat.adjacency)
    manifest["moves"].push_back({{"from", a.from}, {"to", a.to}, {"kind", tsg::to_string(a.kind)}});

  if (!out.out_dir.empty()) {
    for (const auto& m : cat.members) out.emit(tsg::file_stem(m.name) + ".json", tsg::emit_graph_file(m.name, m.graph));
    out.emit("manifest.json", manifest.dump(2) + "\n");
    if (dot) out.emit("family.dot", tsg::export_dot(cat, seed + " family"));
    return 0;
  }
  if (out.records()) {
    std::cout << manifest.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : cat.members) {
      std::string path;
      for (const auto& mv : m.provenance)
        path += std::string(path.empty() ? "" : " ") + (mv.kind == tsg::MoveKind::NablaY ? "DY(" : "YD(") +
                tsg::join(mv.site, "") + (mv.new_label.empty() ? "" : "->" + mv.new_label) + ")";
      rows.push_back({m.name, std::to_string(m.graph.order()), std::to_string(m.graph.size()), path});
    }
    std::cout << tsg::render_table({"member", "V", "E", "moves from seed"}, rows);
    std::cout << cat.size() << " members; vertex histogram:";
    for (auto [v, c] : hist) std::cout << ' ' << v << ':' << c;
    std::cout << '\n';
  }
  if (dot) std::cout << tsg::export_dot(cat, seed + " family");
  return 0;
}

int cmd_aut(const std::string& arg, const Output& out) {
  auto gf = resolve_graph(arg);
  auto G = tsg::automorphism_group(gf.graph);
  auto type = tsg::identify_group_type(G, gf.graph.vertices());
  auto classes = tsg::conjugacy_classes(G);
  tsg::Analysis shim;
  shim.graph = gf.graph;
  shim.group = G;
  json j = {{"graph", gf.name}, {"order", G.order()}, {"type", type.descriptor()},
            {"census", type.census_string()}, {"generators", type.generators}, {"classes", json::array()}};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 1; k < classes.size(); ++k) {
    int rep = tsg::class_representative(shim, classes[k]);
    const auto& p = G.element(rep);
    std::string ct;
    for (int c : p.cycle_type())
      if (c > 1) ct += (ct.empty() ? "" : ",") + std::to_string(c);
    j["classes"].push_back({{"representative", shim.cycles(rep)}, {"size", classes[k].size()}, {"order", p.order()}});
    rows.push_back({shim.cycles(rep), std::to_string(classes[k].size()), std::to_string(p.order()), ct});
  }
  std::string text = gf.name + ": |Aut| = " + std::to_string(G.order()) + ", type " + type.descriptor() + "\n" +
                     "generators: " + tsg::join(type.generators) + "\n" +
                     tsg::render_table({"representative", "size", "order", "cycle type"}, rows);
  out.emit(tsg::file_stem(gf.name) + ".aut" + out.ext(), out.records() ? j.dump(2) + "\n" : text);
  return 0;
}

int cmd_analyze(const std::string& arg, const Output& out) {
  auto gf = resolve_graph(arg);
  auto r = tsg::make_report(gf.name, gf.graph);
  if (out.records()) {
    json rows = r.rows;
    out.emit(tsg::file_stem(gf.name) + ".analyze.json", json{{"graph", r.graph}, {"rows", rows}}.dump(2) + "\n");
  } else {
    out.emit(tsg::file_stem(gf.name) + ".analyze.txt",
             "== " + r.graph + "  |Aut| = " + std::to_string(r.aut_order) + "\n" + tsg::render_rows(r));
  }
  return 0;
}

std::string trace_text(const tsg::RuleTrace& t) {
  std::string s = std::string(tsg::to_string(t.rule)) + t.variant + " #" + std::to_string(t.step);
  if (t.power) s += " k=" + std::to_string(t.power);
  if (!t.source.empty()) s += " via " + t.source;
  if (!t.path.empty()) s += " path " + tsg::join(t.path, "-");
  if (!t.vertex.empty()) s += " vertex " + t.vertex;
  if (!t.edge.first.empty()) s += " edge " + t.edge.first + t.edge.second;
  return s + ": " + t.citation;
}

int cmd_tsg(const std::string& arg, bool do_audit, const Output& out) {
  auto gf = resolve_graph(arg);
  auto a = tsg::run_fixpoint(gf.graph);
  auto ub = tsg::positive_upper_bounds(a);
  auto cc = tsg::intrinsically_chiral(a, gf.name);
  json j = {{"graph", gf.name}, {"classes", json::array()}};
  std::ostringstream os;
  os << "== " << gf.name << "  |Aut| = " << a.group.order() << '\n';
  for (std::size_t k = 1; k < a.classes.size(); ++k) {
    int rep = tsg::class_representative(a, a.classes[k]);
    const auto& st = a.status[rep];
    j["classes"].push_back({{"representative", a.cycles(rep)},
                            {"size", a.classes[k].size()},
                            {"pos", st.pos ? json(*st.pos) : json("open")},
                            {"neg", st.neg ? json(*st.neg) : json("open")}});
    os << a.cycles(rep) << "  [" << a.classes[k].size() << "]\n";
    os << "  pos: " << (st.pos ? trace_text(*st.pos) : "open") << '\n';
    os << "  neg: " << (st.neg ? trace_text(*st.neg) : "open") << '\n';
  }
  std::vector<std::string> types;
  for (const auto& t : ub.types) types.push_back(t.descriptor());
  j["upper_bounds"] = types;
  j["chirality"] = tsg::to_string(cc.verdict);
  j["r7_firings"] = a.r7_firings;
  os << "positive upper bound: {" << tsg::join(types) << "}\n";
  os << "chirality: " << tsg::to_string(cc.verdict) << '\n';
  int rc = 0;
  if (do_audit) {
    auto au = tsg::audit(a);
    j["audit"] = {{"checked", au.checked}, {"failures", au.failures}};
    os << "audit: " << au.checked << " traces replayed, " << au.failures.size() << " failures\n";
    for (const auto& f : au.failures) os << "  FAIL " << f << '\n';
    if (!au.clean()) rc = 1;
  }
  out.emit(tsg::file_stem(gf.name) + ".tsg" + out.ext(), out.records() ? j.dump(2) + "\n" : os.str());
  return rc;
}

int cmd_report(const std::string& scope, const Output& out) {
  std::vector<tsg::GraphFile> graphs;
  if (scope == "all") {
    for (const auto& m : reference().members) graphs.push_back({m.name, m.graph});
  } else {
    graphs.push_back(resolve_graph(scope));
  }
  std::vector<std::future<tsg::AnalysisReport>> jobs;
  for (const auto& gf : graphs)
    jobs.push_back(std::async(std::launch::async, [gf] { return tsg::make_report(gf.name, gf.graph); }));
  int mismatches = 0;
  json all = json::array();
  std::vector<std::vector<std::string>> summary;
  for (auto& f : jobs) {
    auto r = f.get();
    if (r.comparison.status == "MISMATCH") ++mismatches;
    summary.push_back({r.graph, std::to_string(r.aut_order), r.chirality, r.comparison.status,
                       "{" + tsg::join(r.upper_bounds) + "}"});
    if (!out.out_dir.empty()) {
      out.emit(tsg::file_stem(r.graph) + out.ext(), out.records() ? json(r).dump(2) + "\n" : tsg::render_report(r));
    } else if (out.records()) {
      all.push_back(r);
    } else {
      std::cout << tsg::render_report(r) << '\n';
    }
  }
  if (out.out_dir.empty() && out.records()) std::cout << all.dump(2) << '\n';
  if (!out.records() || !out.out_dir.empty()) {
    std::string s = tsg::render_table({"graph", "|Aut|", "chirality", "baseline", "positive upper bound"}, summary);
    if (out.out_dir.empty()) std::cout << s;
    else out.emit("summary.txt", s);
  }
  return mismatches ? 1 : 0;
}

int cmd_export_dot(const std::string& what, const Output& out) {
  if (what == "family" || what == "petersen") {
    auto cat = what == "family" ? reference() : tsg::closure(seed_graph("K6"), {});
    out.emit(what + ".dot", tsg::export_dot(cat, what));
    return 0;
  }
  auto gf = resolve_graph(what);
  out.emit(tsg::file_stem(gf.name) + ".dot", tsg::export_dot(gf.graph, gf.name));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological symmetry bounds for the Heawood family"};
  app.require_subcommand(1);

  Output o_family, o_aut, o_analyze, o_tsg, o_report, o_dot;
  std::string seed = "K7", graph_aut, graph_analyze, graph_tsg, scope = "all", dot_target = "family";
  bool family_dot = false, audit_flag = false;

  auto* family = app.add_subcommand("family", "closure of a seed under nabla-Y and Y-nabla moves");
  family->add_option("--seed", seed, "K7, K6 or a graph file")->capture_default_str();
  family->add_flag("--dot", family_dot, "also emit the family graph in DOT");
  add_output_flags(family, o_family);

  auto* aut = app.add_subcommand("aut", "automorphism group and class representatives");
  aut->add_option("graph", graph_aut, "catalog name or graph file")->required();
  add_output_flags(aut, o_aut);

  auto* analyze = app.add_subcommand("analyze", "fixed-subgraph table per conjugacy class");
  analyze->add_option("graph", graph_analyze, "catalog name or graph file")->required();
  add_output_flags(analyze, o_analyze);

  auto* tsgc = app.add_subcommand("tsg", "rule statuses with traces, upper bounds and chirality");
  tsgc->add_option("graph", graph_tsg, "catalog name or graph file")->required();
  tsgc->add_flag("--audit", audit_flag, "replay every trace");
  add_output_flags(tsgc, o_tsg);

  auto* report = app.add_subcommand("report", "full pipeline with comparison against the published baseline");
  report->add_option("scope", scope, "all or one graph")->capture_default_str();
  add_output_flags(report, o_report);

  auto* dot = app.add_subcommand("export-dot", "DOT rendering of the family or of one graph");
  dot->add_option("target", dot_target, "family, petersen, catalog name or graph file")->capture_default_str();
  add_output_flags(dot, o_dot);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*family) return cmd_family(seed, family_dot, o_family);
    if (*aut) return cmd_aut(graph_aut, o_aut);
    if (*analyze) return cmd_analyze(graph_analyze, o_analyze);
    if (*tsgc) return cmd_tsg(graph_tsg, audit_flag, o_tsg);
    if (*report) return cmd_report(scope, o_report);
    if (*dot) return cmd_export_dot(dot_target, o_dot);
  } catch (const tsg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
