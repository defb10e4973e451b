#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "common.hpp"
#include "tsg/graph_io.hpp"
#include "tsg/report.hpp"

using namespace tsg;
using testutil::G;

namespace {

const AnalysisReport& report(const std::string& name) {
  static std::map<std::string, AnalysisReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_report(name, G(name))).first;
  return it->second;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

int count_matches(const std::string& text, const std::string& re) {
  std::regex r(re);
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), r), std::sregex_iterator()));
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(TSGTOOL_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("tsg_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Table1Test, BaselineHasTwentyRowsInTableOrder) {
  const auto& t = table1();
  ASSERT_EQ(t.size(), 20u);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i].graph, heawood_names()[i]);
  EXPECT_EQ(table1_row("C14")->aut_order, 336);
  EXPECT_EQ(table1_row("K7")->aut_order, 5040);
  EXPECT_EQ(table1_row("nope"), nullptr);
}

TEST(Table1Test, GroupNamesNormalize) {
  EXPECT_EQ(normalize_group_name("$D_3 \\times \\mathbb{Z}_2$"), "D6");
  EXPECT_EQ(normalize_group_name("$\\mathbb{Z}_7 \\rtimes \\mathbb{Z}_3$"), "Z7:Z3");
  EXPECT_EQ(normalize_group_name("$\\mathbb{Z}_2$"), "Z2");
  EXPECT_EQ(as_set(table1_types(*table1_row("N11"))), (std::set<std::string>{"D6", "Z6", "D3", "Z3", "D2", "Z2"}));
  EXPECT_TRUE(table1_types(*table1_row("C12")).empty());
}

TEST(ReportTest, C12) {
  const auto& r = report("C12");
  EXPECT_TRUE(r.upper_bounds.empty());
  EXPECT_EQ(r.chirality, "Proved");
  EXPECT_EQ(r.comparison.status, "MATCH");
}

TEST(ReportTest, N11) {
  const auto& r = report("N11");
  EXPECT_EQ(as_set(r.upper_bounds), (std::set<std::string>{"D6", "Z6", "D3", "Z3", "D2", "Z2"}));
  EXPECT_EQ(r.comparison.status, "MATCH");
}

TEST(ReportTest, K7IsSupersetWithFrobeniusExcess) {
  const auto& r = report("K7");
  EXPECT_EQ(r.comparison.status, "SUPERSET");
  EXPECT_EQ(r.comparison.excess, (std::vector<std::string>{"Z7:Z3"}));
  EXPECT_TRUE(r.comparison.missing.empty());
}

TEST(ReportTest, RowCountEqualsNontrivialClassCount) {
  for (const auto& n : heawood_names()) {
    const auto& r = report(n);
    EXPECT_EQ(static_cast<int>(r.rows.size()), r.class_count) << n;
    EXPECT_EQ(static_cast<int>(conjugacy_classes(automorphism_group(G(n))).size()) - 1, r.class_count) << n;
    EXPECT_EQ(count_matches(render_rows(r), "\n"), r.class_count + 2) << n;
  }
}

TEST(ReportTest, PathTagsUseDashesOrNATags) {
  std::regex ok(R"(N/A[123]|none|[^-\s]+(-[^-\s]+)+)");
  for (const auto& n : heawood_names())
    for (const auto& row : report(n).rows) EXPECT_TRUE(std::regex_match(row.path, ok)) << n << " " << row.path;
  // no interchanged pair
  bool seen_na1 = false;
  for (const auto& row : report("H8").rows) seen_na1 |= row.representative == "(bcd)" && row.path == "N/A1";
  EXPECT_TRUE(seen_na1);
}

TEST(ReportTest, PathTagPrecedence) {
  const auto& g = G("H9");
  auto bc = parse_cycles("(bc)", g);  // swapped pair, nonplanar F
  EXPECT_EQ(path_tag(g, bc, fixed_subgraph(g, bc)), "N/A3");
  auto bcd = parse_cycles("(bcd)", g);
  EXPECT_EQ(path_tag(g, bcd, fixed_subgraph(g, bcd)), "N/A1");
  auto af = parse_cycles("(ai)(becfdg)", g);
  EXPECT_EQ(path_tag(g, af, fixed_subgraph(g, af)), "N/A2");
  auto phi = parse_cycles("(ai)(be)(cf)(dg)", g);
  EXPECT_EQ(path_tag(g, phi, fixed_subgraph(g, phi)), "a-b-f-i");
}

TEST(ReportTest, RecordsRoundTripLosslessly) {
  for (const auto& n : heawood_names()) {
    nlohmann::json j = report(n);
    EXPECT_EQ(j["schema"], kReportSchemaVersion);
    auto text = j.dump(2);
    AnalysisReport back = nlohmann::json::parse(text).get<AnalysisReport>();
    EXPECT_EQ(back, report(n)) << n;
    EXPECT_EQ(nlohmann::json(back).dump(2), text) << n;
  }
}

TEST(ReportTest, ReportingDoesNotMutateBaseline) {
  std::vector<Table1Row> before = table1();
  for (const auto& n : heawood_names()) (void)report(n);
  ASSERT_EQ(table1().size(), before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(table1()[i].graph, before[i].graph);
    EXPECT_EQ(table1()[i].positively_realizable, before[i].positively_realizable);
  }
}

TEST(DotTest, FamilyGraphAndPetersen) {
  auto fam = closure(k7_seed(), [] {
    ClosureOptions o;
    o.name_hints = &testutil::catalog();
    return o;
  }());
  auto dot = export_dot(fam);
  EXPECT_EQ(count_matches(dot, R"(\[label=)"), 20);
  EXPECT_GT(count_matches(dot, " -> "), 0);
  EXPECT_EQ(dot, export_dot(fam));

  auto k7 = export_dot(G("K7"), "K7");
  int nodes = 0;
  std::istringstream lines(k7);
  for (std::string ln; std::getline(lines, ln);) nodes += std::regex_match(ln, std::regex(R"(  "[^"]+";)"));
  EXPECT_EQ(nodes, 7);
  EXPECT_EQ(count_matches(k7, " -- "), 21);

  auto pet = export_dot(closure(testutil::complete("abcdef")), "petersen");
  EXPECT_EQ(count_matches(pet, R"(\[label=)"), 7);
}

TEST(CliTest, AutPrintsOrderAndType) {
  auto r = run("aut H9");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("72"), std::string::npos) << r.out;
}

TEST(CliTest, LoopFileIsAnInputError) {
  auto d = scratch("loop");
  std::ofstream(d / "loop.json") << "{\n  \"vertices\": [\"a\", \"b\"],\n  \"edges\": [[\"a\", \"a\"]]\n}\n";
  auto r = run("aut " + (d / "loop.json").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("loop"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
  std::filesystem::remove_all(d);
}

TEST(CliTest, UnknownGraphNameFails) {
  auto r = run("report Q99");
  EXPECT_EQ(r.status, 2) << r.out;
}

TEST(CliTest, FamilyWritesCatalogFiles) {
  auto d = scratch("family");
  auto r = run("family --dot --out " + d.string());
  ASSERT_EQ(r.status, 0) << r.out;
  int graphs = 0;
  for (const auto& e : std::filesystem::directory_iterator(d))
    if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") {
      ++graphs;
      std::ifstream in(e.path());
      std::stringstream ss;
      ss << in.rdbuf();
      auto gf = parse_graph_text(ss.str(), e.path().string());
      EXPECT_EQ(gf.graph.size(), 21);
      EXPECT_EQ(normalize_graph_text(ss.str()), ss.str()) << e.path();
    }
  EXPECT_EQ(graphs, 20);
  EXPECT_TRUE(std::filesystem::exists(d / "manifest.json"));
  EXPECT_TRUE(std::filesystem::exists(d / "family.dot"));
  auto h9 = parse_graph_file(d / "H9.json");
  EXPECT_EQ(h9.graph.order(), 9);
  EXPECT_EQ(h9.graph.size(), 21);
  EXPECT_TRUE(std::filesystem::exists(d / "Np10.json"));
  std::filesystem::remove_all(d);
}

TEST(CliTest, ReportRecordsParse) {
  auto r = run("report C12 --format records");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  auto rep = (j.is_array() ? j.at(0) : j).get<AnalysisReport>();
  EXPECT_EQ(rep.graph, "C12");
  EXPECT_EQ(rep.comparison.status, "MATCH");
}

TEST(CliTest, TsgAuditIsClean) {
  auto r = run("tsg H8 --audit");
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(CliTest, ExportDotPetersen) {
  auto r = run("export-dot petersen");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(count_matches(r.out, R"(\[label=)"), 7);
}
