#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "common.hpp"
#include "tsg/fixed_subgraph.hpp"
#include "tsg/group.hpp"

using namespace tsg;
using testutil::G;

namespace {

VertexPermutation P(const std::string& graph, const std::string& cycles) { return parse_cycles(cycles, G(graph)); }

using PairSet = std::set<std::pair<Label, Label>>;

PairSet pairs(const std::vector<LabelPair>& v) {
  PairSet s;
  for (auto [a, b] : v) s.insert(std::minmax(a, b));
  return s;
}

struct FSet {
  std::set<Label> vertices;
  PairSet edges, mids;
  bool operator==(const FSet&) const = default;
};

FSet as_set(const FixedSubgraph& f) {
  return {std::set<Label>(f.fixed_vertices.begin(), f.fixed_vertices.end()), pairs(f.induced_edges),
          pairs(f.midpoints)};
}

// Image of F under the automorphism s.
FSet image(const SimpleGraph& g, const VertexPermutation& s, const FixedSubgraph& f) {
  auto m = [&](const Label& l) { return g.label(s(g.index(l))); };
  FSet out;
  for (const auto& v : f.fixed_vertices) out.vertices.insert(m(v));
  for (auto [a, b] : f.induced_edges) out.edges.insert(std::minmax(m(a), m(b)));
  for (auto [a, b] : f.midpoints) out.mids.insert(std::minmax(m(a), m(b)));
  return out;
}

FixedSubgraph make_f(std::vector<Label> vs, std::vector<LabelPair> es, std::vector<LabelPair> mids = {}) {
  return FixedSubgraph{std::move(vs), std::move(es), std::move(mids)};
}

}  // namespace

TEST(FixedSubgraphTest, H8Alpha) {
  auto f = fixed_subgraph(G("H8"), P("H8", "(bcd)"));
  EXPECT_EQ(std::set<Label>(f.fixed_vertices.begin(), f.fixed_vertices.end()),
            (std::set<Label>{"a", "e", "f", "g", "h"}));
  EXPECT_EQ(pairs(f.induced_edges),
            (PairSet{{"e", "f"}, {"e", "g"}, {"e", "h"}, {"f", "g"}, {"f", "h"}, {"g", "h"}}));
  EXPECT_TRUE(f.midpoints.empty());
  EXPECT_EQ(summary(f), "5v 6e 0m: other(4v,6e) + pt");
}

TEST(FixedSubgraphTest, H9Phi) {
  auto f = fixed_subgraph(G("H9"), P("H9", "(ai)(be)(cf)(dg)"));
  EXPECT_EQ(f.fixed_vertices, (std::vector<Label>{"h"}));
  EXPECT_TRUE(f.induced_edges.empty());
  EXPECT_EQ(pairs(f.midpoints), (PairSet{{"b", "e"}, {"c", "f"}, {"d", "g"}}));
  EXPECT_EQ(point_count(f), (PointCount{false, 4}));
  EXPECT_TRUE(more_than_two_points(f));
}

TEST(FixedSubgraphTest, IdentityGivesWholeGraph) {
  const auto& g = G("C12");
  auto f = fixed_subgraph(g, VertexPermutation::identity(g.order()));
  EXPECT_EQ(f.graph_part(), g);
  EXPECT_TRUE(f.midpoints.empty());
}

TEST(FixedSubgraphTest, RejectsNonAutomorphism) {
  EXPECT_THROW(fixed_subgraph(G("H8"), P("H8", "(ab)")), InputError);
}

TEST(FixedSubgraphTest, MidpointsAndEdgesAreDisjoint) {
  for (const auto& m : testutil::catalog().members) {
    if (m.name == "K7") continue;
    const auto grp = automorphism_group(m.graph);
    for (const auto& p : grp.elements()) {
      auto f = fixed_subgraph(m.graph, p);
      auto e = pairs(f.induced_edges), b = pairs(f.midpoints);
      for (const auto& x : b) EXPECT_FALSE(e.count(x));
    }
  }
}

TEST(EmbedsInS1Test, Examples) {
  EXPECT_TRUE(embeds_in_s1(make_f({"j", "k", "l"}, {{"j", "k"}, {"k", "l"}, {"j", "l"}})));
  EXPECT_FALSE(embeds_in_s1(make_f({"h", "j", "k", "l"}, {{"h", "j"}, {"h", "k"}, {"h", "l"}})));
  EXPECT_TRUE(embeds_in_s1(make_f({"a", "d", "e"}, {{"a", "d"}, {"d", "e"}})));
  EXPECT_FALSE(embeds_in_s1(make_f({"j", "k", "l", "x"}, {{"j", "k"}, {"k", "l"}, {"j", "l"}})));
  EXPECT_FALSE(embeds_in_s1(make_f({"j", "k", "l"}, {{"j", "k"}, {"k", "l"}, {"j", "l"}}, {{"a", "b"}})));
  EXPECT_TRUE(embeds_in_s1(make_f({}, {}, {{"a", "b"}, {"c", "d"}})));
  EXPECT_TRUE(embeds_in_s1(make_f({}, {})));
}

TEST(FIsPlanarTest, Examples) {
  EXPECT_FALSE(f_is_planar(fixed_subgraph(G("H8"), P("H8", "(bc)"))));
  EXPECT_FALSE(f_is_planar(fixed_subgraph(G("H9"), P("H9", "(bc)"))));
  EXPECT_TRUE(f_is_planar(make_f({"a", "b", "c"}, {}, {{"x", "y"}})));
}

TEST(PointCountTest, Examples) {
  auto f = fixed_subgraph(G("N'10"), P("N'10", "(ajki)(begd)"));
  EXPECT_TRUE(pairs(f.induced_edges).count({"h", "l"}));
  EXPECT_TRUE(point_count(f).infinite);
  EXPECT_TRUE(more_than_two_points(f));

  auto alpha = P("H9", "(bcd)"), phi = P("H9", "(ai)(be)(cf)(dg)");
  auto g = fixed_subgraph(G("H9"), alpha * phi);
  EXPECT_EQ(g.fixed_vertices, (std::vector<Label>{"h"}));
  EXPECT_EQ(point_count(g), (PointCount{false, 1}));
  EXPECT_FALSE(more_than_two_points(g));
}

TEST(FixedSubgraphPropertyTest, ConjugationEquivariantOnEveryClass) {
  std::mt19937 rng(11);
  for (const auto& m : testutil::catalog().members) {
    auto grp = automorphism_group(m.graph);
    std::uniform_int_distribution<int> pick(0, grp.order() - 1);
    for (const auto& p : grp.elements()) {
      const auto f = fixed_subgraph(m.graph, p);
      // generators reach every class member; a few random conjugators as well
      std::vector<VertexPermutation> sigmas = grp.generators();
      for (int k = 0; k < 3; ++k) sigmas.push_back(grp.element(pick(rng)));
      for (const auto& s : sigmas)
        ASSERT_EQ(as_set(fixed_subgraph(m.graph, p.conjugate_by(s))), image(m.graph, s, f)) << m.name;
    }
  }
}

TEST(FixedSubgraphPropertyTest, S1ImpliesPlanar) {
  for (const auto& m : testutil::catalog().members) {
    const auto grp = automorphism_group(m.graph);
    for (const auto& p : grp.elements()) {
      auto f = fixed_subgraph(m.graph, p);
      if (embeds_in_s1(f)) {
        ASSERT_TRUE(f_is_planar(f)) << m.name << " " << to_cycle_string(p, m.graph);
      }
    }
  }
}

TEST(FixedSubgraphPropertyTest, BooleanColumnsMatchClassTables) {
  std::ifstream in(std::string(TSG_TEST_DATA_DIR) + "/class_tables.json");
  ASSERT_TRUE(in);
  auto j = nlohmann::json::parse(in);
  int rows = 0;
  for (const auto& gt : j["graphs"]) {
    const std::string name = gt["graph"];
    for (const auto& r : gt["rows"]) {
      const std::string text = r.value("representative", r["printed"].get<std::string>());
      auto p = P(name, text);
      auto f = fixed_subgraph(G(name), p);
      EXPECT_EQ(p.order(), r["order"].get<int>()) << name << " " << text;
      EXPECT_EQ(embeds_in_s1(f), r["s1"].get<bool>()) << name << " " << text;
      EXPECT_EQ(f_is_planar(f), r["s2"].get<bool>()) << name << " " << text;
      ++rows;
    }
  }
  EXPECT_EQ(rows, 98);
}
