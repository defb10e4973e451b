#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "oracles.hpp"
#include "tsg/canonical.hpp"
#include "tsg/graph.hpp"
#include "tsg/graph_io.hpp"
#include "tsg/planarity.hpp"

using namespace tsg;
using testutil::complete;
using testutil::G;
using testutil::make;

TEST(SimpleGraphTest, RejectsLoopsDuplicatesAndUnknownEndpoints) {
  EXPECT_THROW(make("ab", {"aa"}), InputError);
  EXPECT_THROW(make("ab", {"ab", "ba"}), InputError);
  EXPECT_THROW(make("ab", {"ac"}), InputError);
  EXPECT_THROW(SimpleGraph(std::vector<Label>{"a", "a"}, std::vector<LabelPair>{}), InputError);
  try {
    make("ab", {"ab", "ba"});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
}

TEST(SimpleGraphTest, IsolatedVerticesAreLegal) {
  auto g = make("abc", {});
  EXPECT_EQ(g.order(), 3);
  EXPECT_EQ(g.size(), 0);
}

TEST(DegreeSequenceTest, CompleteGraph) {
  for (auto [l, d] : degree_sequence(complete("bcdefgh"))) EXPECT_EQ(d, 6) << l;
}

TEST(DegreeSequenceTest, H8) {
  auto d = degree_sequence(G("H8"));
  EXPECT_EQ(d.at("a"), 3);
  for (auto l : {"b", "c", "d"}) EXPECT_EQ(d.at(l), 5);
  for (auto l : {"e", "f", "g", "h"}) EXPECT_EQ(d.at(l), 6);
}

TEST(DegreeSequenceTest, SingleEdgeAndHandshake) {
  auto d = degree_sequence(make("uv", {"uv"}));
  EXPECT_EQ(d.at("u"), 1);
  EXPECT_EQ(d.at("v"), 1);
  for (const auto& m : testutil::catalog().members) {
    int sum = 0;
    for (auto [l, k] : degree_sequence(m.graph)) sum += k;
    EXPECT_EQ(sum, 2 * m.graph.size()) << m.name;
  }
}

TEST(InducedSubgraphTest, Examples) {
  auto k4 = induced_subgraph(complete("bcdefgh"), {"e", "f", "g", "h"});
  EXPECT_EQ(k4.order(), 4);
  EXPECT_EQ(k4.size(), 6);

  auto h = induced_subgraph(G("H8"), {"a", "e", "f", "g", "h"});
  EXPECT_EQ(h.order(), 5);
  EXPECT_EQ(h.size(), 6);
  EXPECT_EQ(h.degree(h.index("a")), 0);

  auto e = induced_subgraph(G("H8"), {});
  EXPECT_EQ(e.order(), 0);
  EXPECT_THROW(induced_subgraph(G("H8"), {"z"}), InputError);
}

TEST(ConnectivityTest, Examples) {
  EXPECT_TRUE(is_k_connected(G("H8"), 3));
  EXPECT_FALSE(is_k_connected(make("abc", {"ab", "bc"}), 2));
  auto two_k4 = make("abcdefgh", {"ab", "ac", "ad", "bc", "bd", "cd", "ef", "eg", "eh", "fg", "fh", "gh"});
  EXPECT_FALSE(is_connected(two_k4));
  EXPECT_THROW(is_k_connected(G("H8"), 0), InputError);
  EXPECT_TRUE(is_k_connected(complete("abcde"), 4));
}

TEST(ConnectivityTest, AgreesWithExhaustiveRemovalOnCatalog) {
  for (const auto& m : testutil::catalog().members)
    for (int k = 1; k <= 4; ++k)
      EXPECT_EQ(is_k_connected(m.graph, k), oracle::k_connected_exhaustive(m.graph, k)) << m.name << " k=" << k;
}

TEST(ConnectivityTest, AgreesWithExhaustiveRemovalOnRandomGraphs) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto g = oracle::random_graph(rng, 9);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(is_k_connected(g, k), oracle::k_connected_exhaustive(g, k));
  }
}

TEST(ConnectivityTest, EveryFamilyMemberIsThreeConnected) {
  for (const auto& m : testutil::catalog().members) EXPECT_TRUE(is_k_connected(m.graph, 3)) << m.name;
}

TEST(PlanarityTest, Examples) {
  EXPECT_FALSE(is_planar(complete("abcde")));
  EXPECT_TRUE(is_planar(complete("abcd")));
  auto k33 = make("abcxyz", {"ax", "ay", "az", "bx", "by", "bz", "cx", "cy", "cz"});
  EXPECT_FALSE(is_planar(k33));
  // F of (bc) on H8: K5 on defgh plus a pendant
  EXPECT_FALSE(is_planar(induced_subgraph(G("H8"), {"a", "d", "e", "f", "g", "h"})));
  EXPECT_TRUE(is_planar(make("", {})));
}

TEST(PlanarityTest, AgreesWithSubdivisionOracleOnRandomSmallGraphs) {
  std::mt19937 rng(2024);
  int nonplanar = 0;
  for (int i = 0; i < 500; ++i) {
    auto g = oracle::random_graph(rng, 8);
    const bool expected = oracle::planar_by_kuratowski(g);
    nonplanar += !expected;
    ASSERT_EQ(is_planar(g), expected) << "sample " << i << " n=" << g.order() << " m=" << g.size();
  }
  // the sample must exercise both outcomes
  EXPECT_GT(nonplanar, 20);
  EXPECT_LT(nonplanar, 480);
}

TEST(PlanarityTest, OracleRecognizesSubdividedKuratowskiGraphs) {
  // K3,3 with one edge subdivided, and the Petersen-free 8-vertex Wagner graph
  auto sub = make("abcxyzs", {"ax", "ay", "az", "bx", "by", "bz", "cx", "cy", "cs", "sz"});
  EXPECT_FALSE(oracle::planar_by_kuratowski(sub));
  EXPECT_FALSE(is_planar(sub));
  auto wagner = make("abcdefgh", {"ab", "bc", "cd", "de", "ef", "fg", "gh", "ha", "ae", "bf", "cg", "dh"});
  EXPECT_FALSE(oracle::planar_by_kuratowski(wagner));
  EXPECT_FALSE(is_planar(wagner));
  auto cube = make("abcdefgh", {"ab", "bc", "cd", "da", "ef", "fg", "gh", "he", "ae", "bf", "cg", "dh"});
  EXPECT_TRUE(oracle::planar_by_kuratowski(cube));
  EXPECT_TRUE(is_planar(cube));
}

TEST(CanonicalFormTest, RelabeledCopyIsIsomorphic) {
  std::mt19937 rng(1);
  auto h = oracle::relabel(G("H9"), rng);
  EXPECT_TRUE(are_isomorphic(G("H9"), h));
  auto w = find_isomorphism(G("H9"), h);
  ASSERT_TRUE(w);
  std::map<Label, Label> m(w->begin(), w->end());
  for (const auto& [a, b] : G("H9").edges()) EXPECT_TRUE(h.adjacent(m.at(a), m.at(b)));
}

TEST(CanonicalFormTest, DifferentOrdersAreNotIsomorphic) {
  EXPECT_FALSE(are_isomorphic(G("K7"), G("C14")));
  EXPECT_FALSE(find_isomorphism(G("K7"), G("C14")));
  // same order, same edge count, different graphs
  EXPECT_FALSE(are_isomorphic(G("E10"), G("N10")));
}

TEST(CanonicalFormTest, HeawoodIncidenceGraphIsTheFourteenVertexMember) {
  auto inc = oracle::heawood_incidence();
  EXPECT_TRUE(oracle::is_bipartite(inc));
  EXPECT_TRUE(are_isomorphic(G("C14"), inc));
  EXPECT_TRUE(oracle::is_bipartite(G("C14")));
  for (auto [l, d] : degree_sequence(G("C14"))) EXPECT_EQ(d, 3) << l;
}

TEST(CanonicalFormTest, FingerprintsPairwiseDistinctAcrossFamily) {
  std::set<std::string> seen;
  for (const auto& m : testutil::catalog().members) EXPECT_TRUE(seen.insert(canonical_form(m.graph).fingerprint).second);
  EXPECT_EQ(seen.size(), 20u);
}

TEST(CanonicalFormTest, StableUnderThousandRelabelingsPerCatalogGraph) {
  std::mt19937 rng(99);
  for (const auto& m : testutil::catalog().members) {
    const auto ref = canonical_form(m.graph);
    EXPECT_EQ(canonical_form(canonical_relabeling(m.graph)).fingerprint, ref.fingerprint) << m.name;
    for (int i = 0; i < 1000; ++i) {
      auto h = oracle::relabel(m.graph, rng);
      auto c = canonical_form(h);
      ASSERT_EQ(c.fingerprint, ref.fingerprint) << m.name << " relabeling " << i;
      ASSERT_EQ(canonical_form(canonical_relabeling(h)).fingerprint, ref.fingerprint) << m.name;
    }
  }
}

TEST(GraphFileTest, RoundTripIsByteStable) {
  for (const auto& m : testutil::catalog().members) {
    auto text = emit_graph_file(m.name, m.graph);
    auto back = parse_graph_text(text);
    EXPECT_EQ(back.name, m.name);
    EXPECT_EQ(back.graph, m.graph);
    EXPECT_EQ(emit_graph_file(back.name, back.graph), text);
  }
}

TEST(GraphFileTest, DiagnosticsNamePairAndLine) {
  const std::string loop = "{\n  \"name\": \"x\",\n  \"vertices\": [\"a\", \"b\"],\n  \"edges\": [\n    [\"a\", \"a\"]\n  ]\n}\n";
  try {
    parse_graph_text(loop, "loop.json");
    FAIL();
  } catch (const InputError& e) {
    std::string w = e.what();
    EXPECT_NE(w.find("loop"), std::string::npos) << w;
    EXPECT_NE(w.find("[a,a]"), std::string::npos) << w;
    EXPECT_NE(w.find("line 5"), std::string::npos) << w;
  }
  const std::string dup = R"({"vertices": ["a","b"], "edges": [["a","b"], ["b","a"]]})";
  try {
    parse_graph_text(dup);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate edge [b,a]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_graph_text(R"({"vertices": ["a"], "edges": [["a","q"]]})"), InputError);
  EXPECT_THROW(parse_graph_text(R"({"vertices": ["a"], "edges": [)"), InputError);
  EXPECT_THROW(parse_graph_text(R"({"vertices": ["a"], "edges": [], "extra": 1})"), InputError);
}
