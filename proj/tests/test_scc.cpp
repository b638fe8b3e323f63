#include <gtest/gtest.h>

#include "support.hpp"

using namespace svcdep;
using namespace svcdep::literals;
using svcdep::testing::chans;
using svcdep::testing::svcs;

namespace {

ServiceGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> edges) {
  ServiceGraph g;
  int k = 0;
  for (const auto& [a, b] : edges) g.add_edge({ServiceId(a), ServiceId(b), ChannelId("e" + std::to_string(k++))});
  return g;
}

class LevelOne : public ::testing::Test {
 protected:
  Architecture l1 = svcdep::testing::system_l1();
  ServiceGraph g = build_graph(l1);
};

TEST_F(LevelOne, GraphMatchesFigure) {
  EXPECT_EQ(g.vertices().size(), 10u);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : g.edges()) edges.insert({e.from.str(), e.to.str()});
  std::set<std::pair<std::string, std::string>> expected{
      {"A_11", "A_21"}, {"A_11", "A_22"}, {"A_11", "A_23"}, {"A_22", "A_31"}, {"A_23", "A_32"},
      {"A_31", "A_41"}, {"A_32", "A_41"}, {"A_41", "A_22"}, {"A_42", "A_5"}};
  EXPECT_EQ(edges, expected);
  EXPECT_EQ(g.input_ports().at("A_12"_svc), chans({"data_1"}));
  EXPECT_EQ(g.output_ports().at("A_22"_svc), chans({"data_12"}));
}

TEST_F(LevelOne, DtIsA12) { EXPECT_EQ(classify_dt(g), svcs({"A_12"})); }

TEST_F(LevelOne, OwctyOnBothComponents) {
  std::set<ServiceId> rest = g.vertices();
  rest.erase("A_12"_svc);
  auto comps = weak_components(g.induced(rest));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[1], svcs({"A_42", "A_5"}));

  OwctyResult g1 = owcty_eliminate(g.induced(comps[0]));
  std::vector<Removal> trace{{"A_11"_svc, TrivialClass::LT},
                             {"A_21"_svc, TrivialClass::TT},
                             {"A_23"_svc, TrivialClass::LT},
                             {"A_32"_svc, TrivialClass::LT}};
  EXPECT_EQ(g1.removed, trace);
  EXPECT_EQ(g1.core.vertices(), svcs({"A_22", "A_31", "A_41"}));

  OwctyResult g2 = owcty_eliminate(g.induced(comps[1]));
  std::vector<Removal> trace2{{"A_42"_svc, TrivialClass::LT}, {"A_5"_svc, TrivialClass::TT}};
  EXPECT_EQ(g2.removed, trace2);
  EXPECT_TRUE(g2.core.vertices().empty());
}

TEST_F(LevelOne, FbFindsTheCycle) {
  auto sccs = fb_scc(g);
  EXPECT_EQ(sccs.size(), 8u);
  std::size_t big = 0;
  for (const auto& s : sccs) {
    if (s.size() > 1) {
      EXPECT_EQ(s, svcs({"A_22", "A_31", "A_41"}));
      ++big;
    }
  }
  EXPECT_EQ(big, 1u);
}

TEST_F(LevelOne, ClassifyVertices) {
  auto k = classify_vertices(g);
  EXPECT_EQ(k.at("A_12"_svc), TrivialClass::DT);
  EXPECT_EQ(k.at("A_11"_svc), TrivialClass::LT);
  EXPECT_EQ(k.at("A_21"_svc), TrivialClass::TT);
  EXPECT_EQ(k.at("A_23"_svc), TrivialClass::T);
  EXPECT_EQ(k.at("A_31"_svc), TrivialClass::NonTrivial);
}

TEST_F(LevelOne, CondenseMatchesFigure) {
  Condensation c = condense_to_l2(l1);
  ASSERT_EQ(c.steps.size(), 8u);
  std::vector<std::set<ServiceId>> members;
  for (const auto& s : c.steps) members.push_back(s.members);
  std::vector<std::set<ServiceId>> expected{svcs({"A_12"}), svcs({"A_11"}), svcs({"A_21"}),
                                            svcs({"A_23"}), svcs({"A_32"}), svcs({"A_22", "A_31", "A_41"}),
                                            svcs({"A_42"}), svcs({"A_5"})};
  EXPECT_EQ(members, expected);
  EXPECT_EQ(c.steps[5].new_id, "S_6"_svc);
  EXPECT_EQ(c.steps[5].kind, TrivialClass::NonTrivial);

  const Service& s6 = c.arch.service("S_6"_svc);
  EXPECT_EQ(s6.inputs, chans({"data_2", "data_7"}));
  EXPECT_EQ(s6.outputs, chans({"data_12"}));
  EXPECT_EQ(s6.wcet, 5.0 + 2.0 + 4.0);
  EXPECT_EQ(s6.perf, 80.0 + 20.0 + 70.0);
  EXPECT_EQ(c.arch.membership->at("S_6"_svc), svcs({"A_22", "A_31", "A_41"}));
  EXPECT_EQ(boundary(c.arch).system_inputs, boundary(l1).system_inputs);
  EXPECT_EQ(boundary(c.arch).system_outputs, boundary(l1).system_outputs);
  EXPECT_EQ(c.arch, svcdep::testing::load_fixture("system_s_l2.json"));
}

TEST_F(LevelOne, CondensedGraphIsAcyclic) {
  for (const auto& s : fb_scc(build_graph(condense_to_l2(l1).arch))) EXPECT_EQ(s.size(), 1u);
}

TEST(Condense, MissingMeasureLeavesCompositeUnset) {
  Architecture l1 = decompose_all(svcdep::testing::system_l0()).arch;
  l1.services.at("A_22"_svc).wcet = 1.0;
  Condensation c = condense_to_l2(l1);
  EXPECT_FALSE(c.arch.service("S_6"_svc).wcet.has_value());
}

TEST(Owcty, PureCycleRemovesNothing) {
  auto r = owcty_eliminate(graph_of({{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.core.vertices().size(), 3u);
}

TEST(Fb, DagGivesSingletons) {
  auto sccs = fb_scc(graph_of({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
  EXPECT_EQ(sccs.size(), 4u);
}

TEST(Fb, TwoCyclesJoinedByBridge) {
  auto sccs = fb_scc(graph_of({{"a", "b"}, {"b", "a"}, {"b", "m"}, {"m", "x"}, {"x", "y"}, {"y", "x"}}));
  std::vector<std::set<ServiceId>> expected{svcs({"a", "b"}), svcs({"m"}), svcs({"x", "y"})};
  EXPECT_EQ(sccs, expected);
}

TEST(Graph, EdgelessAllDt) {
  Architecture arch = svcdep::testing::system_l0();
  for (auto& [id, svc] : arch.services) {
    svc.inputs = {ChannelId("in_" + id.str())};
    svc.outputs = {ChannelId("out_" + id.str())};
    svc.local_vars.clear();
    svc.child_ids.clear();
    svc.ideps = {{ChannelId("out_" + id.str()), {{ChannelId("in_" + id.str()), std::nullopt}}}};
  }
  ServiceGraph g = build_graph(arch);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(classify_dt(g), arch.service_ids());
  EXPECT_EQ(condense_to_l2(arch).arch.services.size(), arch.services.size());
}

TEST(Graph, UnknownVertexThrows) {
  ServiceGraph g;
  EXPECT_THROW(static_cast<void>(g.successors("nope"_svc)), UnknownService);
}

}  // namespace
