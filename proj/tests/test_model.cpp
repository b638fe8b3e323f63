#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace svcdep;
using namespace svcdep::literals;
using svcdep::testing::chans;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

Architecture tiny() {
  Architecture arch;
  arch.put({"G"_svc, {"x"_ch}, {"y"_ch}, {}, {{"y"_ch, {{"x"_ch, std::nullopt}}}}, {}, {}, {}});
  return arch;
}

TEST(Identifier, OrderingAndLiterals) {
  EXPECT_LT("A_1"_svc, "A_2"_svc);
  EXPECT_EQ(ChannelId("x"), "x"_ch);
  EXPECT_TRUE(is_valid_identifier("data_12"));
  EXPECT_FALSE(is_valid_identifier(""));
  EXPECT_FALSE(is_valid_identifier("a-b"));
}

TEST(Boundary, SystemS) {
  Boundary b = boundary(svcdep::testing::system_l0());
  EXPECT_EQ(b.system_inputs, chans({"data_1", "data_13"}));
  EXPECT_EQ(b.system_outputs, chans({"data_9", "data_10", "data_11", "data_12"}));
  EXPECT_EQ(b.local_channels, chans({"data_2", "data_3", "data_4", "data_5", "data_6", "data_7", "data_8"}));
}

TEST(Validate, SystemSIsClean) { EXPECT_TRUE(validate(svcdep::testing::system_l0()).empty()); }

TEST(Validate, ReportsEachRule) {
  Architecture arch = tiny();
  Service bad{"H"_svc, {"y"_ch, "q"_ch}, {"y"_ch, "z"_ch}, {}, {}, -1.0, {}, {{"w"_ch, "bad name"_svc}}};
  bad.ideps["z"_ch] = {{"nope"_ch, "st"_var}, {"q"_ch, std::nullopt}, {"q"_ch, "st"_var}};
  bad.ideps["w"_ch] = {};
  arch.put(bad);
  auto vs = validate(arch);
  for (const char* rule : {"io_overlap", "ideps_unknown_output", "ideps_unknown_input", "ideps_unknown_var",
                           "ideps_duplicate_channel", "ideps_missing_output", "child_ids_unknown_output",
                           "negative_measure", "single_producer", "identifier"}) {
    EXPECT_TRUE(has_rule(vs, rule)) << rule;
  }
  EXPECT_THROW(require_valid(arch), InvalidArchitecture);
}

TEST(Validate, Membership) {
  Architecture arch = tiny();
  arch.membership = Membership{{"G"_svc, {}}, {"Q"_svc, {"A"_svc}}};
  auto vs = validate(arch);
  EXPECT_TRUE(has_rule(vs, "membership_empty"));
  EXPECT_TRUE(has_rule(vs, "membership_unknown_service"));
}

TEST(ChannelIndex, ProducersAndConsumers) {
  ChannelIndex idx(svcdep::testing::system_l0());
  ASSERT_NE(idx.producer("data_2"_ch), nullptr);
  EXPECT_EQ(*idx.producer("data_2"_ch), "A_1"_svc);
  EXPECT_EQ(idx.producer("data_1"_ch), nullptr);
  EXPECT_TRUE(idx.is_system_input("data_13"_ch));
  EXPECT_FALSE(idx.is_system_input("data_9"_ch));
  EXPECT_EQ(idx.consumers("data_9"_ch).size(), 0u);
}

TEST(Io, RoundTripIsIdentity) {
  for (const char* f : {"system_s_l0.json", "system_s_l1.json", "system_s_l2.json", "system_s_l3.json"}) {
    std::string text = svcdep::testing::read_text(svcdep::testing::fixture_path(f));
    Architecture arch = parse_architecture(text);
    EXPECT_EQ(parse_architecture(serialize(arch)), arch) << f;
    // The L0 fixture is hand-written; the generated levels are canonical.
    if (std::string(f) != "system_s_l0.json") {
      EXPECT_EQ(serialize(arch), text) << f;
    }
  }
}

TEST(Io, ParseErrorCarriesPosition) {
  try {
    parse_architecture("{\n  \"services\": [\n    {\"id\": \"A\",}\n  ]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Io, SchemaErrors) {
  EXPECT_THROW(parse_architecture("[]"), SchemaError);
  EXPECT_THROW(parse_architecture("{\"level\": \"L0\"}"), SchemaError);
  EXPECT_THROW(parse_architecture(R"({"services": [{"id": "A"}, {"id": "A"}]})"), SchemaError);
  EXPECT_THROW(parse_architecture(R"({"services": [{"id": 3}]})"), SchemaError);
  EXPECT_THROW(parse_architecture(R"({"services": [{"id": "A", "inputs": "x"}]})"), SchemaError);
}

TEST(Io, EmptyServicesIsValid) {
  Architecture arch = parse_architecture(R"({"services": []})");
  EXPECT_TRUE(arch.services.empty());
}

TEST(Io, StrictRejectsUnknownKeysLenientWarns) {
  const char* doc = R"({"services": [{"id": "A", "colour": "red"}], "extra": 1})";
  EXPECT_THROW(parse_architecture(doc), SchemaError);
  std::vector<std::string> warnings;
  Architecture arch = parse_architecture(doc, {SchemaMode::Lenient, true}, &warnings);
  EXPECT_EQ(arch.services.size(), 1u);
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(Io, InvalidArchitectureRejectedUnlessValidationOff) {
  const char* doc = R"({"services": [{"id": "A", "inputs": ["x"], "outputs": ["x"], "ideps": {"x": []}}]})";
  EXPECT_THROW(parse_architecture(doc), InvalidArchitecture);
  EXPECT_NO_THROW(parse_architecture(doc, {SchemaMode::Strict, false}));
}

TEST(Measures, OverlayAppliesToMatchingIds) {
  Architecture l1 = svcdep::testing::system_l1();
  EXPECT_EQ(l1.services.at("A_22"_svc).perf, 80.0);
  EXPECT_EQ(l1.services.at("A_5"_svc).wcet, 2.0);
  EXPECT_EQ(l1.uplsize->at("data_1"_ch), 500.0);
  ASSERT_TRUE(l1.thresholds.has_value());
  EXPECT_EQ(l1.thresholds->high_load, 100.0);
  // A_2 is gone at L1, so its missing entry changes nothing.
  Architecture l0 = apply_measures(svcdep::testing::system_l0(), svcdep::testing::system_measures());
  EXPECT_FALSE(l0.services.at("A_2"_svc).wcet.has_value());
  EXPECT_EQ(l0.services.at("A_5"_svc).wcet, 2.0);
}

TEST(Measures, StrictOverlayRejectsUnknownKey) {
  EXPECT_THROW(parse_measures(R"({"cost": {}})"), SchemaError);
  EXPECT_NO_THROW(parse_measures(R"({"cost": {}})", SchemaMode::Lenient));
}

TEST(Dot, NodesAndEdgesAtL1) {
  std::string dot = export_dot(svcdep::testing::system_l1());
  auto count = [&dot](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("[label=\"A_"), 10u);
  std::size_t solid = 0;
  std::size_t dashed = 0;
  std::istringstream lines(dot);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("->") == std::string::npos) continue;
    (line.find("style=dashed") == std::string::npos ? solid : dashed)++;
  }
  // Local channels at L1: data_2 x3, data_3..data_8 one consumer each.
  EXPECT_EQ(solid, 9u);
  EXPECT_EQ(dashed, 7u);
  EXPECT_EQ(dot, export_dot(svcdep::testing::system_l1()));
}

TEST(Dot, HighlightAndDeps) {
  std::string dot = export_dot(svcdep::testing::system_l2(), {true, true});
  EXPECT_NE(dot.find("label=\"data_7\", color=red, penwidth=3"), std::string::npos);
  EXPECT_NE(dot.find("label=\"data_2\", color=blue"), std::string::npos);
  EXPECT_NE(dot.find("fillcolor=white"), std::string::npos);
  EXPECT_NE(dot.find("data_12: {data_2, data_7^st4}"), std::string::npos);
}

}  // namespace
