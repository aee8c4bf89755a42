#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "support.hpp"

using namespace hdabridge;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::invalid_model;
}

template <class T>
void expect_round_trip(const T& model) {
  const json j = to_json(model);
  const ModelDocument back = parse_document(j.dump());
  ASSERT_TRUE(std::holds_alternative<T>(back)) << j.dump();
  EXPECT_EQ(std::get<T>(back), model) << j.dump();
  EXPECT_EQ(to_json(back), j);
}

std::size_t count(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST(Json, RoundTripZoo) {
  expect_round_trip(zoo::diamond());
  expect_round_trip(zoo::three_event_staircase());
  expect_round_trip(zoo::concurrent_events(3));
  expect_round_trip(make_event_structure({"a", "b", "c"}, {{0, 1}}, {{1, 2}}));
  expect_round_trip(zoo::mutex_net());
  expect_round_trip(zoo::double_token_net());
  expect_round_trip(LabeledTransitionSystem{zoo::diamond(), {"a", "b"}, {0, 1}});
  expect_round_trip(acr_to_hda2(zoo::three_event_staircase()));
  expect_round_trip(es_to_hda(zoo::concurrent_events(3)));
  expect_round_trip(pn_to_hda(zoo::double_token_net(), 10, 3));
  Hda point;
  point.add_vertex();
  expect_round_trip(point);
}

TEST(Json, RoundTripHdaWithDegenerateFaces) {
  Hda h;
  const Symbol a = h.add_symbol("a");
  const auto v = h.add_vertex("v");
  const auto e = h.add_cell({Cell::of(0, v), Cell::of(0, v)}, {a}, "loop");
  h.add_cell({Cell::of(1, e), Cell::of(1, e), degeneracy(Cell::of(0, v), 0), degeneracy(Cell::of(0, v), 0)},
             {kStar, a});
  ASSERT_TRUE(validate_hda(h).ok()) << validate_hda(h);
  expect_round_trip(h);
}

TEST(Json, RoundTripRandomCorpora) {
  GeneratorConfig cfg;
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto rng = instance_rng(17, i);
    expect_round_trip(gen::transition_system(rng, cfg));
    expect_round_trip(gen::acr(rng, cfg));
    const auto es = gen::event_structure(rng, cfg);
    expect_round_trip(es);
    if (es.events.size() <= 5) expect_round_trip(es_to_hda(es));
  }
}

TEST(Json, Errors) {
  EXPECT_EQ(parse_code("{\"kind\": \"ts\""), ErrorCode::parse_error);
  EXPECT_EQ(parse_code("{\"kind\": \"graph\"}"), ErrorCode::unknown_kind);
  EXPECT_EQ(parse_code("{\"states\": []}"), ErrorCode::parse_error);
  EXPECT_EQ(parse_code("{\"kind\": \"ts\", \"format_version\": 7, \"states\": [], \"initial\": \"x\", "
                       "\"events\": [], \"transitions\": []}"),
            ErrorCode::parse_error);
  EXPECT_EQ(parse_code("{\"kind\": \"ts\", \"states\": [\"x\"], \"initial\": \"y\", \"events\": [], "
                       "\"transitions\": []}"),
            ErrorCode::parse_error);
  EXPECT_EQ(parse_code("{\"kind\": \"ts\", \"states\": [\"x\"], \"initial\": \"x\", \"events\": [\"a\"], "
                       "\"transitions\": [[\"x\", \"a\"]]}"),
            ErrorCode::parse_error);
  EXPECT_EQ(parse_code("{\"kind\": \"pnet\", \"places\": [\"p\"], \"initial\": {\"p\": -1}, \"events\": [], "
                       "\"pre\": {}, \"post\": {}}"),
            ErrorCode::parse_error);
}

TEST(Json, ValidationOfParsedModels) {
  const auto doc = parse_document(std::string(
      "{\"kind\": \"acr\", \"states\": [\"x\", \"y1\", \"y2\"], \"initial\": \"x\", \"events\": [\"e1\", \"e2\"],"
      " \"transitions\": [[\"x\", \"e1\", \"y1\"], [\"x\", \"e2\", \"y2\"]], \"independence\": [[\"x\", \"e1\", \"e2\"]]}"));
  const auto report = validate(doc);
  EXPECT_FALSE(report.ok());
  EXPECT_GT(report.count("square-completion"), 0u);
  EXPECT_EQ(kind_of(doc), "acr");
}

TEST(Json, FixturesParseAndValidate) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HDABRIDGE_FIXTURES)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    const auto doc = parse_document(in);
    const bool broken = entry.path().filename().string().rfind("missing_", 0) == 0;
    EXPECT_EQ(validate(doc).ok(), !broken) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 8u);
}

TEST(Dot, StaircaseCounts) {
  const Hda h = acr_to_hda2(zoo::three_event_staircase());
  const std::string dot = export_dot(h);
  EXPECT_EQ(count(dot, R"(\n  "[^"]+"( \[shape=doublecircle\])?;)"), 7u);
  EXPECT_EQ(count(dot, "doublecircle"), 1u);
  EXPECT_EQ(count(dot, R"(-> "[^"]+" \[label=)"), 9u);
  EXPECT_EQ(count(dot, "style=dashed"), 3u);
  const std::string clusters = export_dot(h, SquareStyle::cluster);
  EXPECT_EQ(count(clusters, "subgraph cluster_"), 3u);
}

TEST(Dot, SingleVertexAndDeterminism) {
  Hda point;
  point.add_vertex("x");
  EXPECT_EQ(export_dot(point), "digraph hda {\n  rankdir=LR;\n  node [shape=circle];\n  \"x\" [shape=doublecircle];\n}\n");
  const Hda h = es_to_hda(zoo::concurrent_events(3));
  EXPECT_EQ(export_dot(h), export_dot(h));
  EXPECT_EQ(export_dot(h), export_dot(std::get<Hda>(parse_document(to_json(h).dump()))));
}

TEST(Dot, QuotesNames) {
  TransitionSystem t;
  t.add("a \"b\"", "go", "c");
  const std::string dot = export_dot(ts_to_hda1(t));
  EXPECT_NE(dot.find(R"("a \"b\"")"), std::string::npos);
}
