#include <gtest/gtest.h>

#include <random>

#include "document.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace testing_support;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& v : j)
      if (has_float(v)) return true;
  return false;
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

std::string rational_text(std::mt19937& rng, int bound) { return random_rational(rng, bound).get_str(); }

Json random_torus_json(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 1), blocks(2, 3), entry(-3, 3), count(0, 2), pos(1, 5);
  const bool quartic_field = coin(rng) == 1;
  Json j;
  j["kind"] = "torus";
  if (quartic_field) j["field"] = Json{{"min_poly", {-2, 0, 0, 0, 1}}, {"root_interval", {"1", "2"}}};
  const int k = blocks(rng);
  for (int b = 0; b < k; ++b) {
    Json blk;
    if (coin(rng)) blk["label"] = "B" + std::to_string(b);
    blk["a"] = rational_text(rng, 3);
    if (quartic_field)
      blk["beta"] = {std::to_string(pos(rng)), std::to_string(pos(rng))};
    else
      blk["beta"] = {ratio(pos(rng), pos(rng)).get_str()};
    j["blocks"].push_back(blk);
  }
  const int n = 2 * k;
  for (int c = count(rng); c > 0; --c) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s) {
        m[r][s] = entry(rng);
        m[s][r] = -m[r][s];
      }
    j["classes"].push_back(m);
  }
  return j;
}

Json random_isogeny_json(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2), mult(1, 3), coin(0, 1), nf(1, 3);
  Json j;
  j["kind"] = "isogeny";
  for (int i = nf(rng); i > 0; --i) {
    Json f;
    switch (kind(rng)) {
      case 0:
        f = {{"type", "elliptic"}, {"mult", mult(rng)}, {"cm", coin(rng) == 1}};
        break;
      case 1:
        f = coin(rng) ? Json{{"type", "surface"}, {"albert_type", "II"}, {"picard", 3}}
                      : Json{{"type", "surface"}, {"albert_type", "IV"}, {"picard", 2}};
        break;
      default:
        f = {{"type", "simple_other"}, {"dim", 3 + coin(rng)}};
    }
    if (coin(rng)) f["label"] = "F" + std::to_string(i);
    j["factors"].push_back(f);
  }
  if (j["factors"].size() == 1 && j["factors"][0]["type"] == "elliptic") j["factors"][0]["mult"] = 2;
  return j;
}

}  // namespace

TEST(Schema, ErrorsCarryFieldPaths) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {R"({"kind":"isogeny","factors":[]})", "factors: at least one factor is required"},
      {R"({"kind":"isogeny","factors":[{"type":"surface","albert_type":"II","picard":2}]})",
       "factors[0]: type II surface requires picard = 3"},
      {R"({"kind":"isogeny","factors":[{"type":"elliptic","mult":2,"colour":1}]})",
       "factors[0].colour: unknown field"},
      {R"({"kind":"isogeny","factors":[{"type":"elliptic","mult":2.0}]})",
       "factors[0].mult: floating-point numbers are not allowed"},
      {R"({"kind":"isogeny","factors":[{"type":"curve"}]})", "factors[0].type: expected"},
      {R"({"kind":"torus","blocks":[{"a":"1.5","beta":["1"]},{"beta":["1"]}]})",
       "blocks[0].a: decimal notation is not allowed"},
      {R"({"kind":"torus","blocks":[{"beta":[0.5]},{"beta":["1"]}]})",
       "blocks[0].beta[0]: floating-point numbers are not allowed"},
      {R"({"kind":"torus","blocks":[{"beta":["1"]}]})", "blocks: at least two elliptic curves"},
      {R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["1","2"]}]})",
       "blocks[1].beta: more coefficients than the field degree 1"},
      {R"({"kind":"torus","field":{"min_poly":[-4,0,1],"root_interval":["1","3"]},"blocks":[{"beta":["1"]},{"beta":["1"]}]})",
       "field: "},
      {R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["1"]}],"classes":[[[0,1],[-1,0]]]})",
       "classes[0]: expected a 4x4 matrix"},
      {R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["1"]}],"classes":[[[0,1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]]})",
       "classes[0]: matrix must be antisymmetric"},
      {R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["1"]}],"classes":[[[0,1,0,0],[-1,0,0,0],[0,0,0,"x"],[0,0,0,0]]]})",
       "classes[0][2][3]: "},
      {R"({"kind":"surface"})", "kind: expected"},
      {R"({"factors":[]})", "kind: required field is missing"},
      {R"([1,2])", "(root): expected an object"},
      {R"({"kind":)", "malformed JSON"},
  };
  for (const auto& [text, prefix] : cases) {
    const std::string e = error_of(text);
    EXPECT_EQ(e.rfind(prefix, 0), 0u) << text << "\n  got: " << e;
  }
}

TEST(Schema, RejectsNonPositiveImaginaryPart) {
  SpecDocument d = parse_spec(R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["-1"]}]})");
  try {
    build_torus(d.torus());
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("blocks[1]: ", 0), 0u) << e.what();
  }
}

TEST(Schema, DefaultsAndNormalization) {
  SpecDocument d = parse_spec(R"({"kind":"torus","blocks":[{"beta":"2/4"},{"a":-1,"beta":["1"]}]})");
  const TorusSpec& t = d.torus();
  EXPECT_EQ(t.min_poly.size(), 2u);
  EXPECT_EQ(t.blocks[0].a, 0);
  EXPECT_EQ(t.blocks[0].beta[0], ratio(1, 2));
  EXPECT_EQ(t.blocks[1].a, -1);
  ComplexTorus a = build_torus(t);
  EXPECT_EQ(a.dimension(), 2);
  EXPECT_EQ(a.blocks()[0].label, "E1");
}

TEST(RoundTrip, RandomSpecsSurviveEcho) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    Json j = trial % 2 ? random_torus_json(rng) : random_isogeny_json(rng);
    SpecDocument d = parse_spec(j.dump());
    Json e = echo(d);
    EXPECT_FALSE(has_float(e));
    SpecDocument again = parse_spec(e.dump());
    EXPECT_TRUE(again == d) << j.dump();
    EXPECT_EQ(echo(again), e);
  }
}

TEST(Reports, ClassifyEchoesInputAndNamesCase) {
  SpecDocument d = parse_spec(
      R"({"kind":"isogeny","factors":[{"type":"elliptic","mult":3,"cm":true,"label":"E_CM"}]})");
  Json r = classify_report(d);
  EXPECT_EQ(r["delta"], 5);
  EXPECT_EQ(r["case"], "elliptic");
  EXPECT_EQ(r["k"], 3);
  EXPECT_TRUE(r["ok"].get<bool>());
  EXPECT_TRUE(r["timing"].contains("elapsed_ms"));
  EXPECT_TRUE(parse_spec(r["input"].dump()) == d);
  EXPECT_THROW(torus_report(d, {}), InputError);
}

TEST(Reports, TorusTableSearchAndVerification) {
  SpecDocument d = parse_spec(R"({"kind":"torus","blocks":[{"label":"E_i","beta":["1"]},{"label":"E_i","beta":["1"]}],
    "classes":[[[0,1,0,0],[-1,0,0,0],[0,0,0,0],[0,0,0,0]],[[0,-1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]]})");
  Json r = torus_report(d, {});
  EXPECT_EQ(r["delta"], 3);
  EXPECT_EQ(r["picard_rank"], 4);
  ASSERT_EQ(r["classes"].size(), 2u);
  EXPECT_EQ(r["classes"][0]["effective"], true);
  EXPECT_EQ(r["classes"][0]["b"], 1);
  EXPECT_EQ(r["classes"][0]["rho_B"], 1);
  EXPECT_EQ(r["classes"][0]["defect"], 3);
  EXPECT_EQ(r["classes"][1]["effective"], false);
  EXPECT_TRUE(r["classes"][1]["b"].is_null());
  for (const char* k : {"voisin_check", "kunneth_check", "classifier_vs_search"})
    EXPECT_EQ(r["verification"][k]["status"], "pass") << k;
  EXPECT_GT(r["search"]["classes_scanned"].get<long>(), 0);
  EXPECT_FALSE(has_float(r));
  EXPECT_TRUE(parse_spec(r["input"].dump()) == d);
  EXPECT_EQ(without_timing(r), without_timing(torus_report(d, {})));

  TorusOptions one;
  one.class_index = 1;
  Json s = torus_report(d, one);
  EXPECT_TRUE(s["search"].is_null());
  EXPECT_EQ(s["classes"].size(), 1u);
  EXPECT_EQ(s["verification"]["classifier_vs_search"]["status"], "skipped");
  one.class_index = 5;
  EXPECT_THROW(torus_report(d, one), InputError);
}

TEST(Reports, NonHodgeClassIsAnInputError) {
  SpecDocument d = parse_spec(R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["2"]}],
    "classes":[[[0,0,1,0],[0,0,0,0],[-1,0,0,0],[0,0,0,0]]]})");
  try {
    torus_report(d, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "classes[0]: not a Hodge class");
  }
}

TEST(Reports, VerifyChecksAndUnknownNames) {
  SpecDocument d = parse_spec(R"({"kind":"torus","blocks":[{"beta":["1"]},{"beta":["2"]}]})");
  Json r = verify_report(d, {"voisin", "kunneth", "lefschetz"}, 2, 1);
  ASSERT_EQ(r["checks"].size(), 3u);
  EXPECT_EQ(r["checks"][0]["status"], "pass");
  EXPECT_EQ(r["checks"][1]["status"], "pass");
  EXPECT_EQ(r["checks"][2]["status"], "skipped");
  EXPECT_EQ(r["checks"][2]["detail"], "requires n ≥ 3");
  EXPECT_TRUE(r["ok"].get<bool>());
  EXPECT_THROW(verify_report(d, {"voisin", "hodge"}, 2, 1), InputError);
}

TEST(Reports, CatalogRowsInDeltaOrder) {
  Json rows = catalog_records();
  ASSERT_EQ(rows.size(), 7u);
  std::vector<int> deltas;
  for (const auto& r : rows) deltas.push_back(r["delta"].get<int>());
  EXPECT_EQ(deltas, (std::vector<int>{5, 3, 2, 2, 1, 1, 0}));
  for (const auto& r : rows) {
    Json spec = {{"kind", "isogeny"}, {"factors", r["factors"]}};
    EXPECT_EQ(classify_report(parse_spec(spec.dump()))["delta"], r["delta"]);
  }
}
