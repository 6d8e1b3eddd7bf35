#include <gtest/gtest.h>

#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "defect.h"

using Json = nlohmann::ordered_json;

namespace {

const char* kEiEi = R"({"kind":"torus","blocks":[{"label":"E_i","beta":["1"]},{"label":"E_i","beta":["1"]}],
  "classes":[[[0,1,0,0],[-1,0,0,0],[0,0,0,0],[0,0,0,0]]]})";

const char* kThreeCurves = R"({"kind":"torus",
  "field":{"min_poly":[-2,0,0,0,1],"root_interval":["1","2"]},
  "blocks":[{"beta":["0","1"]},{"beta":["0","0","1"]},{"beta":["1","1"]}]})";

struct Spec {
  defect_spec* p = nullptr;
  explicit Spec(const char* text) { EXPECT_EQ(defect_spec_parse(text, &p), DEFECT_OK) << defect_last_error(); }
  ~Spec() { defect_spec_free(p); }
};

struct Torus {
  defect_torus* p = nullptr;
  explicit Torus(const Spec& s) { EXPECT_EQ(defect_torus_from_spec(s.p, &p), DEFECT_OK) << defect_last_error(); }
  ~Torus() { defect_torus_free(p); }
};

Json take(char* s) {
  Json j = Json::parse(s);
  defect_string_free(s);
  return j;
}

}  // namespace

TEST(CApi, VersionAndNullArguments) {
  EXPECT_STRNE(defect_version(), "");
  defect_spec* s = nullptr;
  EXPECT_EQ(defect_spec_parse(nullptr, &s), DEFECT_INVALID_ARGUMENT);
  EXPECT_STREQ(defect_last_error(), "null argument");
  EXPECT_EQ(defect_spec_parse("{}", nullptr), DEFECT_INVALID_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(defect_classify(nullptr, &out), DEFECT_INVALID_ARGUMENT);
  EXPECT_EQ(defect_torus_dimension(nullptr), 0);
  EXPECT_STREQ(defect_spec_kind(nullptr), "");
  defect_spec_free(nullptr);
  defect_torus_free(nullptr);
  defect_string_free(nullptr);
}

TEST(CApi, SchemaErrorsAreInputErrors) {
  defect_spec* s = nullptr;
  EXPECT_EQ(defect_spec_parse(R"({"kind":"isogeny","factors":[]})", &s), DEFECT_INPUT_ERROR);
  EXPECT_EQ(s, nullptr);
  EXPECT_STREQ(defect_last_error(), "factors: at least one factor is required");
  EXPECT_EQ(defect_spec_load("/nonexistent/spec.json", &s), DEFECT_INPUT_ERROR);
  Spec ok(R"({"kind":"isogeny","factors":[{"type":"elliptic","mult":2}]})");
  EXPECT_STREQ(defect_last_error(), "");
}

TEST(CApi, ClassifyAndEcho) {
  Spec s(R"({"kind":"isogeny","factors":[{"type":"elliptic","mult":3,"cm":true}]})");
  EXPECT_STREQ(defect_spec_kind(s.p), "isogeny");
  char* out = nullptr;
  ASSERT_EQ(defect_classify(s.p, &out), DEFECT_OK);
  Json r = take(out);
  EXPECT_EQ(r["delta"], 5);
  ASSERT_EQ(defect_spec_echo(s.p, &out), DEFECT_OK);
  Json e = take(out);
  Spec again(e.dump().c_str());
  ASSERT_EQ(defect_spec_echo(again.p, &out), DEFECT_OK);
  EXPECT_EQ(take(out), e);
  EXPECT_EQ(defect_torus_analyze(s.p, 2, -1, 1, &out), DEFECT_INPUT_ERROR);
  EXPECT_EQ(out, nullptr);
}

TEST(CApi, TorusQueries) {
  Spec s(kEiEi);
  Torus t(s);
  EXPECT_EQ(defect_torus_dimension(t.p), 2);
  int v = -1;
  ASSERT_EQ(defect_torus_picard_rank(t.p, &v), DEFECT_OK);
  EXPECT_EQ(v, 4);
  ASSERT_EQ(defect_torus_hom_rank(t.p, t.p, &v), DEFECT_OK);
  EXPECT_EQ(v, 8);
  const long long fiber[16] = {0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  ASSERT_EQ(defect_torus_class_defect(t.p, fiber, 4, &v), DEFECT_OK);
  EXPECT_EQ(v, 3);
  EXPECT_EQ(defect_torus_class_defect(t.p, fiber, 6, &v), DEFECT_INPUT_ERROR);
  const long long sym[16] = {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(defect_torus_class_defect(t.p, sym, 4, &v), DEFECT_INPUT_ERROR);
  unsigned long long scanned = 0;
  ASSERT_EQ(defect_torus_search(t.p, 2, 2, &v, &scanned), DEFECT_OK);
  EXPECT_EQ(v, 3);
  EXPECT_GT(scanned, 0u);
  EXPECT_EQ(defect_torus_search(t.p, 0, 1, &v, nullptr), DEFECT_INPUT_ERROR);

  Spec other(kThreeCurves);
  Torus u(other);
  EXPECT_EQ(defect_torus_hom_rank(t.p, u.p, &v), DEFECT_INPUT_ERROR);
}

TEST(CApi, AnalyzeAndVerify) {
  Spec s(kThreeCurves);
  char* out = nullptr;
  ASSERT_EQ(defect_torus_analyze(s.p, 2, -1, 2, &out), DEFECT_OK) << defect_last_error();
  Json r = take(out);
  EXPECT_EQ(r["delta"], 1);
  EXPECT_EQ(r["verification"]["classifier_vs_search"]["status"], "pass");
  EXPECT_EQ(defect_torus_analyze(s.p, 2, 0, 1, &out), DEFECT_INPUT_ERROR);

  ASSERT_EQ(defect_verify(s.p, "voisin, kunneth,lefschetz,oracle", 2, 1, &out), DEFECT_OK);
  r = take(out);
  ASSERT_EQ(r["checks"].size(), 4u);
  for (const auto& c : r["checks"]) EXPECT_EQ(c["status"], "pass") << c.dump();
  EXPECT_EQ(defect_verify(s.p, "voisin,nope", 2, 1, &out), DEFECT_INPUT_ERROR);
  EXPECT_NE(std::string(defect_last_error()).find("nope"), std::string::npos);
}

TEST(CApi, Catalog) {
  char* out = nullptr;
  ASSERT_EQ(defect_threefold_catalog(&out), DEFECT_OK);
  Json rows = take(out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0]["delta"], 5);
  EXPECT_EQ(rows[6]["delta"], 0);
}

TEST(CApi, LastErrorIsPerThread) {
  defect_spec* s = nullptr;
  ASSERT_EQ(defect_spec_parse("[]", &s), DEFECT_INPUT_ERROR);
  std::string seen;
  std::thread([&] { seen = defect_last_error(); }).join();
  EXPECT_EQ(seen, "");
  EXPECT_STRNE(defect_last_error(), "");
}
