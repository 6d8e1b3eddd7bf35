#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "classifier.hpp"
#include "error.hpp"

using namespace defect;

namespace {

IsogenyFactor elliptic(std::string label, bool cm, int mult = 1) {
  IsogenyFactor f;
  f.kind = FactorKind::elliptic;
  f.has_cm = cm;
  f.mult = mult;
  f.label = std::move(label);
  return f;
}

IsogenyFactor surface(std::string label, AlbertType t, int picard, int mult = 1) {
  IsogenyFactor f;
  f.kind = FactorKind::surface;
  f.albert = t;
  f.picard = picard;
  f.mult = mult;
  f.label = std::move(label);
  return f;
}

IsogenyFactor simple(std::string label, int dim, int mult = 1) {
  IsogenyFactor f;
  f.kind = FactorKind::simple_other;
  f.dim = dim;
  f.mult = mult;
  f.label = std::move(label);
  return f;
}

IsogenyFactor random_factor(std::mt19937& rng, int index) {
  std::uniform_int_distribution<int> kind(0, 5), mult(1, 3), coin(0, 1), pick(0, 3);
  std::string label = "F" + std::to_string(index);
  switch (kind(rng)) {
    case 0:
    case 1:
    case 2:
      return elliptic(label, coin(rng) == 1, mult(rng));
    case 3:
    case 4: {
      const int p = pick(rng);
      if (p == 0) return surface(label, AlbertType::II, 3, mult(rng));
      if (p == 1) return surface(label, AlbertType::IV, 2, mult(rng));
      return surface(label, AlbertType::I, p == 2 ? 1 : 2, mult(rng));
    }
    default:
      return simple(label, 3 + coin(rng), mult(rng));
  }
}

IsogenySpec random_spec(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  IsogenySpec s;
  do {
    s.factors.clear();
    const int c = count(rng);
    for (int i = 0; i < c; ++i) s.factors.push_back(random_factor(rng, i));
  } while (s.total_dim() < 2);
  return s;
}

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(classify({{elliptic("E", true, 3)}}).delta, 5);
  EXPECT_EQ(classify({{elliptic("E", false), elliptic("E'", true, 2)}}).delta, 3);
  DefectReport s2 = classify({{surface("S", AlbertType::II, 3), elliptic("E", false)}});
  EXPECT_EQ(s2.delta, 2);
  EXPECT_EQ(s2.kind, DefectCase::surface_II);
  EXPECT_EQ(s2.witness_factor, "S");
  DefectReport z = classify({{simple("A", 3)}});
  EXPECT_EQ(z.delta, 0);
  EXPECT_EQ(z.kind, DefectCase::zero);
  for (int k = 2; k <= 5; ++k) {
    EXPECT_EQ(classify({{elliptic("E", false, k)}}).delta, k);
    EXPECT_EQ(classify({{elliptic("E", true, k)}}).delta, 2 * k - 1);
  }
}

TEST(Classify, SurfaceOfTypeOneOrFourWithoutCurves) {
  DefectReport r = classify({{surface("S", AlbertType::IV, 2), simple("B", 3)}});
  EXPECT_EQ(r.delta, 1);
  EXPECT_EQ(r.kind, DefectCase::surface_I_or_IV);
  DefectReport tie = classify({{surface("S", AlbertType::I, 2), elliptic("E", false)}});
  EXPECT_EQ(tie.delta, 1);
  EXPECT_EQ(tie.kind, DefectCase::elliptic);
}

TEST(Validate, Errors) {
  EXPECT_THROW(classify(IsogenySpec{}), InputError);
  try {
    classify({{surface("S", AlbertType::II, 2)}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("type II surface requires picard = 3"), std::string::npos);
  }
  EXPECT_THROW(classify({{surface("S", AlbertType::III, 2)}}), InputError);
  EXPECT_THROW(classify({{surface("S", AlbertType::IV, 1)}}), InputError);
  EXPECT_THROW(classify({{surface("S", AlbertType::I, 3)}}), InputError);
  EXPECT_THROW(classify({{simple("A", 2)}}), InputError);
  EXPECT_THROW(classify({{elliptic("E", true)}}), InputError);
  EXPECT_THROW(classify({{elliptic("E", true, 0), elliptic("F", false)}}), InputError);
  EXPECT_THROW(classify({{elliptic("E", true), elliptic("E", false)}}), InputError);
}

TEST(DivisorCase, Examples) {
  EXPECT_EQ(divisor_case(3), 0);
  EXPECT_EQ(divisor_case(2, 3), 2);
  EXPECT_EQ(divisor_case(1, std::nullopt, true, 2), 3);
  EXPECT_EQ(divisor_case(1, std::nullopt, false, 4), 4);
  try {
    divisor_case(0);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("impossible case"), std::string::npos);
  }
  EXPECT_THROW(divisor_case(2, 5), PreconditionError);
  EXPECT_THROW(divisor_case(1), PreconditionError);
}

TEST(Catalog, ThreefoldRows) {
  auto rows = threefold_catalog();
  std::vector<int> deltas;
  for (const auto& r : rows) {
    deltas.push_back(r.report.delta);
    EXPECT_EQ(r.spec.total_dim(), 3);
  }
  EXPECT_EQ(deltas, (std::vector<int>{5, 3, 2, 2, 1, 1, 0}));
  EXPECT_EQ(rows[2].report.kind, DefectCase::surface_II);
  EXPECT_EQ(rows[3].report.kind, DefectCase::elliptic);
}

TEST(Catalog, NoThreefoldHasDeltaFour) {
  // every isogeny type of an abelian threefold
  std::vector<IsogenySpec> all;
  for (bool c1 : {false, true}) {
    all.push_back({{elliptic("E", c1, 3)}});
    for (bool c2 : {false, true}) {
      all.push_back({{elliptic("E", c1, 2), elliptic("F", c2)}});
      for (bool c3 : {false, true}) all.push_back({{elliptic("E", c1), elliptic("F", c2), elliptic("G", c3)}});
      all.push_back({{surface("S", AlbertType::II, 3), elliptic("E", c1)}});
      all.push_back({{surface("S", AlbertType::IV, 2), elliptic("E", c1)}});
      all.push_back({{surface("S", AlbertType::I, 1 + c2), elliptic("E", c1)}});
    }
  }
  all.push_back({{simple("A", 3)}});
  for (const auto& s : all) {
    int d = classify(s).delta;
    EXPECT_TRUE(d == 0 || d == 1 || d == 2 || d == 3 || d == 5) << d;
  }
}

TEST(Properties, PermutationInvariant) {
  std::mt19937 rng(101);
  for (int t = 0; t < 200; ++t) {
    IsogenySpec s = random_spec(rng);
    DefectReport r = classify(s);
    std::shuffle(s.factors.begin(), s.factors.end(), rng);
    DefectReport p = classify(s);
    EXPECT_EQ(p.delta, r.delta);
    EXPECT_EQ(p.kind, r.kind);
    EXPECT_EQ(p.witness_factor, r.witness_factor);
  }
}

TEST(Properties, SplittingMultiplicity) {
  std::mt19937 rng(103);
  for (int t = 0; t < 200; ++t) {
    IsogenySpec s = random_spec(rng);
    IsogenySpec split;
    for (const auto& f : s.factors)
      for (int i = 0; i < f.mult; ++i) {
        IsogenyFactor g = f;
        g.mult = 1;
        split.factors.push_back(g);
      }
    EXPECT_EQ(classify(split).delta, classify(s).delta);
  }
}

TEST(Properties, AddingFactorNeverDecreases) {
  std::mt19937 rng(107);
  for (int t = 0; t < 200; ++t) {
    IsogenySpec s = random_spec(rng);
    IsogenySpec more = s;
    more.factors.push_back(random_factor(rng, 99));
    EXPECT_GE(classify(more).delta, classify(s).delta);
  }
}

TEST(Properties, BoundedByPicardMinusOne) {
  std::mt19937 rng(109);
  for (int t = 0; t < 300; ++t) {
    IsogenySpec s = random_spec(rng);
    EXPECT_LE(classify(s).delta, picard_lower_bound(s) - 1);
  }
}

TEST(Picard, LowerBoundExamples) {
  EXPECT_EQ(picard_lower_bound({{elliptic("E", true, 3)}}), 9);
  EXPECT_EQ(picard_lower_bound({{elliptic("E", false, 3)}}), 6);
  EXPECT_EQ(picard_lower_bound({{elliptic("E", false), elliptic("F", false), elliptic("G", false)}}), 3);
  EXPECT_EQ(picard_lower_bound({{surface("S", AlbertType::II, 3, 2)}}), 10);
}
