#include <gtest/gtest.h>

#include <random>

#include "effectivity.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace testing_support;

namespace {

// Semidefinite iff every principal minor is nonnegative.
bool psd_by_minors(const KMatrix& s) {
  const size_t n = s.rows();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) idx.push_back(i);
    KMatrix m(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) m(i, j) = s(idx[i], idx[j]);
    if (exact::determinant(m).sign() < 0) return false;
  }
  return true;
}

// B^T D B with small integer B and diagonal D of mixed sign: symmetric,
// often singular, sometimes semidefinite.
KMatrix random_symmetric(size_t n, const FieldPtr& k, std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2), d(-1, 3);
  KMatrix b(n, n), diag(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) b(i, j) = AlgebraicReal(e(rng));
    int v = d(rng);
    diag(i, i) = k->degree() > 1 && v > 0 ? AlgebraicReal(v) * alpha(k) - AlgebraicReal(1)
                                          : AlgebraicReal(v);
  }
  return b.transpose() * diag * b;
}

AlternatingForm fiber(const ComplexTorus& a, size_t i) {
  return AlternatingForm::elementary(a.lattice_rank(), 2 * i, 2 * i + 1);
}

ComplexTorus pair_nonisogenous() {
  FieldPtr k = quartic();
  AlgebraicReal a = alpha(k);
  return product_of({curve(k, a), curve(k, AlgebraicReal(1) + a)});
}

ComplexTorus triple_nonisogenous() {
  FieldPtr k = quartic();
  AlgebraicReal a = alpha(k);
  return product_of({curve(k, a), curve(k, a * a), curve(k, AlgebraicReal(1) + a)});
}

}  // namespace

TEST(SymmetricPart, Examples) {
  ComplexTorus e = gaussian(rationals());
  KMatrix s = symmetric_part(e, AlternatingForm::elementary(2, 0, 1));
  EXPECT_EQ(s, KMatrix::identity(2));
  EXPECT_TRUE(symmetric_part(e, AlternatingForm(QMatrix(2, 2))).is_zero());
}

TEST(SymmetricPart, SymmetricOnNs) {
  std::mt19937 rng(71);
  FieldPtr k = quartic();
  std::vector<ComplexTorus> tori = {power(gaussian(k), 2),
                                    product_of({curve(k, alpha(k), ratio(1, 2)), gaussian(k)})};
  for (const auto& a : tori) {
    auto basis = ns_basis(a);
    for (int t = 0; t < 8; ++t) {
      KMatrix s = symmetric_part(a, random_combination(basis, rng, 3));
      EXPECT_EQ(s, s.transpose());
    }
  }
}

TEST(SymmetricPart, RejectsNonHodge) {
  ComplexTorus a = pair_nonisogenous();
  EXPECT_THROW(symmetric_part(a, AlternatingForm::elementary(4, 0, 2)), PreconditionError);
}

TEST(Semidefinite, MatchesPrincipalMinors) {
  std::mt19937 rng(73);
  int positive = 0;
  for (const FieldPtr& k : {rationals(), quartic()})
    for (int t = 0; t < 120; ++t) {
      KMatrix s = random_symmetric(2 + static_cast<size_t>(t % 4), k, rng);
      bool expect = psd_by_minors(s);
      positive += expect;
      EXPECT_EQ(is_positive_semidefinite(s), expect);
    }
  EXPECT_GT(positive, 10);
}

TEST(Effective, Examples) {
  ComplexTorus a = pair_nonisogenous();
  EXPECT_TRUE(is_effective_class(a, fiber(a, 0) + fiber(a, 1)));
  EXPECT_FALSE(is_effective_class(a, fiber(a, 0) - fiber(a, 1)));
  EXPECT_FALSE(is_effective_class(a, AlternatingForm(QMatrix(4, 4))));
}

TEST(Radical, Examples) {
  ComplexTorus a = pair_nonisogenous();
  AlternatingForm h = fiber(a, 0) + fiber(a, 1);
  EXPECT_EQ(radical(a, h).rank(), 0u);
  EXPECT_EQ(iitaka_dimension(a, h), 2);
  Sublattice r = radical(a, fiber(a, 1));
  EXPECT_EQ(r, factor_sublattice(a, {0}));
  EXPECT_EQ(iitaka_dimension(a, fiber(a, 1)), 1);
  EXPECT_THROW(radical(a, fiber(a, 0) - fiber(a, 1)), PreconditionError);
}

TEST(Radical, EvenStableAndPositiveQuotient) {
  std::mt19937 rng(79);
  FieldPtr k = quartic();
  std::vector<ComplexTorus> tori = {power(gaussian(rationals()), 3),
                                    product_of({gaussian(k), gaussian(k), curve(k, alpha(k))})};
  std::vector<size_t> gaussian_blocks = {3, 2};
  int checked = 0;
  for (size_t ti = 0; ti < tori.size(); ++ti) {
    const ComplexTorus& a = tori[ti];
    for (int t = 0; t < 20; ++t) {
      AlternatingForm e = random_effective(a, gaussian_blocks[ti], rng);
      ASSERT_TRUE(is_hodge_class(a, e));
      ASSERT_TRUE(is_effective_class(a, e));
      EffectivityReport rep = analyze_class(a, e);
      EXPECT_EQ(rep.radical_rank % 2, 0);
      EXPECT_GE(rep.iitaka_dim, 1);
      EXPECT_LE(rep.iitaka_dim, a.dimension());
      EXPECT_EQ(rep.iitaka_dim, a.dimension() - rep.radical_rank / 2);
      ASSERT_TRUE(rep.quotient.has_value());
      EXPECT_EQ(rep.quotient->dimension(), rep.iitaka_dim);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 40);
}

TEST(Defect, BoundedAndScaleInvariantOnEffectiveClasses) {
  std::mt19937 rng(83);
  ComplexTorus a = power(gaussian(rationals()), 3);
  NsContext ctx(a);
  const int rho = static_cast<int>(ctx.rank());
  QMatrix basis = ctx.ns().embedding;
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    AlternatingForm e = random_effective(a, 3, rng);
    // coordinates of e in the NS basis
    QVector target = class_of_form(e).coords();
    QMatrix aug(basis.rows(), basis.cols() + 1);
    for (size_t i = 0; i < basis.rows(); ++i) {
      for (size_t j = 0; j < basis.cols(); ++j) aug(i, j) = basis(i, j);
      aug(i, basis.cols()) = target[i];
    }
    auto ker = exact::kernel_basis(aug);
    ASSERT_EQ(ker.size(), 1u);
    std::vector<long> v(ctx.rank());
    const Rational& last = ker[0][ctx.rank()];
    for (size_t i = 0; i < v.size(); ++i) {
      Rational x = -ker[0][i] / last;
      ASSERT_EQ(x.get_den(), 1);
      v[i] = x.get_num().get_si();
    }
    ASSERT_TRUE(ctx.is_effective(v));
    int d = ctx.defect(v);
    EXPECT_GE(d, 0);
    EXPECT_LE(d, rho - 1);
    EXPECT_EQ(d, defect_of_class(a, ctx.ns(), ctx.form(v)));
    std::vector<long> v2 = v;
    for (auto& x : v2) x *= 2;
    EXPECT_TRUE(ctx.is_effective(v2));
    EXPECT_EQ(ctx.defect(v2), d);
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(Search, GaussianCube) {
  auto r = torus_defect(power(gaussian(rationals()), 3));
  EXPECT_EQ(r.delta, 5);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.classes_scanned, 1953124u + 7u);
}

TEST(Search, NonIsogenousTriple) {
  ComplexTorus a = triple_nonisogenous();
  auto r = torus_defect(a);
  EXPECT_EQ(r.delta, 1);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(defect_of_class(a, *r.witness), 1);
}

TEST(Search, NonIsogenousPair) {
  EXPECT_EQ(torus_defect(pair_nonisogenous()).delta, 1);
}

TEST(Search, BoxOnlyAgreesAndIsMonotone) {
  FieldPtr k = quartic();
  ComplexTorus a = product_of({gaussian(k), gaussian(k), curve(k, alpha(k))});
  int last = 0;
  for (int box = 1; box <= 3; ++box) {
    SearchOptions opt;
    opt.box = box;
    opt.structured_candidates = false;
    auto r = torus_defect(a, opt);
    EXPECT_GE(r.delta, last);
    EXPECT_LE(r.delta, picard_rank(a) - 1);
    last = r.delta;
  }
  EXPECT_EQ(last, 3);
}

TEST(Search, ThreadsGiveSameResult) {
  ComplexTorus a = power(gaussian(rationals()), 2);
  SearchOptions one, many;
  many.threads = 3;
  auto r1 = torus_defect(a, one), r3 = torus_defect(a, many);
  EXPECT_EQ(r1.delta, r3.delta);
  EXPECT_EQ(r1.witness_coeffs, r3.witness_coeffs);
  EXPECT_EQ(r1.classes_scanned, r3.classes_scanned);
  EXPECT_EQ(r1.effective_classes, r3.effective_classes);
}

TEST(Search, CallbackSeesEveryEffectiveClass) {
  ComplexTorus a = power(gaussian(rationals()), 2);
  SearchOptions opt;
  size_t seen = 0;
  int max_seen = 0;
  opt.on_effective = [&](const EffectiveClass& ec) {
    ++seen;
    max_seen = std::max(max_seen, ec.defect);
  };
  auto r = torus_defect(a, opt);
  EXPECT_EQ(seen, r.effective_classes);
  EXPECT_EQ(max_seen, r.delta);
}

TEST(Search, DimensionOneRejected) {
  EXPECT_THROW(torus_defect(gaussian(rationals())), PreconditionError);
}
