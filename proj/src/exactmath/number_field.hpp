#pragma once

#include <memory>
#include <span>
#include <vector>

#include "exactmath/polynomial.hpp"

namespace defect::exact {

/// Q(alpha) for a real root alpha of a monic irreducible integer polynomial,
/// pinned down by a rational isolating interval. Immutable; shared between
/// elements through FieldPtr.
class RealNumberField {
 public:
  /// Validates monic, irreducible, squarefree, sign change across (lo, hi)
  /// and exactly one root inside (Sturm count). Throws InputError otherwise.
  static std::shared_ptr<const RealNumberField> create(
      std::vector<Integer> min_poly, Rational lo, Rational hi);

  /// Q itself, presented as Q(alpha) with alpha the root of t.
  static std::shared_ptr<const RealNumberField> rationals();

  int degree() const { return min_poly_.degree(); }
  const Polynomial& min_poly() const { return min_poly_; }
  const std::vector<Integer>& min_poly_integers() const { return integer_poly_; }

  /// The interval as given by the user.
  const Rational& declared_lo() const { return declared_lo_; }
  const Rational& declared_hi() const { return declared_hi_; }
  /// A refined isolating interval (lo == hi when alpha is rational).
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  /// Reduction of alpha^(d+j), j = 0..d-2, on the power basis.
  const std::vector<std::vector<Rational>>& high_powers() const {
    return high_powers_;
  }

  /// Same polynomial and the isolating intervals pick the same root.
  bool same_field(const RealNumberField& other) const;

 private:
  RealNumberField() = default;

  Polynomial min_poly_;
  std::vector<Integer> integer_poly_;
  Rational declared_lo_, declared_hi_;
  Rational lo_, hi_;
  std::vector<std::vector<Rational>> high_powers_;
};

using FieldPtr = std::shared_ptr<const RealNumberField>;

/// Element c0 + c1*alpha + ... + c_{d-1}*alpha^{d-1}. A default-constructed
/// or rational-constructed value carries no field and combines with any.
class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  AlgebraicReal(const Rational& q);  // NOLINT: rationals embed implicitly
  AlgebraicReal(long q) : AlgebraicReal(Rational(q)) {}  // NOLINT
  AlgebraicReal(FieldPtr field, std::vector<Rational> coeffs);

  static AlgebraicReal generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  /// Power-basis coordinates with trailing zeros removed.
  std::span<const Rational> coeffs() const { return c_; }
  Rational coeff(int i) const;

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_value() const;

  /// Exact sign of the real number.
  int sign() const;
  AlgebraicReal inverse() const;

  /// Interval evaluation at a rational approximation of alpha; for tests
  /// and diagnostics only.
  double approx() const;

  friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator-(const AlgebraicReal& a);
  AlgebraicReal& operator+=(const AlgebraicReal& b) { return *this = *this + b; }
  AlgebraicReal& operator-=(const AlgebraicReal& b) { return *this = *this - b; }
  AlgebraicReal& operator*=(const AlgebraicReal& b) { return *this = *this * b; }
  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b);

 private:
  void trim();
  FieldPtr field_;
  std::vector<Rational> c_;
};

/// Sign of x(alpha) in {-1, 0, +1}.
inline int nf_sign(const AlgebraicReal& x) { return x.sign(); }

/// Picks the non-null field of the two, checking compatibility.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace defect::exact
