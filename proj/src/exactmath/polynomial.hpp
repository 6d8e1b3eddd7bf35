#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defect::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p" or "p/q" with optional leading minus. Anything else, including
/// decimal notation, is rejected with InputError.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& q);

/// Dense univariate polynomial over Q, coefficients stored low-to-high with
/// no trailing zeros. The zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial from_integers(const std::vector<Integer>& coeffs);
  static Polynomial monomial(const Rational& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                         const Polynomial& b);
/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
std::pair<Polynomial, Polynomial> half_extended_gcd(const Polynomial& a,
                                                    const Polynomial& m);

/// Number of distinct real roots of p in the half-open interval (lo, hi],
/// by Sturm's theorem.
int count_real_roots(const Polynomial& p, const Rational& lo,
                     const Rational& hi);

/// Irreducibility over Q of a monic integer polynomial, decided by
/// Kronecker's interpolation search for monic integer factors.
bool is_irreducible(const Polynomial& monic_integer_poly);

}  // namespace defect::exact
