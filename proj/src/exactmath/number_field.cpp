#include "exactmath/number_field.hpp"

#include <algorithm>

#include "error.hpp"

namespace defect::exact {

namespace {

constexpr int kRefineSteps = 64;

struct Interval {
  Rational lo, hi;
};

Interval power_range(const Rational& lo, const Rational& hi, int k) {
  if (k == 0) return {1, 1};
  Rational a = 1, b = 1;
  for (int i = 0; i < k; ++i) {
    a *= lo;
    b *= hi;
  }
  if (k % 2 == 0 && sgn(lo) < 0 && sgn(hi) > 0)
    return {0, std::max(a, b)};
  return {std::min(a, b), std::max(a, b)};
}

// Enclosure of sum c_i t^i for t in [lo, hi].
Interval enclose(std::span<const Rational> c, const Rational& lo,
                 const Rational& hi) {
  Interval acc{0, 0};
  for (size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    Interval p = power_range(lo, hi, static_cast<int>(i));
    if (sgn(c[i]) > 0) {
      acc.lo += c[i] * p.lo;
      acc.hi += c[i] * p.hi;
    } else {
      acc.lo += c[i] * p.hi;
      acc.hi += c[i] * p.lo;
    }
  }
  return acc;
}

}  // namespace

std::shared_ptr<const RealNumberField> RealNumberField::create(
    std::vector<Integer> min_poly, Rational lo, Rational hi) {
  Polynomial p = Polynomial::from_integers(min_poly);
  if (p.degree() < 1) throw InputError("min_poly must have degree >= 1");
  if (p.leading() != 1) throw InputError("min_poly must be monic");
  if (!(lo < hi)) throw InputError("root_interval must satisfy lo < hi");
  if (gcd(p, p.derivative()).degree() > 0)
    throw InputError("min_poly must be squarefree");
  if (!is_irreducible(p)) throw InputError("min_poly must be irreducible over Q");
  if (sgn(p(lo)) * sgn(p(hi)) >= 0)
    throw InputError("min_poly must change sign across root_interval");
  if (count_real_roots(p, lo, hi) != 1)
    throw InputError("root_interval must isolate exactly one real root");

  auto field = std::shared_ptr<RealNumberField>(new RealNumberField());
  field->min_poly_ = p;
  field->integer_poly_ = std::move(min_poly);
  field->declared_lo_ = lo;
  field->declared_hi_ = hi;
  const int d = p.degree();
  if (d == 1) {
    Rational root = -p.coeff(0);
    field->lo_ = root;
    field->hi_ = root;
  } else {
    int sign_lo = sgn(p(lo));
    for (int step = 0; step < kRefineSteps; ++step) {
      Rational mid = (lo + hi) / 2;
      int s = sgn(p(mid));  // never 0: no rational roots when d >= 2
      if (s == sign_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    field->lo_ = lo;
    field->hi_ = hi;
  }

  // alpha^d = -(m_0 + ... + m_{d-1} alpha^{d-1}); higher powers by shifting.
  std::vector<Rational> cur(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = -p.coeff(i);
  for (int j = 0; j + 1 < d; ++j) {
    field->high_powers_.push_back(cur);
    std::vector<Rational> next(static_cast<size_t>(d));
    Rational top = cur[static_cast<size_t>(d - 1)];
    for (int i = d - 1; i >= 1; --i)
      next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
    for (int i = 0; i < d; ++i)
      next[static_cast<size_t>(i)] -= top * p.coeff(i);
    cur = std::move(next);
  }
  return field;
}

std::shared_ptr<const RealNumberField> RealNumberField::rationals() {
  return create({Integer(0), Integer(1)}, Rational(-1), Rational(1));
}

bool RealNumberField::same_field(const RealNumberField& other) const {
  if (this == &other) return true;
  if (!(min_poly_ == other.min_poly_)) return false;
  if (hi_ < other.lo_ || other.hi_ < lo_) return false;
  if (degree() == 1) return true;
  Rational a = std::min(lo_, other.lo_), b = std::max(hi_, other.hi_);
  return count_real_roots(min_poly_, a, b) == 1;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!a->same_field(*b))
    throw PreconditionError("elements belong to different number fields");
  return a;
}

AlgebraicReal::AlgebraicReal(const Rational& q) {
  if (sgn(q) != 0) c_.push_back(q);
}

AlgebraicReal::AlgebraicReal(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (field_ && static_cast<int>(c_.size()) > field_->degree())
    throw PreconditionError("too many power-basis coefficients for field");
  if (!field_ && c_.size() > 1)
    throw PreconditionError("irrational element without a field");
  trim();
}

AlgebraicReal AlgebraicReal::generator(const FieldPtr& field) {
  if (field->degree() == 1) return AlgebraicReal(field->lo());
  return AlgebraicReal(field, {Rational(0), Rational(1)});
}

void AlgebraicReal::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational AlgebraicReal::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational AlgebraicReal::rational_value() const {
  if (!is_rational()) throw PreconditionError("element is not rational");
  return coeff(0);
}

int AlgebraicReal::sign() const {
  if (c_.empty()) return 0;
  if (c_.size() == 1) return sgn(c_[0]);
  // Nonzero coefficients with an irreducible modulus: the value is nonzero,
  // so bisection terminates.
  Rational lo = field_->lo(), hi = field_->hi();
  const Polynomial& m = field_->min_poly();
  const int sign_lo = sgn(m(lo));
  for (;;) {
    Interval box = enclose(c_, lo, hi);
    if (sgn(box.lo) > 0) return 1;
    if (sgn(box.hi) < 0) return -1;
    Rational mid = (lo + hi) / 2;
    if (sgn(m(mid)) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double AlgebraicReal::approx() const {
  if (c_.empty()) return 0.0;
  double t = field_ ? Rational((field_->lo() + field_->hi()) / 2).get_d() : 0.0;
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

AlgebraicReal AlgebraicReal::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in number field");
  if (is_rational()) return AlgebraicReal(Rational(1) / c_[0]);
  Polynomial x(c_);
  auto [g, s] = half_extended_gcd(x, field_->min_poly());
  if (g.degree() != 0)
    throw ConsistencyError("min_poly is not irreducible: zero divisor found");
  return AlgebraicReal(field_, s.coeffs());
}

AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return AlgebraicReal(std::move(f), std::move(r));
}

AlgebraicReal operator-(const AlgebraicReal& a) {
  AlgebraicReal r = a;
  for (auto& x : r.c_) x = -x;
  return r;
}

AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b) {
  return a + (-b);
}

AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FieldPtr f = common_field(a.field_, b.field_);
  if (a.is_rational() || b.is_rational()) {
    const AlgebraicReal& scalar = a.is_rational() ? a : b;
    const AlgebraicReal& other = a.is_rational() ? b : a;
    std::vector<Rational> r(other.c_);
    for (auto& x : r) x *= scalar.c_[0];
    return AlgebraicReal(std::move(f), std::move(r));
  }
  const int d = f->degree();
  std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
  std::vector<Rational> r(static_cast<size_t>(d));
  for (size_t k = 0; k < prod.size(); ++k) {
    if (static_cast<int>(k) < d) {
      r[k] += prod[k];
      continue;
    }
    if (sgn(prod[k]) == 0) continue;
    const auto& red = f->high_powers()[k - static_cast<size_t>(d)];
    for (int i = 0; i < d; ++i) r[static_cast<size_t>(i)] += prod[k] * red[static_cast<size_t>(i)];
  }
  return AlgebraicReal(std::move(f), std::move(r));
}

AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b) {
  return a * b.inverse();
}

bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.c_.size() > 1 || b.c_.size() > 1) common_field(a.field_, b.field_);
  return a.c_ == b.c_;
}

}  // namespace defect::exact
