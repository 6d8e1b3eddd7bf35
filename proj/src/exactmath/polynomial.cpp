#include "exactmath/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "error.hpp"

namespace defect::exact {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
  });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  if (!all_digits(body))
    throw InputError("malformed integer \"" + std::string(text) + "\"");
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!all_digits(den))
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  Integer d(std::string(den), 10);
  if (d == 0)
    throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& z : coeffs) c.emplace_back(z);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<size_t>(k) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return Rational(1) / leading() * *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& p) {
  std::vector<Rational> r = p.c_;
  for (auto& x : r) x = -x;
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> r = p.c_;
  for (auto& x : r) x *= s;
  return Polynomial(std::move(r));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                         const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> quo(static_cast<size_t>(a.degree() - b.degree()) + 1);
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational q = rem[static_cast<size_t>(k + db)] / b.leading();
    quo[static_cast<size_t>(k)] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(k + j)] -= q * b.coeffs()[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(db));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::pair<Polynomial, Polynomial> half_extended_gcd(const Polynomial& a,
                                                    const Polynomial& m) {
  // Invariant: r0 = s0*a mod m, r1 = s1*a mod m.
  Polynomial r0 = m, r1 = divmod(a, m).second;
  Polynomial s0, s1 = Polynomial({Rational(1)});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Polynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {Polynomial{}, Polynomial{}};
  Rational lc = r0.leading();
  Polynomial s = divmod(Rational(1) / lc * s0, m).second;
  return {r0.monic(), s};
}

namespace {

int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const Polynomial& p, const Rational& lo,
                     const Rational& hi) {
  if (p.degree() <= 0) return 0;
  Polynomial f = divmod(p, gcd(p, p.derivative())).first;  // squarefree part
  std::vector<Polynomial> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

namespace {

std::vector<Integer> signed_divisors(const Integer& value) {
  Integer v = abs(value);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    if (d * d != v) out.push_back(v / d);
  }
  std::vector<Integer> both;
  for (const auto& d : out) {
    both.push_back(d);
    both.push_back(-d);
  }
  return both;
}

// Lagrange interpolation through (xs[i], ys[i]).
Polynomial interpolate(const std::vector<Rational>& xs,
                       const std::vector<Rational>& ys) {
  Polynomial acc;
  for (size_t i = 0; i < xs.size(); ++i) {
    Polynomial term({Rational(1)});
    Rational denom = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      term = term * Polynomial({-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    acc = acc + (ys[i] / denom) * term;
  }
  return acc;
}

constexpr long kMaxKroneckerCandidates = 2'000'000;

}  // namespace

bool is_irreducible(const Polynomial& p) {
  const int d = p.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  for (const auto& c : p.coeffs())
    if (c.get_den() != 1)
      throw PreconditionError("irreducibility test needs integer coefficients");
  if (p.leading() != 1)
    throw PreconditionError("irreducibility test needs a monic polynomial");

  // Evaluation points ranked by divisor count of p(x); a zero means a
  // rational root.
  std::vector<std::pair<size_t, long>> ranked;
  for (long x = -24; x <= 24; ++x) {
    Rational v = p(Rational(x));
    if (sgn(v) == 0) return false;
    ranked.emplace_back(signed_divisors(v.get_num()).size(), x);
  }
  std::sort(ranked.begin(), ranked.end());

  long budget = kMaxKroneckerCandidates;
  for (int k = 1; k <= d / 2; ++k) {
    std::vector<Rational> xs;
    std::vector<std::vector<Integer>> choices;
    for (int i = 0; i < k; ++i) {
      Rational x(ranked[static_cast<size_t>(i)].second);
      xs.push_back(x);
      choices.push_back(signed_divisors(p(x).get_num()));
    }
    std::vector<Rational> ys(static_cast<size_t>(k));
    bool found = false;
    // Enumerate g(xs[i]) over divisors; g = x^k + h with deg h < k.
    std::function<void(size_t)> search = [&](size_t i) {
      if (found) return;
      if (i == xs.size()) {
        if (--budget < 0)
          throw InputError("irreducibility certification exceeded budget");
        std::vector<Rational> hs(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) {
          Rational xk = 1;
          for (int e = 0; e < k; ++e) xk *= xs[j];
          hs[j] = ys[j] - xk;
        }
        Polynomial g = Polynomial::monomial(1, k) + interpolate(xs, hs);
        for (const auto& c : g.coeffs())
          if (c.get_den() != 1) return;
        if (divmod(p, g).second.is_zero()) found = true;
        return;
      }
      for (const auto& v : choices[i]) {
        ys[i] = v;
        search(i + 1);
        if (found) return;
      }
    };
    search(0);
    if (found) return false;
  }
  return true;
}

}  // namespace defect::exact
