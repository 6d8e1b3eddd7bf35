#include "exactmath/linalg.hpp"

#include <utility>

namespace defect::exact {

Echelon bareiss_echelon(ZMatrix a) {
  const size_t m = a.rows(), n = a.cols();
  Echelon out;
  Integer prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r)
      for (size_t j = 0; j < n; ++j) swap(a(p, j), a(r, j));
    const Integer pivot = a(r, c);
    for (size_t i = r + 1; i < m; ++i) {
      const Integer lead = a(i, c);
      for (size_t j = c + 1; j < n; ++j) {
        Integer v = pivot * a(i, j) - lead * a(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, c) = 0;
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = std::move(a);
  return out;
}

ZMatrix clear_denominators(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
      const Integer& d = m(i, j).get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * l;
      z(i, j) = scaled.get_num();
    }
  }
  return z;
}

size_t rank(const ZMatrix& m) { return bareiss_echelon(m).pivots.size(); }

size_t rank(const QMatrix& m) { return rank(clear_denominators(m)); }

ZVector primitive_integer_vector(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) {
    const Integer& d = x.get_den();
    if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  ZVector z(v.size());
  Integer g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    z[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return z;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const size_t n = m.cols();
  Echelon e = bareiss_echelon(clear_denominators(m));
  const size_t rk = e.pivots.size();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : e.pivots) is_pivot[c] = true;

  std::vector<QVector> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector x(n);
    x[f] = 1;
    for (size_t ii = rk; ii-- > 0;) {
      const size_t pc = e.pivots[ii];
      Rational s = 0;
      for (size_t j = pc + 1; j < n; ++j)
        if (sgn(x[j]) != 0) s += Rational(e.rows(ii, j)) * x[j];
      x[pc] = -s / Rational(e.rows(ii, pc));
    }
    ZVector z = primitive_integer_vector(x);
    QVector q(n);
    for (size_t i = 0; i < n; ++i) q[i] = z[i];
    basis.push_back(std::move(q));
  }
  return basis;
}

QMatrix restrict_scalars(const KMatrix& m, const RealNumberField& field) {
  const size_t d = static_cast<size_t>(field.degree());
  QMatrix out(d * m.rows(), m.cols());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) {
      const auto& x = m(r, c);
      if (x.field() && !x.field()->same_field(field))
        throw PreconditionError("matrix entry from a different number field");
      for (size_t k = 0; k < d; ++k)
        out(k * m.rows() + r, c) = x.coeff(static_cast<int>(k));
    }
  return out;
}

QMatrix from_columns(const std::vector<QVector>& columns, size_t height) {
  QMatrix m(height, columns.size());
  for (size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != height)
      throw PreconditionError("column length mismatch");
    for (size_t i = 0; i < height; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QVector mat_vec(const QMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) throw PreconditionError("vector length mismatch");
  QVector out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (sgn(v[j]) != 0) out[i] += m(i, j) * v[j];
  return out;
}

bool is_zero_vector(std::span<const Rational> v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

AlgebraicReal determinant(KMatrix a) {
  if (a.rows() != a.cols()) throw PreconditionError("determinant of non-square matrix");
  const size_t n = a.rows();
  AlgebraicReal det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return {};
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    AlgebraicReal inv = a(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      AlgebraicReal f = a(i, c) * inv;
      for (size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace defect::exact
