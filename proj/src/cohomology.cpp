#include "cohomology.hpp"

#include <bit>

namespace defect {

using exact::from_columns;
using exact::kernel_basis;
using exact::mat_vec;
using exact::rank;

namespace {

size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<size_t>(n - k + i) / static_cast<size_t>(i);
  return r;
}

// Sign of e_a ^ e_b relative to e_{a|b}: (-1)^#{(s in a, t in b) : s > t}.
int shuffle_sign(uint32_t a, uint32_t b) {
  int inversions = 0;
  while (b != 0) {
    int t = std::countr_zero(b);
    b &= b - 1;
    uint32_t above = t >= 31 ? 0u : (a >> (t + 1));
    inversions += std::popcount(above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

void require_compatible(const ComplexTorus& a, const ExteriorClass& c) {
  if (static_cast<size_t>(c.lattice_rank()) != a.lattice_rank())
    throw PreconditionError("class lives on a lattice of different rank");
}

}  // namespace

ExteriorClass::ExteriorClass(int lattice_rank, int degree)
    : n_(lattice_rank), k_(degree), coords_(binomial(lattice_rank, degree)) {
  if (degree < 0 || degree > lattice_rank)
    throw PreconditionError("exterior degree out of range");
}

ExteriorClass::ExteriorClass(int lattice_rank, int degree, QVector coords)
    : n_(lattice_rank), k_(degree), coords_(std::move(coords)) {
  if (degree < 0 || degree > lattice_rank || coords_.size() != binomial(lattice_rank, degree))
    throw PreconditionError("exterior class has wrong number of coordinates");
}

ExteriorClass ExteriorClass::basis_element(int lattice_rank,
                                           const std::vector<int>& indices) {
  ExteriorClass c(lattice_rank, static_cast<int>(indices.size()));
  uint32_t mask = 0;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= lattice_rank || (i > 0 && indices[i] <= indices[i - 1]))
      throw PreconditionError("basis element indices must be strictly increasing");
    mask |= 1u << indices[i];
  }
  WedgeBasis wb(lattice_rank, c.k_);
  c.coords_[static_cast<size_t>(wb.index_of(mask))] = 1;
  return c;
}

ExteriorClass ExteriorClass::one_form(std::span<const Rational> coeffs) {
  return ExteriorClass(static_cast<int>(coeffs.size()), 1,
                       QVector(coeffs.begin(), coeffs.end()));
}

ExteriorClass ExteriorClass::unit(int lattice_rank) {
  return ExteriorClass(lattice_rank, 0, QVector{Rational(1)});
}

ExteriorClass operator+(const ExteriorClass& a, const ExteriorClass& b) {
  if (a.n_ != b.n_ || a.k_ != b.k_) throw PreconditionError("adding classes of different type");
  ExteriorClass c = a;
  for (size_t i = 0; i < c.coords_.size(); ++i) c.coords_[i] += b.coords_[i];
  return c;
}

ExteriorClass operator-(const ExteriorClass& a, const ExteriorClass& b) {
  return a + Rational(-1) * b;
}

ExteriorClass operator*(const Rational& s, const ExteriorClass& a) {
  ExteriorClass c = a;
  for (auto& x : c.coords_) x *= s;
  return c;
}

ExteriorClass wedge(const ExteriorClass& u, const ExteriorClass& v) {
  if (u.lattice_rank() != v.lattice_rank())
    throw PreconditionError("wedge of classes on different lattices");
  const int n = u.lattice_rank();
  if (u.degree() + v.degree() > n)
    throw PreconditionError("wedge degree exceeds the top degree");
  WedgeBasis bu(n, u.degree()), bv(n, v.degree()), bw(n, u.degree() + v.degree());
  ExteriorClass w(n, u.degree() + v.degree());
  QVector coords(bw.size());
  for (size_t i = 0; i < bu.size(); ++i) {
    const Rational& x = u.coords()[i];
    if (sgn(x) == 0) continue;
    for (size_t j = 0; j < bv.size(); ++j) {
      const Rational& y = v.coords()[j];
      if (sgn(y) == 0) continue;
      uint32_t a = bu.mask(i), b = bv.mask(j);
      if ((a & b) != 0) continue;
      Rational term = x * y;
      if (shuffle_sign(a, b) < 0) term = -term;
      coords[static_cast<size_t>(bw.index_of(a | b))] += term;
    }
  }
  return ExteriorClass(n, u.degree() + v.degree(), std::move(coords));
}

ExteriorClass class_of_form(const AlternatingForm& e) {
  const int n = static_cast<int>(e.size());
  WedgeBasis pairs(n, 2);
  QVector coords(pairs.size());
  for (size_t k = 0; k < pairs.size(); ++k) {
    auto ij = pairs.indices(k);
    coords[k] = e(static_cast<size_t>(ij[0]), static_cast<size_t>(ij[1]));
  }
  return ExteriorClass(n, 2, std::move(coords));
}

AlternatingForm form_of_class(const ExteriorClass& c) {
  if (c.degree() != 2) throw PreconditionError("only degree-2 classes are forms");
  const size_t n = static_cast<size_t>(c.lattice_rank());
  WedgeBasis pairs(c.lattice_rank(), 2);
  QMatrix m(n, n);
  for (size_t k = 0; k < pairs.size(); ++k) {
    auto ij = pairs.indices(k);
    m(static_cast<size_t>(ij[0]), static_cast<size_t>(ij[1])) = c.coords()[k];
    m(static_cast<size_t>(ij[1]), static_cast<size_t>(ij[0])) = -c.coords()[k];
  }
  return AlternatingForm(std::move(m));
}

QMatrix cup_matrix(const ComplexTorus& a, const ExteriorClass& e) {
  require_compatible(a, e);
  const int n = static_cast<int>(a.lattice_rank());
  if (2 + e.degree() > n) {
    if (e.degree() == 2) throw PreconditionError("H^4 trivial in dimension one");
    throw PreconditionError("cup product target degree exceeds the top degree");
  }
  WedgeBasis src(n, 2);
  std::vector<QVector> cols;
  cols.reserve(src.size());
  for (size_t k = 0; k < src.size(); ++k)
    cols.push_back(wedge(ExteriorClass::basis_element(n, src.indices(k)), e).coords());
  return from_columns(cols, binomial(n, 2 + e.degree()));
}

NeronSeveri neron_severi(const ComplexTorus& a) {
  NeronSeveri ns;
  ns.forms = ns_basis(a);
  std::vector<QVector> cols;
  for (const auto& f : ns.forms) {
    ns.classes.push_back(class_of_form(f));
    cols.push_back(ns.classes.back().coords());
  }
  ns.embedding = from_columns(cols, binomial(static_cast<int>(a.lattice_rank()), 2));
  return ns;
}

int defect_of_class(const ComplexTorus& a, const NeronSeveri& ns,
                    const AlternatingForm& d) {
  if (a.dimension() < 2) throw PreconditionError("H^4 trivial in dimension one");
  if (!is_hodge_class(a, d)) throw PreconditionError("not a Hodge class");
  ExteriorClass dc = class_of_form(d);
  std::vector<QVector> cols;
  for (const auto& c : ns.classes) cols.push_back(wedge(c, dc).coords());
  const size_t height = binomial(static_cast<int>(a.lattice_rank()), 4);
  return static_cast<int>(ns.rank() - rank(from_columns(cols, height)));
}

int defect_of_class(const ComplexTorus& a, const AlternatingForm& d) {
  return defect_of_class(a, neron_severi(a), d);
}

ExteriorClass restrict_class(const ExteriorClass& c, const ZMatrix& basis) {
  if (basis.rows() != static_cast<size_t>(c.lattice_rank()))
    throw PreconditionError("restriction basis has the wrong ambient rank");
  const int r = static_cast<int>(basis.cols());
  if (c.degree() > r) throw PreconditionError("degree overflow: class degree exceeds sublattice rank");
  WedgeBasis src(c.lattice_rank(), c.degree()), dst(r, c.degree());
  QVector coords(dst.size());
  for (size_t s = 0; s < src.size(); ++s) {
    const Rational& x = c.coords()[s];
    if (sgn(x) == 0) continue;
    auto rows = src.indices(s);
    for (size_t t = 0; t < dst.size(); ++t) {
      auto cols = dst.indices(t);
      KMatrix minor(rows.size(), cols.size());
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
          minor(i, j) = AlgebraicReal(Rational(basis(static_cast<size_t>(rows[i]),
                                                     static_cast<size_t>(cols[j]))));
      coords[t] += x * exact::determinant(minor).rational_value();
    }
  }
  return ExteriorClass(r, c.degree(), std::move(coords));
}

QMatrix restriction_map(const ComplexTorus& a, const Sublattice& w) {
  if (w.ambient_rank() != a.lattice_rank())
    throw PreconditionError("sublattice of a different lattice");
  if (w.rank() < 2) throw PreconditionError("degree overflow: sublattice rank below 2");
  const int n = static_cast<int>(a.lattice_rank());
  WedgeBasis src(n, 2);
  std::vector<QVector> cols;
  for (size_t k = 0; k < src.size(); ++k)
    cols.push_back(restrict_class(ExteriorClass::basis_element(n, src.indices(k)), w.basis()).coords());
  return from_columns(cols, binomial(static_cast<int>(w.rank()), 2));
}

ExteriorClass poincare_dual(const ComplexTorus& a, const Sublattice& w) {
  if (w.ambient_rank() != a.lattice_rank())
    throw PreconditionError("sublattice of a different lattice");
  AdaptedBasis ab = adapted_basis(w);
  KMatrix jp = adapted_complex_structure(a, ab);
  for (size_t i = ab.sub_rank; i < jp.rows(); ++i)
    for (size_t k = 0; k < ab.sub_rank; ++k)
      if (!jp(i, k).is_zero())
        throw PreconditionError("not a complex subtorus: sublattice is not J-stable");
  const int n = static_cast<int>(a.lattice_rank());
  ExteriorClass acc = ExteriorClass::unit(n);
  for (size_t row = ab.sub_rank; row < a.lattice_rank(); ++row) {
    QVector phi(a.lattice_rank());
    for (size_t c = 0; c < a.lattice_rank(); ++c) phi[c] = ab.to_adapted(row, c);
    acc = wedge(acc, ExteriorClass::one_form(phi));
  }
  return acc;
}

int lambda_defect(const ComplexTorus& a, const std::vector<AlternatingForm>& lattice,
                  const AlternatingForm& d) {
  if (a.dimension() < 2) throw PreconditionError("H^4 trivial in dimension one");
  for (const auto& l : lattice)
    if (!is_hodge_class(a, l))
      throw PreconditionError("polarizing lattice is not inside NS");
  if (!is_hodge_class(a, d)) throw PreconditionError("not a Hodge class");
  if (lattice.empty()) return 0;
  const int n = static_cast<int>(a.lattice_rank());
  ExteriorClass dc = class_of_form(d);
  std::vector<QVector> src, img;
  for (const auto& l : lattice) {
    ExteriorClass lc = class_of_form(l);
    img.push_back(wedge(lc, dc).coords());
    src.push_back(lc.coords());
  }
  return static_cast<int>(rank(from_columns(src, binomial(n, 2))) -
                          rank(from_columns(img, binomial(n, 4))));
}

KernelComparison compare_restriction_and_cup_kernels(const ComplexTorus& a,
                                                     const NeronSeveri& ns,
                                                     const Sublattice& w) {
  QMatrix restr = restriction_map(a, w) * ns.embedding;
  ExteriorClass dual = poincare_dual(a, w);
  QMatrix cup = cup_matrix(a, dual) * ns.embedding;
  auto k_restr = kernel_basis(restr);
  auto k_cup = kernel_basis(cup);
  KernelComparison out;
  out.restriction_kernel = k_restr.size();
  out.cup_kernel = k_cup.size();
  out.restriction_in_cup = true;
  for (const auto& v : k_restr)
    if (!exact::is_zero_vector(mat_vec(cup, v))) out.restriction_in_cup = false;
  out.cup_in_restriction = true;
  for (const auto& v : k_cup)
    if (!exact::is_zero_vector(mat_vec(restr, v))) out.cup_in_restriction = false;
  return out;
}

}  // namespace defect
