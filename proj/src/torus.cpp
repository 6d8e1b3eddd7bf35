#include "torus.hpp"

#include "wedge_basis.hpp"

namespace defect {

using exact::convert;
using exact::kernel_basis;
using exact::rank;
using exact::restrict_scalars;

namespace {

KMatrix to_field(const ZMatrix& m) {
  KMatrix k(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) k(i, j) = AlgebraicReal(Rational(m(i, j)));
  return k;
}

KMatrix to_field(const QMatrix& m) { return convert<AlgebraicReal>(m); }

bool is_minus_identity(const KMatrix& sq) {
  for (size_t i = 0; i < sq.rows(); ++i)
    for (size_t j = 0; j < sq.cols(); ++j)
      if (!(sq(i, j) == AlgebraicReal(i == j ? -1 : 0))) return false;
  return true;
}

}  // namespace

ComplexTorus::ComplexTorus(FieldPtr field, KMatrix complex_structure,
                           std::vector<EllipticBlock> blocks)
    : field_(std::move(field)), j_(std::move(complex_structure)),
      blocks_(std::move(blocks)) {
  if (!field_) throw PreconditionError("complex torus needs a number field");
  if (j_.rows() != j_.cols() || j_.rows() == 0 || j_.rows() % 2 != 0)
    throw PreconditionError("complex structure must be a nonempty even square matrix");
  for (size_t i = 0; i < j_.rows(); ++i)
    for (size_t k = 0; k < j_.cols(); ++k)
      if (j_(i, k).field() && !j_(i, k).field()->same_field(*field_))
        throw PreconditionError("complex structure entry outside the ambient field");
  if (!is_minus_identity(j_ * j_))
    throw ConsistencyError("inconsistent complex structure: J^2 != -I");
  if (!blocks_.empty() && blocks_.size() * 2 != j_.rows())
    throw PreconditionError("block list does not match the lattice rank");
}

AlternatingForm::AlternatingForm(QMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw InputError("alternating form must be a square matrix");
  for (size_t i = 0; i < m_.rows(); ++i)
    for (size_t j = 0; j <= i; ++j)
      if (m_(i, j) != -m_(j, i))
        throw InputError("alternating form must be antisymmetric");
}

AlternatingForm AlternatingForm::from_integers(const ZMatrix& m) {
  return AlternatingForm(convert<Rational>(m));
}

AlternatingForm AlternatingForm::elementary(size_t size, size_t i, size_t j) {
  QMatrix m(size, size);
  m(i, j) = 1;
  m(j, i) = -1;
  return AlternatingForm(std::move(m));
}

bool tau_is_imaginary_quadratic(const AlgebraicReal& beta) {
  return (beta * beta).is_rational();
}

ComplexTorus elliptic(const Rational& a, const AlgebraicReal& beta,
                      FieldPtr field, std::string label) {
  if (beta.sign() <= 0) throw InputError("tau not in upper half plane");
  FieldPtr k = exact::common_field(beta.field(), field);
  if (!k) k = exact::RealNumberField::rationals();
  const AlgebraicReal inv = beta.inverse();
  const AlgebraicReal av(a);
  KMatrix j(2, 2);
  // i*1 = -a/beta + (1/beta) tau ;  i*tau = -(beta + a^2/beta) + (a/beta) tau
  j(0, 0) = -(av * inv);
  j(1, 0) = inv;
  j(0, 1) = -(beta + av * av * inv);
  j(1, 1) = av * inv;
  EllipticBlock block{std::move(label), a, beta, tau_is_imaginary_quadratic(beta)};
  return ComplexTorus(std::move(k), std::move(j), {std::move(block)});
}

ComplexTorus product(std::span<const ComplexTorus> factors) {
  if (factors.empty()) throw PreconditionError("product of no factors");
  FieldPtr k = factors.front().field();
  size_t total = 0;
  bool all_blocks = true;
  for (const auto& f : factors) {
    if (!f.field()->same_field(*k))
      throw PreconditionError("product factors must share the ambient field");
    total += f.lattice_rank();
    all_blocks = all_blocks && f.is_elliptic_product();
  }
  KMatrix j(total, total);
  std::vector<EllipticBlock> blocks;
  size_t off = 0;
  for (const auto& f : factors) {
    const KMatrix& jf = f.complex_structure();
    for (size_t r = 0; r < jf.rows(); ++r)
      for (size_t c = 0; c < jf.cols(); ++c) j(off + r, off + c) = jf(r, c);
    off += jf.rows();
    if (all_blocks)
      blocks.insert(blocks.end(), f.blocks().begin(), f.blocks().end());
  }
  return ComplexTorus(k, std::move(j), std::move(blocks));
}

int hom_rank(const ComplexTorus& a, const ComplexTorus& b) {
  if (!a.field()->same_field(*b.field()))
    throw PreconditionError("hom_rank needs a common ambient field");
  const KMatrix& ja = a.complex_structure();
  const KMatrix& jb = b.complex_structure();
  const size_t ra = ja.rows(), rb = jb.rows();
  // Unknown M is rb x ra, unknown index u = i*ra + j.
  KMatrix system(rb * ra, rb * ra);
  for (size_t p = 0; p < rb; ++p)
    for (size_t q = 0; q < ra; ++q) {
      const size_t row = p * ra + q;
      for (size_t i = 0; i < rb; ++i) system(row, i * ra + q) += jb(p, i);
      for (size_t j = 0; j < ra; ++j) system(row, p * ra + j) -= ja(j, q);
    }
  QMatrix rational = restrict_scalars(system, *a.field());
  return static_cast<int>(rb * ra - rank(rational));
}

bool is_hodge_class(const ComplexTorus& a, const AlternatingForm& e) {
  if (e.size() != a.lattice_rank())
    throw PreconditionError("form size does not match the lattice rank");
  const KMatrix& j = a.complex_structure();
  KMatrix ek = to_field(e.matrix());
  return j.transpose() * ek * j == ek;
}

std::vector<AlternatingForm> ns_basis(const ComplexTorus& a) {
  const size_t n = a.lattice_rank();
  const KMatrix& j = a.complex_structure();
  WedgeBasis pairs(static_cast<int>(n), 2);
  // Column (i<j): entries (p<q) of J^T E J - E for E the elementary form.
  KMatrix system(pairs.size(), pairs.size());
  for (size_t col = 0; col < pairs.size(); ++col) {
    auto ij = pairs.indices(col);
    const size_t i = static_cast<size_t>(ij[0]), jj = static_cast<size_t>(ij[1]);
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto pq = pairs.indices(row);
      const size_t p = static_cast<size_t>(pq[0]), q = static_cast<size_t>(pq[1]);
      AlgebraicReal v = j(i, p) * j(jj, q) - j(jj, p) * j(i, q);
      if (row == col) v -= AlgebraicReal(1);
      system(row, col) = v;
    }
  }
  std::vector<AlternatingForm> basis;
  for (const auto& v : kernel_basis(restrict_scalars(system, *a.field()))) {
    QMatrix m(n, n);
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (sgn(v[k]) == 0) continue;
      auto ij = pairs.indices(k);
      m(static_cast<size_t>(ij[0]), static_cast<size_t>(ij[1])) = v[k];
      m(static_cast<size_t>(ij[1]), static_cast<size_t>(ij[0])) = -v[k];
    }
    basis.emplace_back(std::move(m));
  }
  return basis;
}

int picard_rank(const ComplexTorus& a) {
  return static_cast<int>(ns_basis(a).size());
}

AdaptedBasis adapted_basis(const Sublattice& w) {
  const size_t n = w.ambient_rank();
  if (w.rank() == 0)
    return {ZMatrix::identity(n), ZMatrix::identity(n), 0};
  exact::SmithForm s = exact::smith_normal_form(w.basis());
  for (size_t i = 0; i < w.rank(); ++i)
    if (s.diagonal(i, i) != 1)
      throw PreconditionError("sublattice is not saturated");
  return {s.left, s.left_inverse, w.rank()};
}

KMatrix adapted_complex_structure(const ComplexTorus& a, const AdaptedBasis& ab) {
  return to_field(ab.to_adapted) * a.complex_structure() * to_field(ab.from_adapted);
}

Sublattice zero_sublattice(const ComplexTorus& a) {
  return Sublattice(ZMatrix(a.lattice_rank(), 0), a.lattice_rank());
}

Sublattice subtorus(const ComplexTorus& a, const ZMatrix& basis) {
  if (basis.rows() != a.lattice_rank())
    throw PreconditionError("sublattice basis has the wrong ambient rank");
  if (basis.cols() % 2 != 0)
    throw PreconditionError("not a complex subtorus: odd lattice rank");
  Sublattice w(exact::saturate(basis), a.lattice_rank());
  if (w.rank() % 2 != 0)
    throw PreconditionError("not a complex subtorus: odd lattice rank");
  AdaptedBasis ab = adapted_basis(w);
  KMatrix jp = adapted_complex_structure(a, ab);
  const size_t r = ab.sub_rank;
  for (size_t i = r; i < jp.rows(); ++i)
    for (size_t k = 0; k < r; ++k)
      if (!jp(i, k).is_zero())
        throw PreconditionError("not a complex subtorus: sublattice is not J-stable");
  return w;
}

ComplexTorus quotient(const ComplexTorus& a, const Sublattice& w) {
  if (w.rank() == 0) return a;
  AdaptedBasis ab = adapted_basis(w);
  KMatrix jp = adapted_complex_structure(a, ab);
  const size_t r = ab.sub_rank, n = jp.rows();
  if (r == n) throw PreconditionError("quotient by the full lattice is a point");
  return ComplexTorus(a.field(), jp.block(r, r, n - r, n - r));
}

ComplexTorus subtorus_torus(const ComplexTorus& a, const Sublattice& w) {
  if (w.rank() == 0) throw PreconditionError("zero subtorus has no complex structure");
  AdaptedBasis ab = adapted_basis(w);
  KMatrix jp = adapted_complex_structure(a, ab);
  return ComplexTorus(a.field(), jp.block(0, 0, ab.sub_rank, ab.sub_rank));
}

Sublattice factor_sublattice(const ComplexTorus& a,
                             const std::vector<size_t>& blocks) {
  if (!a.is_elliptic_product())
    throw PreconditionError("factor sublattices need an explicit elliptic product");
  ZMatrix basis(a.lattice_rank(), 2 * blocks.size());
  for (size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k] >= a.blocks().size())
      throw PreconditionError("block index out of range");
    basis(2 * blocks[k], 2 * k) = 1;
    basis(2 * blocks[k] + 1, 2 * k + 1) = 1;
  }
  return subtorus(a, basis);
}

}  // namespace defect
