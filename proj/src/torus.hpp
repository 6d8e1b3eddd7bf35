#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exactmath/lattice.hpp"
#include "exactmath/linalg.hpp"

namespace defect {

using exact::AlgebraicReal;
using exact::FieldPtr;
using exact::Integer;
using exact::KMatrix;
using exact::QMatrix;
using exact::QVector;
using exact::Rational;
using exact::ZMatrix;
using exact::ZVector;

/// One elliptic factor E_tau, tau = a + i*beta, of an explicit product.
struct EllipticBlock {
  std::string label;
  Rational a;
  AlgebraicReal beta;
  bool has_cm = false;
};

/// V / Lambda with Lambda = Z^{2n} and the complex structure given by the
/// matrix J of multiplication by i in the lattice basis. J has entries in a
/// real number field and satisfies J*J = -1.
///
/// Tori built by product() of elliptic curves remember their blocks: block
/// i occupies lattice coordinates 2i and 2i+1.
class ComplexTorus {
 public:
  ComplexTorus(FieldPtr field, KMatrix complex_structure,
               std::vector<EllipticBlock> blocks = {});

  int dimension() const { return static_cast<int>(j_.rows() / 2); }
  size_t lattice_rank() const { return j_.rows(); }
  const FieldPtr& field() const { return field_; }
  const KMatrix& complex_structure() const { return j_; }
  const std::vector<EllipticBlock>& blocks() const { return blocks_; }
  bool is_elliptic_product() const { return !blocks_.empty(); }

 private:
  FieldPtr field_;
  KMatrix j_;
  std::vector<EllipticBlock> blocks_;
};

/// Rational alternating form on the lattice; the class of a divisor when it
/// is compatible with J.
class AlternatingForm {
 public:
  AlternatingForm() = default;
  explicit AlternatingForm(QMatrix m);
  static AlternatingForm from_integers(const ZMatrix& m);
  /// The form x_i y_j - x_j y_i.
  static AlternatingForm elementary(size_t size, size_t i, size_t j);

  const QMatrix& matrix() const { return m_; }
  size_t size() const { return m_.rows(); }
  const Rational& operator()(size_t i, size_t j) const { return m_(i, j); }
  bool is_zero() const { return m_.is_zero(); }

  friend AlternatingForm operator+(const AlternatingForm& a,
                                   const AlternatingForm& b) {
    return AlternatingForm(a.m_ + b.m_);
  }
  friend AlternatingForm operator-(const AlternatingForm& a,
                                   const AlternatingForm& b) {
    return AlternatingForm(a.m_ - b.m_);
  }
  friend AlternatingForm operator*(const Rational& s, const AlternatingForm& a) {
    return AlternatingForm(s * a.m_);
  }
  friend bool operator==(const AlternatingForm& a, const AlternatingForm& b) {
    return a.m_ == b.m_;
  }

 private:
  QMatrix m_;
};

/// Saturated J-stable subgroup W of Z^{2n}, basis in column Hermite form.
class Sublattice {
 public:
  Sublattice(ZMatrix basis, size_t ambient_rank)
      : basis_(std::move(basis)), ambient_rank_(ambient_rank) {}

  const ZMatrix& basis() const { return basis_; }
  size_t rank() const { return basis_.cols(); }
  size_t ambient_rank() const { return ambient_rank_; }

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

 private:
  ZMatrix basis_;
  size_t ambient_rank_;
};

/// Unimodular change of basis Z^N -> Z^N whose first `sub_rank` basis
/// vectors span W. Coordinates transform by `to_adapted`; the adapted
/// basis vectors are the columns of `from_adapted`.
struct AdaptedBasis {
  ZMatrix to_adapted;
  ZMatrix from_adapted;
  size_t sub_rank = 0;
};

/// E_tau for tau = a + i*beta. The torus field is beta's field, else
/// `field`, else Q. Throws InputError "tau not in upper half plane" unless
/// beta > 0.
ComplexTorus elliptic(const Rational& a, const AlgebraicReal& beta,
                      FieldPtr field = nullptr, std::string label = {});

/// tau imaginary quadratic, i.e. beta^2 rational.
bool tau_is_imaginary_quadratic(const AlgebraicReal& beta);

ComplexTorus product(std::span<const ComplexTorus> factors);

/// rank of Hom(A, B): rational M with J_B M = M J_A.
int hom_rank(const ComplexTorus& a, const ComplexTorus& b);

/// E(Jx, Jy) = E(x, y) for all x, y.
bool is_hodge_class(const ComplexTorus& a, const AlternatingForm& e);

/// Q-basis of NS(A)_Q as primitive integral forms.
std::vector<AlternatingForm> ns_basis(const ComplexTorus& a);
int picard_rank(const ComplexTorus& a);

/// Saturates `basis` and checks J-stability and even rank.
Sublattice subtorus(const ComplexTorus& a, const ZMatrix& basis);
Sublattice zero_sublattice(const ComplexTorus& a);

AdaptedBasis adapted_basis(const Sublattice& w);

/// J written in the adapted basis of W (block upper triangular).
KMatrix adapted_complex_structure(const ComplexTorus& a, const AdaptedBasis& ab);

/// A / W on the complement basis.
ComplexTorus quotient(const ComplexTorus& a, const Sublattice& w);
/// W itself as a complex torus.
ComplexTorus subtorus_torus(const ComplexTorus& a, const Sublattice& w);

/// Sublattice spanned by the listed blocks of an elliptic product.
Sublattice factor_sublattice(const ComplexTorus& a,
                             const std::vector<size_t>& blocks);

}  // namespace defect
