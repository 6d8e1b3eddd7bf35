#pragma once

#include <vector>

#include "torus.hpp"
#include "wedge_basis.hpp"

namespace defect {

/// A class in H^k(A, Q) = Lambda^k Hom(Lambda, Q), in coordinates over the
/// lexicographic k-subset basis of the dual lattice basis.
class ExteriorClass {
 public:
  ExteriorClass(int lattice_rank, int degree);
  ExteriorClass(int lattice_rank, int degree, QVector coords);

  /// e*_{i1} ^ ... ^ e*_{ik} for strictly increasing 0-based indices.
  static ExteriorClass basis_element(int lattice_rank, const std::vector<int>& indices);
  /// sum_i c_i e*_i
  static ExteriorClass one_form(std::span<const Rational> coeffs);
  static ExteriorClass unit(int lattice_rank);

  int lattice_rank() const { return n_; }
  int degree() const { return k_; }
  const QVector& coords() const { return coords_; }
  bool is_zero() const { return exact::is_zero_vector(coords_); }

  friend ExteriorClass operator+(const ExteriorClass& a, const ExteriorClass& b);
  friend ExteriorClass operator-(const ExteriorClass& a, const ExteriorClass& b);
  friend ExteriorClass operator*(const Rational& s, const ExteriorClass& a);
  friend bool operator==(const ExteriorClass& a, const ExteriorClass& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.coords_ == b.coords_;
  }

 private:
  int n_, k_;
  QVector coords_;
};

/// Cup product with shuffle signs.
ExteriorClass wedge(const ExteriorClass& u, const ExteriorClass& v);

/// sum_{i<j} E(e_i, e_j) {i,j}
ExteriorClass class_of_form(const AlternatingForm& e);
AlternatingForm form_of_class(const ExteriorClass& c);

/// Matrix of v -> v ^ e from H^2 to H^{2+deg e}.
QMatrix cup_matrix(const ComplexTorus& a, const ExteriorClass& e);

/// NS(A)_Q with its basis as forms and as columns in H^2 coordinates.
struct NeronSeveri {
  std::vector<AlternatingForm> forms;
  std::vector<ExteriorClass> classes;
  QMatrix embedding;  // C(2n,2) x rho
  size_t rank() const { return forms.size(); }
};

NeronSeveri neron_severi(const ComplexTorus& a);

/// dim ker( NS(A)_Q --^[D]--> H^4(A, Q) ).
int defect_of_class(const ComplexTorus& a, const NeronSeveri& ns,
                    const AlternatingForm& d);
int defect_of_class(const ComplexTorus& a, const AlternatingForm& d);

/// Pullback of a class along the inclusion of the lattice spanned by the
/// columns of `basis`.
ExteriorClass restrict_class(const ExteriorClass& c, const ZMatrix& basis);

/// Pullback of 2-forms, Lambda^2(Lambda*) -> Lambda^2(W*).
QMatrix restriction_map(const ComplexTorus& a, const Sublattice& w);

/// Class of the subtorus W: pullback along A -> A/W of the generator of the
/// top exterior power of (Lambda/W)*, ordered by the adapted basis.
ExteriorClass poincare_dual(const ComplexTorus& a, const Sublattice& w);

/// dim ker( span(L)_Q --^[D]--> H^4 ).
int lambda_defect(const ComplexTorus& a, const std::vector<AlternatingForm>& lattice,
                  const AlternatingForm& d);

/// Kernels on NS(A)_Q of restriction to W and of cup with [W].
struct KernelComparison {
  size_t restriction_kernel = 0;
  size_t cup_kernel = 0;
  bool restriction_in_cup = false;
  bool cup_in_restriction = false;
  bool equal() const {
    return restriction_kernel == cup_kernel && restriction_in_cup && cup_in_restriction;
  }
};

KernelComparison compare_restriction_and_cup_kernels(const ComplexTorus& a,
                                                     const NeronSeveri& ns,
                                                     const Sublattice& w);

}  // namespace defect
