#pragma once

#include <span>
#include <vector>

#include "exactmath/matrix.hpp"

namespace defect::exact {

/// Row echelon form of an integer matrix from fraction-free (Bareiss)
/// elimination. `pivots[i]` is the pivot column of row i.
struct Echelon {
  ZMatrix rows;
  std::vector<size_t> pivots;
};

Echelon bareiss_echelon(ZMatrix m);

/// Scales each row by the lcm of its denominators.
ZMatrix clear_denominators(const QMatrix& m);

size_t rank(const QMatrix& m);
size_t rank(const ZMatrix& m);

/// Basis of ker(m) over Q as primitive integer vectors, one per free column
/// of the echelon form, in increasing free-column order.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Rational matrix whose kernel is the set of rational v with m*v = 0 over
/// the field: row k*rows + r holds the alpha^k coordinate of row r.
QMatrix restrict_scalars(const KMatrix& m, const RealNumberField& field);

/// Clears denominators and divides out the content; zero stays zero.
ZVector primitive_integer_vector(std::span<const Rational> v);

/// Matrix with the given vectors as columns.
QMatrix from_columns(const std::vector<QVector>& columns, size_t height);

QVector mat_vec(const QMatrix& m, std::span<const Rational> v);
bool is_zero_vector(std::span<const Rational> v);

/// Determinant over the field by Gaussian elimination.
AlgebraicReal determinant(KMatrix m);

}  // namespace defect::exact
