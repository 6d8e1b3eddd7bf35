#pragma once

#include "exactmath/matrix.hpp"

namespace defect::exact {

/// left * m * right = diagonal, with left/right unimodular and the diagonal
/// entries d_1 | d_2 | ... nonnegative. `left_inverse` is left^-1.
struct SmithForm {
  ZMatrix diagonal;
  ZMatrix left;
  ZMatrix left_inverse;
  ZMatrix right;
};

SmithForm smith_normal_form(const ZMatrix& m);

/// Canonical basis (as columns) of the lattice spanned by the columns of w:
/// the lower-triangular column Hermite form with positive pivots, zero
/// columns dropped.
ZMatrix hermite_column_basis(const ZMatrix& w);

/// Basis of (W (x) Q) cap Z^N for W given by independent columns, in
/// canonical Hermite form. Throws PreconditionError "not a sublattice basis"
/// on dependent columns.
ZMatrix saturate(const ZMatrix& w);

/// [L : W] for W of full rank inside its saturation L.
Integer saturation_index(const ZMatrix& w);

}  // namespace defect::exact
