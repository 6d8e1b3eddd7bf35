#include "exactmath/lattice.hpp"

#include <utility>

#include "exactmath/linalg.hpp"

namespace defect::exact {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

class SmithReducer {
 public:
  explicit SmithReducer(const ZMatrix& m)
      : a_(m),
        left_(ZMatrix::identity(m.rows())),
        left_inv_(ZMatrix::identity(m.rows())),
        right_(ZMatrix::identity(m.cols())) {}

  SmithForm run() {
    const size_t m = a_.rows(), n = a_.cols();
    for (size_t t = 0; t < m && t < n; ++t) {
      if (!settle(t)) break;
      if (a_(t, t) < 0) negate_row(t);
    }
    return {std::move(a_), std::move(left_), std::move(left_inv_),
            std::move(right_)};
  }

 private:
  // Brings the block [t.., t..] to have a(t,t) dividing everything with a
  // cleared row and column. Returns false when the block is zero.
  bool settle(size_t t) {
    const size_t m = a_.rows(), n = a_.cols();
    for (;;) {
      size_t bi = m, bj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (a_(i, j) != 0 &&
              (bi == m || abs(a_(i, j)) < abs(a_(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) return false;
      swap_rows(t, bi);
      swap_cols(t, bj);

      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (a_(i, t) == 0) continue;
        add_row(i, t, -floor_div(a_(i, t), a_(t, t)));
        if (a_(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (a_(t, j) == 0) continue;
        add_col(j, t, -floor_div(a_(t, j), a_(t, t)));
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (size_t i = t + 1; i < m && divides; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (a_(i, j) % a_(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return true;
    }
  }

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < a_.cols(); ++c) swap(a_(i, c), a_(j, c));
    for (size_t c = 0; c < left_.cols(); ++c) swap(left_(i, c), left_(j, c));
    for (size_t r = 0; r < left_inv_.rows(); ++r)
      swap(left_inv_(r, i), left_inv_(r, j));
  }

  void swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < a_.rows(); ++r) swap(a_(r, i), a_(r, j));
    for (size_t r = 0; r < right_.rows(); ++r) swap(right_(r, i), right_(r, j));
  }

  // row_i += q * row_j
  void add_row(size_t i, size_t j, const Integer& q) {
    for (size_t c = 0; c < a_.cols(); ++c) a_(i, c) += q * a_(j, c);
    for (size_t c = 0; c < left_.cols(); ++c) left_(i, c) += q * left_(j, c);
    for (size_t r = 0; r < left_inv_.rows(); ++r)
      left_inv_(r, j) -= q * left_inv_(r, i);
  }

  // col_i += q * col_j
  void add_col(size_t i, size_t j, const Integer& q) {
    for (size_t r = 0; r < a_.rows(); ++r) a_(r, i) += q * a_(r, j);
    for (size_t r = 0; r < right_.rows(); ++r) right_(r, i) += q * right_(r, j);
  }

  void negate_row(size_t i) {
    for (size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (size_t c = 0; c < left_.cols(); ++c) left_(i, c) = -left_(i, c);
    for (size_t r = 0; r < left_inv_.rows(); ++r)
      left_inv_(r, i) = -left_inv_(r, i);
  }

  ZMatrix a_, left_, left_inv_, right_;
};

}  // namespace

SmithForm smith_normal_form(const ZMatrix& m) { return SmithReducer(m).run(); }

ZMatrix hermite_column_basis(const ZMatrix& w) {
  ZMatrix a = w.transpose();  // generators as rows
  const size_t k = a.rows(), n = a.cols();
  auto row_axpy = [&](size_t i, size_t j, const Integer& q) {
    for (size_t c = 0; c < n; ++c) a(i, c) += q * a(j, c);
  };
  size_t r = 0;
  for (size_t c = 0; c < n && r < k; ++c) {
    for (;;) {
      size_t best = k;
      for (size_t i = r; i < k; ++i)
        if (a(i, c) != 0 && (best == k || abs(a(i, c)) < abs(a(best, c))))
          best = i;
      if (best == k) break;
      if (best != r)
        for (size_t cc = 0; cc < n; ++cc) swap(a(best, cc), a(r, cc));
      bool done = true;
      for (size_t i = r + 1; i < k; ++i) {
        if (a(i, c) == 0) continue;
        row_axpy(i, r, -floor_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (size_t cc = 0; cc < n; ++cc) a(r, cc) = -a(r, cc);
    for (size_t i = 0; i < r; ++i)
      if (a(i, c) != 0) row_axpy(i, r, -floor_div(a(i, c), a(r, c)));
    ++r;
  }
  return a.block(0, 0, r, n).transpose();
}

ZMatrix saturate(const ZMatrix& w) {
  if (w.cols() == 0) return w;
  if (rank(w) != w.cols())
    throw PreconditionError("not a sublattice basis");
  SmithForm s = smith_normal_form(w);
  return hermite_column_basis(s.left_inverse.block(0, 0, w.rows(), w.cols()));
}

Integer saturation_index(const ZMatrix& w) {
  if (w.cols() == 0) return 1;
  if (rank(w) != w.cols())
    throw PreconditionError("not a sublattice basis");
  SmithForm s = smith_normal_form(w);
  Integer index = 1;
  for (size_t i = 0; i < w.cols(); ++i) index *= s.diagonal(i, i);
  return index;
}

}  // namespace defect::exact
