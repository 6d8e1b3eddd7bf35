#include "effectivity.hpp"

#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace defect {

namespace {

using int128 = __int128;

KMatrix to_field(const QMatrix& m) { return exact::convert<AlgebraicReal>(m); }

bool fits(int128 v) {
  return v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max();
}

// Fraction-free symmetric elimination: after each step the active block is
// a positive multiple of the Schur complement. nullopt on overflow.
std::optional<bool> psd_integer(std::vector<int64_t>& m, size_t n) {
  std::vector<size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  int64_t prev = 1;
  while (!active.empty()) {
    size_t pivot_pos = active.size();
    for (size_t a = 0; a < active.size(); ++a) {
      const size_t i = active[a];
      const int64_t d = m[i * n + i];
      if (d < 0) return false;
      if (d == 0) {
        for (size_t j : active)
          if (m[i * n + j] != 0) return false;
      } else if (pivot_pos == active.size()) {
        pivot_pos = a;
      }
    }
    if (pivot_pos == active.size()) return true;
    const size_t p = active[pivot_pos];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pivot_pos));
    const int64_t pv = m[p * n + p];
    for (size_t j : active)
      for (size_t l : active) {
        if (l < j) continue;
        int128 v = static_cast<int128>(pv) * m[j * n + l] -
                   static_cast<int128>(m[j * n + p]) * m[p * n + l];
        v /= prev;
        if (!fits(v)) return std::nullopt;
        m[j * n + l] = m[l * n + j] = static_cast<int64_t>(v);
      }
    prev = pv;
  }
  return true;
}

// Bareiss rank of a rows x cols row-major matrix. nullopt on overflow.
std::optional<size_t> rank_integer(std::vector<int64_t>& m, size_t rows, size_t cols) {
  size_t r = 0;
  int64_t prev = 1;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
    const int64_t pv = m[r * cols + c];
    for (size_t i = r + 1; i < rows; ++i) {
      const int64_t f = m[i * cols + c];
      for (size_t j = c + 1; j < cols; ++j) {
        int128 v = static_cast<int128>(pv) * m[i * cols + j] -
                   static_cast<int128>(f) * m[r * cols + j];
        v /= prev;
        if (!fits(v)) return std::nullopt;
        m[i * cols + j] = static_cast<int64_t>(v);
      }
      m[i * cols + c] = 0;
    }
    prev = pv;
    ++r;
  }
  return r;
}

std::optional<std::vector<int64_t>> as_int64(std::span<const Rational> v, const Integer& scale) {
  std::vector<int64_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational x = v[i] * scale;
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) return std::nullopt;
    out[i] = x.get_num().get_si();
  }
  return out;
}

}  // namespace

KMatrix symmetric_part(const ComplexTorus& a, const AlternatingForm& e) {
  if (!is_hodge_class(a, e)) throw PreconditionError("not a Hodge class");
  return to_field(e.matrix()) * a.complex_structure();
}

bool is_positive_semidefinite(const KMatrix& s) {
  const size_t n = s.rows();
  if (s.cols() != n) throw PreconditionError("semidefiniteness needs a square matrix");
  if (!(s == s.transpose())) throw PreconditionError("semidefiniteness needs a symmetric matrix");
  KMatrix m = s;
  std::vector<size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  while (!active.empty()) {
    size_t pivot_pos = active.size();
    for (size_t a = 0; a < active.size(); ++a) {
      const size_t i = active[a];
      const int sg = m(i, i).sign();
      if (sg < 0) return false;
      if (sg == 0) {
        for (size_t j : active)
          if (!m(i, j).is_zero()) return false;
      } else if (pivot_pos == active.size()) {
        pivot_pos = a;
      }
    }
    if (pivot_pos == active.size()) return true;
    const size_t p = active[pivot_pos];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pivot_pos));
    const AlgebraicReal inv = m(p, p).inverse();
    for (size_t j : active)
      for (size_t l : active) {
        if (l < j) continue;
        AlgebraicReal v = m(j, l) - m(j, p) * m(p, l) * inv;
        m(j, l) = v;
        m(l, j) = v;
      }
  }
  return true;
}

bool is_effective_class(const ComplexTorus& a, const AlternatingForm& e) {
  KMatrix s = symmetric_part(a, e);
  return !e.is_zero() && is_positive_semidefinite(s);
}

Sublattice radical(const ComplexTorus& a, const AlternatingForm& e) {
  if (!is_effective_class(a, e)) throw PreconditionError("class is not effective");
  auto kernel = exact::kernel_basis(e.matrix());
  if (kernel.empty()) return zero_sublattice(a);
  ZMatrix basis(a.lattice_rank(), kernel.size());
  for (size_t c = 0; c < kernel.size(); ++c) {
    ZVector v = exact::primitive_integer_vector(kernel[c]);
    for (size_t r = 0; r < v.size(); ++r) basis(r, c) = v[r];
  }
  try {
    return subtorus(a, basis);
  } catch (const PreconditionError& err) {
    throw ConsistencyError(std::string("radical of an effective class: ") + err.what());
  }
}

int iitaka_dimension(const ComplexTorus& a, const AlternatingForm& e) {
  const int b = a.dimension() - static_cast<int>(radical(a, e).rank()) / 2;
  if (b <= 0) throw ConsistencyError("impossible case: b = 0");
  return b;
}

EffectivityReport analyze_class(const ComplexTorus& a, const AlternatingForm& e) {
  EffectivityReport rep;
  rep.form = e;
  rep.is_effective = is_effective_class(a, e);
  if (!rep.is_effective) return rep;
  Sublattice rad = radical(a, e);
  rep.radical_rank = static_cast<int>(rad.rank());
  rep.iitaka_dim = a.dimension() - rep.radical_rank / 2;
  if (rep.iitaka_dim <= 0) throw ConsistencyError("impossible case: b = 0");
  AdaptedBasis ab = adapted_basis(rad);
  QMatrix p = exact::convert<Rational>(ab.from_adapted);
  QMatrix adapted = p.transpose() * e.matrix() * p;
  const size_t r = ab.sub_rank, n = a.lattice_rank();
  if (!adapted.block(0, 0, r, n).is_zero())
    throw ConsistencyError("class does not descend to the quotient by its radical");
  AlternatingForm induced(adapted.block(r, r, n - r, n - r));
  ComplexTorus q = quotient(a, rad);
  KMatrix s = symmetric_part(q, induced);
  if (!is_positive_semidefinite(s) || exact::determinant(s).is_zero())
    throw ConsistencyError("induced class on the quotient is not a polarization");
  rep.radical = std::move(rad);
  rep.quotient = std::move(q);
  rep.induced = std::move(induced);
  return rep;
}

NsContext::NsContext(const ComplexTorus& a) : torus_(a) {
  if (a.dimension() < 2) throw PreconditionError("H^4 trivial in dimension one");
  ns_ = neron_severi(a);
  const size_t n = a.lattice_rank(), rho = ns_.rank();
  WedgeBasis h4(static_cast<int>(n), 4);
  h4_ = h4.size();
  bool all_rational = true;
  Integer lcm = 1;
  for (const auto& f : ns_.forms) {
    sym_.push_back(symmetric_part(a, f));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const AlgebraicReal& x = sym_.back()(i, j);
        if (!x.is_rational()) {
          all_rational = false;
          continue;
        }
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.rational_value().get_den_mpz_t());
      }
  }
  if (all_rational) {
    for (const auto& s : sym_) {
      QVector flat(n * n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) flat[i * n + j] = s(i, j).rational_value();
      auto iv = as_int64(flat, lcm);
      if (!iv) {
        int_sym_.clear();
        break;
      }
      int_sym_.push_back(std::move(*iv));
    }
  }
  wedge_table_.assign(rho, std::vector<std::vector<int64_t>>(rho));
  for (size_t k = 0; k < rho && !wedge_table_.empty(); ++k)
    for (size_t l = 0; l < rho; ++l) {
      auto iv = as_int64(wedge(ns_.classes[k], ns_.classes[l]).coords(), Integer(1));
      if (!iv) {
        wedge_table_.clear();
        break;
      }
      wedge_table_[k][l] = std::move(*iv);
    }
}

AlternatingForm NsContext::form(std::span<const long> coeffs) const {
  const size_t n = torus_.lattice_rank();
  QMatrix m(n, n);
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) m = m + Rational(coeffs[k]) * ns_.forms[k].matrix();
  return AlternatingForm(std::move(m));
}

bool NsContext::is_effective(std::span<const long> coeffs) const {
  Scratch s;
  return is_effective(coeffs, s);
}

int NsContext::defect(std::span<const long> coeffs) const {
  Scratch s;
  return defect(coeffs, s);
}

bool NsContext::is_effective(std::span<const long> coeffs, Scratch& scratch) const {
  if (coeffs.size() != ns_.rank()) throw PreconditionError("coefficient vector has the wrong length");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c == 0; })) return false;
  const size_t n = torus_.lattice_rank();
  if (!int_sym_.empty()) {
    scratch.sym.assign(n * n, 0);
    bool overflow = false;
    for (size_t k = 0; k < coeffs.size() && !overflow; ++k) {
      if (coeffs[k] == 0) continue;
      for (size_t i = 0; i < n * n; ++i) {
        int64_t prod;
        if (__builtin_mul_overflow(int_sym_[k][i], static_cast<int64_t>(coeffs[k]), &prod) ||
            __builtin_add_overflow(scratch.sym[i], prod, &scratch.sym[i])) {
          overflow = true;
          break;
        }
      }
    }
    if (!overflow)
      if (auto r = psd_integer(scratch.sym, n)) return *r;
  }
  KMatrix s(n, n);
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) s = s + AlgebraicReal(Rational(coeffs[k])) * sym_[k];
  return is_positive_semidefinite(s);
}

int NsContext::defect(std::span<const long> coeffs, Scratch& scratch) const {
  if (coeffs.size() != ns_.rank()) throw PreconditionError("coefficient vector has the wrong length");
  const size_t rho = ns_.rank();
  if (!wedge_table_.empty()) {
    scratch.cup.assign(h4_ * rho, 0);
    bool overflow = false;
    for (size_t k = 0; k < rho && !overflow; ++k)
      for (size_t l = 0; l < rho && !overflow; ++l) {
        if (coeffs[l] == 0) continue;
        const auto& w = wedge_table_[k][l];
        for (size_t i = 0; i < h4_; ++i) {
          int64_t prod;
          int64_t& cell = scratch.cup[i * rho + k];
          if (__builtin_mul_overflow(w[i], static_cast<int64_t>(coeffs[l]), &prod) ||
              __builtin_add_overflow(cell, prod, &cell)) {
            overflow = true;
            break;
          }
        }
      }
    if (!overflow)
      if (auto r = rank_integer(scratch.cup, h4_, rho)) return static_cast<int>(rho - *r);
  }
  return defect_of_class(torus_, ns_, form(coeffs));
}

namespace {

struct Best {
  int delta = -1;
  std::optional<AlternatingForm> witness;
  std::vector<long> coeffs;
  size_t scanned = 0;
  size_t effective = 0;

  void offer(int d, const AlternatingForm& f, const std::vector<long>& c) {
    if (d > delta) {
      delta = d;
      witness = f;
      coeffs = c;
    }
  }
};

AlternatingForm fiber_sum(const ComplexTorus& a, uint32_t subset) {
  const size_t n = a.lattice_rank();
  QMatrix m(n, n);
  for (size_t i = 0; i < a.blocks().size(); ++i)
    if (subset >> i & 1u) {
      m(2 * i, 2 * i + 1) = 1;
      m(2 * i + 1, 2 * i) = -1;
    }
  return AlternatingForm(std::move(m));
}

}  // namespace

DefectSearchResult torus_defect(const ComplexTorus& a, const SearchOptions& options) {
  if (a.dimension() < 2) throw PreconditionError("H^4 trivial in dimension one");
  return torus_defect(NsContext(a), options);
}

DefectSearchResult torus_defect(const NsContext& ctx, const SearchOptions& options) {
  if (options.box < 0) throw PreconditionError("search box must be nonnegative");
  const ComplexTorus& a = ctx.torus();
  const size_t rho = ctx.rank();
  const long box = options.box;
  std::mutex callback_mutex;
  auto report = [&](const EffectiveClass& ec) {
    if (!options.on_effective) return;
    std::lock_guard<std::mutex> lock(callback_mutex);
    options.on_effective(ec);
  };

  Best structured;
  const size_t blocks = a.blocks().size();
  if (options.structured_candidates && a.is_elliptic_product() && blocks <= 16) {
    for (uint32_t subset = 1; subset < (1u << blocks); ++subset) {
      AlternatingForm f = fiber_sum(a, subset);
      ++structured.scanned;
      if (!is_effective_class(a, f)) {
        f = Rational(-1) * f;
        if (!is_effective_class(a, f)) continue;
      }
      ++structured.effective;
      EffectiveClass ec{{}, f, defect_of_class(a, ctx.ns(), f)};
      report(ec);
      structured.offer(ec.defect, f, {});
    }
  }

  // One chunk per value of the first coefficient.
  const size_t chunks = rho == 0 || box == 0 ? 0 : static_cast<size_t>(2 * box + 1);
  std::vector<Best> results(chunks);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    NsContext::Scratch scratch;
    std::vector<long> c(rho);
    for (size_t chunk = next++; chunk < chunks; chunk = next++) {
      Best& best = results[chunk];
      c[0] = -box + static_cast<long>(chunk);
      for (size_t i = 1; i < rho; ++i) c[i] = -box;
      while (true) {
        if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
          ++best.scanned;
          if (ctx.is_effective(c, scratch)) {
            ++best.effective;
            const int d = ctx.defect(c, scratch);
            if (d > best.delta || options.on_effective) {
              AlternatingForm f = ctx.form(c);
              report(EffectiveClass{c, f, d});
              best.offer(d, f, c);
            }
          }
        }
        size_t i = rho;
        while (i > 1 && c[i - 1] == box) c[--i] = -box;
        if (i <= 1) break;
        ++c[i - 1];
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(chunks)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Best total = structured;
  for (const auto& r : results) {
    total.scanned += r.scanned;
    total.effective += r.effective;
    if (r.witness) total.offer(r.delta, *r.witness, r.coeffs);
  }
  DefectSearchResult out;
  out.delta = std::max(total.delta, 0);
  out.witness = total.witness;
  out.witness_coeffs = total.coeffs;
  out.classes_scanned = total.scanned;
  out.effective_classes = total.effective;
  out.search_box = options.box;
  return out;
}

}  // namespace defect
