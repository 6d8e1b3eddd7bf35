#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cohomology.hpp"
#include "torus.hpp"

namespace defect {

/// S(x, y) = E(x, Jy), i.e. S = E*J. Symmetric for every NS class.
KMatrix symmetric_part(const ComplexTorus& a, const AlternatingForm& e);

/// Exact semidefiniteness of a symmetric matrix by pivoted Schur complements.
bool is_positive_semidefinite(const KMatrix& s);

/// Nonzero NS class with positive semidefinite symmetric part.
bool is_effective_class(const ComplexTorus& a, const AlternatingForm& e);

/// Saturated kernel of E. Throws unless E is effective.
Sublattice radical(const ComplexTorus& a, const AlternatingForm& e);
int iitaka_dimension(const ComplexTorus& a, const AlternatingForm& e);

struct EffectivityReport {
  AlternatingForm form;
  bool is_effective = false;
  int radical_rank = 0;
  int iitaka_dim = 0;
  std::optional<Sublattice> radical;
  std::optional<ComplexTorus> quotient;
  std::optional<AlternatingForm> induced;  // the class on the quotient
};

EffectivityReport analyze_class(const ComplexTorus& a, const AlternatingForm& e);

struct EffectiveClass {
  std::vector<long> coeffs;  // empty for structured candidates
  AlternatingForm form;
  int defect = 0;
};

struct SearchOptions {
  int box = 2;
  int threads = 1;
  bool structured_candidates = true;
  /// Called once per effective class found, serialized.
  std::function<void(const EffectiveClass&)> on_effective;
};

struct DefectSearchResult {
  int delta = 0;
  std::optional<AlternatingForm> witness;
  std::vector<long> witness_coeffs;
  size_t classes_scanned = 0;
  size_t effective_classes = 0;
  int search_box = 0;
};

/// NS(A) with the data reused across many classes: symmetric parts of the
/// basis and the pairwise wedge table.
class NsContext {
 public:
  explicit NsContext(const ComplexTorus& a);

  const ComplexTorus& torus() const { return torus_; }
  const NeronSeveri& ns() const { return ns_; }
  size_t rank() const { return ns_.rank(); }

  AlternatingForm form(std::span<const long> coeffs) const;
  bool is_effective(std::span<const long> coeffs) const;
  int defect(std::span<const long> coeffs) const;

  /// Reusable buffers for the integer paths.
  struct Scratch {
    std::vector<int64_t> sym;
    std::vector<int64_t> cup;
  };
  bool is_effective(std::span<const long> coeffs, Scratch& scratch) const;
  int defect(std::span<const long> coeffs, Scratch& scratch) const;

 private:
  ComplexTorus torus_;
  NeronSeveri ns_;
  std::vector<KMatrix> sym_;
  // Symmetric parts times one positive integer, when all are rational.
  std::vector<std::vector<int64_t>> int_sym_;
  // wedge(ns_k, ns_l) as integers, height C(2n,4).
  std::vector<std::vector<std::vector<int64_t>>> wedge_table_;
  size_t h4_ = 0;
};

/// Maximum of defect_of_class over effective integral combinations of the NS
/// basis with coefficients in [-box, box], plus the sums of fiber classes
/// of subsets of factors for elliptic products.
DefectSearchResult torus_defect(const ComplexTorus& a, const SearchOptions& options = {});
DefectSearchResult torus_defect(const NsContext& ctx, const SearchOptions& options);

}  // namespace defect
