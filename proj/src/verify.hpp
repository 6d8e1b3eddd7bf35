#pragma once

#include <map>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "effectivity.hpp"

namespace defect {

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
};

/// Isogeny decomposition of an explicit elliptic product: blocks with a
/// nonzero Hom are grouped, multiplicity is the group size.
IsogenySpec isogeny_spec_of(const ComplexTorus& a);

/// Restriction and cup kernels agree on every corank-2 factor sublattice.
CheckResult check_voisin(const ComplexTorus& a);
/// rho(C x T) = rho(C) + rho(T) + rk Hom(T, C) for every split of the blocks.
CheckResult check_kunneth(const ComplexTorus& a);
/// The product polarization cups injectively on H^2 (n >= 3).
CheckResult check_lefschetz(const ComplexTorus& a);

/// Expected defect of an effective class from its radical quotient B:
/// divisor_case(b, rho_B, cm(B), k_B). Memoized by radical.
class DivisorCasePredictor {
 public:
  explicit DivisorCasePredictor(const ComplexTorus& a) : a_(a) {}

  struct Prediction {
    int b = 0;
    int rho_b = 0;    // b = 2
    bool cm = false;  // b = 1
    int k = 0;        // b = 1
    int expected = 0;
    bool hom_path_agrees = true;  // b = 1: 1 + rk Hom(B, C) equals expected
  };

  const Prediction& predict(const AlternatingForm& e);

 private:
  ComplexTorus a_;
  std::map<std::vector<std::string>, Prediction> cache_;
};

struct OracleReport {
  DefectSearchResult search;
  DefectReport classified;
  size_t effective_checked = 0;
  size_t case_mismatches = 0;
  size_t bound_violations = 0;
  size_t scaling_violations = 0;
  std::string first_problem;

  bool agrees() const { return search.delta == classified.delta; }
  bool consistent() const { return case_mismatches == 0; }
  bool bounded_and_scaling() const { return bound_violations == 0 && scaling_violations == 0; }
};

/// Box search cross-checked against the classifier, with the per-class
/// divisor-case, bound and scaling checks on every effective class found.
OracleReport run_oracle(const ComplexTorus& a, int box, int threads = 1);
CheckResult check_oracle(const ComplexTorus& a, int box, int threads = 1);

}  // namespace defect
