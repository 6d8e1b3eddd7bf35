#pragma once

#include <optional>
#include <string>
#include <vector>

namespace defect {

enum class FactorKind { elliptic, surface, simple_other };
enum class AlbertType { I, II, III, IV };

const char* to_string(FactorKind k);
const char* to_string(AlbertType t);

/// A simple isogeny factor with its multiplicity.
struct IsogenyFactor {
  FactorKind kind = FactorKind::elliptic;
  int mult = 1;
  bool has_cm = false;                 // elliptic
  std::optional<AlbertType> albert;    // surface
  int picard = 0;                      // surface
  int dim = 1;                         // simple_other
  std::string label;

  int dimension() const;
};

struct IsogenySpec {
  std::vector<IsogenyFactor> factors;
  int total_dim() const;
};

/// Throws InputError naming the violated constraint.
void validate(const IsogenySpec& spec);

/// Merges factors that share a label into one factor with summed
/// multiplicity; unlabeled factors get distinct labels.
IsogenySpec normalize(const IsogenySpec& spec);

enum class DefectCase { zero, elliptic, surface_II, surface_I_or_IV };
const char* to_string(DefectCase c);

struct DefectReport {
  int delta = 0;
  DefectCase kind = DefectCase::zero;
  std::string witness_factor;  // empty in the zero case
  int k = 0;                   // elliptic case
  bool cm = false;             // elliptic case
};

DefectReport classify(const IsogenySpec& spec);

/// Defect of an effective divisor whose quotient has dimension b.
/// b = 2 needs rho_b; b = 1 needs cm and the multiplicity k.
int divisor_case(int b, std::optional<int> rho_b = std::nullopt,
                 std::optional<bool> cm = std::nullopt, std::optional<int> k = std::nullopt);

/// rho of a variety with the given isogeny decomposition, exact except for
/// simple factors of dimension >= 3 which count as rho = 1, End = Z.
int picard_lower_bound(const IsogenySpec& spec);

struct CatalogEntry {
  std::string name;
  std::string description;
  IsogenySpec spec;
  DefectReport report;
};

/// The abelian threefold cases, ordered by delta descending.
std::vector<CatalogEntry> threefold_catalog();

}  // namespace defect
