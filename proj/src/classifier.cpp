#include "classifier.hpp"

#include <map>

#include "error.hpp"

namespace defect {

const char* to_string(FactorKind k) {
  switch (k) {
    case FactorKind::elliptic: return "elliptic";
    case FactorKind::surface: return "surface";
    case FactorKind::simple_other: return "simple_other";
  }
  return "?";
}

const char* to_string(AlbertType t) {
  switch (t) {
    case AlbertType::I: return "I";
    case AlbertType::II: return "II";
    case AlbertType::III: return "III";
    case AlbertType::IV: return "IV";
  }
  return "?";
}

const char* to_string(DefectCase c) {
  switch (c) {
    case DefectCase::zero: return "zero";
    case DefectCase::elliptic: return "elliptic";
    case DefectCase::surface_II: return "surface_II";
    case DefectCase::surface_I_or_IV: return "surface_I_or_IV";
  }
  return "?";
}

int IsogenyFactor::dimension() const {
  switch (kind) {
    case FactorKind::elliptic: return 1;
    case FactorKind::surface: return 2;
    case FactorKind::simple_other: return dim;
  }
  return 0;
}

int IsogenySpec::total_dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.dimension() * f.mult;
  return d;
}

namespace {

void validate_factor(const IsogenyFactor& f, const std::string& where) {
  if (f.mult < 1) throw InputError(where + ": multiplicity must be a positive integer");
  switch (f.kind) {
    case FactorKind::elliptic:
      break;
    case FactorKind::surface:
      if (!f.albert) throw InputError(where + ": surface factor needs an Albert type");
      if (*f.albert == AlbertType::III)
        throw InputError(where + ": Albert type III does not occur for simple abelian surfaces");
      if (*f.albert == AlbertType::II && f.picard != 3)
        throw InputError(where + ": type II surface requires picard = 3");
      if (*f.albert == AlbertType::IV && f.picard != 2)
        throw InputError(where + ": type IV surface requires picard = 2");
      if (*f.albert == AlbertType::I && f.picard != 1 && f.picard != 2)
        throw InputError(where + ": type I surface requires picard in {1, 2}");
      break;
    case FactorKind::simple_other:
      if (f.dim < 3) throw InputError(where + ": simple_other factor needs dim >= 3");
      break;
  }
}

bool same_factor(const IsogenyFactor& a, const IsogenyFactor& b) {
  return a.kind == b.kind && a.has_cm == b.has_cm && a.albert == b.albert &&
         a.picard == b.picard && a.dimension() == b.dimension();
}

int choose2(int m) { return m * (m - 1) / 2; }

}  // namespace

void validate(const IsogenySpec& spec) {
  if (spec.factors.empty()) throw InputError("factors: at least one factor is required");
  std::map<std::string, const IsogenyFactor*> seen;
  for (size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    validate_factor(f, "factors[" + std::to_string(i) + "]");
    if (f.label.empty()) continue;
    auto [it, fresh] = seen.emplace(f.label, &f);
    if (!fresh && !same_factor(*it->second, f))
      throw InputError("factors[" + std::to_string(i) + "]: label '" + f.label +
                       "' reused for a different factor");
  }
  if (spec.total_dim() < 2)
    throw InputError("factors: total dimension must be at least 2");
}

IsogenySpec normalize(const IsogenySpec& spec) {
  validate(spec);
  IsogenySpec out;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < spec.factors.size(); ++i) {
    IsogenyFactor f = spec.factors[i];
    if (f.label.empty()) f.label = "#" + std::to_string(i + 1);
    auto it = index.find(f.label);
    if (it != index.end()) {
      out.factors[it->second].mult += f.mult;
      continue;
    }
    index.emplace(f.label, out.factors.size());
    out.factors.push_back(std::move(f));
  }
  return out;
}

DefectReport classify(const IsogenySpec& input) {
  IsogenySpec spec = normalize(input);
  DefectReport best;
  auto rank = [](DefectCase c) { return c == DefectCase::elliptic ? 1 : 0; };
  for (const auto& f : spec.factors) {
    DefectReport cand;
    switch (f.kind) {
      case FactorKind::elliptic:
        cand.kind = DefectCase::elliptic;
        cand.k = f.mult;
        cand.cm = f.has_cm;
        cand.delta = divisor_case(1, std::nullopt, f.has_cm, f.mult);
        break;
      case FactorKind::surface:
        cand.delta = divisor_case(2, f.picard);
        cand.kind = *f.albert == AlbertType::II ? DefectCase::surface_II
                                                 : DefectCase::surface_I_or_IV;
        break;
      case FactorKind::simple_other:
        continue;
    }
    if (cand.delta == 0) continue;
    cand.witness_factor = f.label;
    const bool better =
        cand.delta > best.delta ||
        (cand.delta == best.delta &&
         (rank(cand.kind) > rank(best.kind) ||
          (rank(cand.kind) == rank(best.kind) && cand.witness_factor < best.witness_factor)));
    if (better) best = cand;
  }
  return best;
}

int divisor_case(int b, std::optional<int> rho_b, std::optional<bool> cm, std::optional<int> k) {
  if (b <= 0) throw PreconditionError("impossible case: b = " + std::to_string(b));
  if (b >= 3) return 0;
  if (b == 2) {
    if (!rho_b || *rho_b < 1 || *rho_b > 4)
      throw PreconditionError("b = 2 needs the Picard rank of the quotient surface in {1,...,4}");
    return *rho_b - 1;
  }
  if (!cm || !k || *k < 1)
    throw PreconditionError("b = 1 needs the CM flag and a multiplicity k >= 1");
  return *cm ? 2 * *k - 1 : *k;
}

int picard_lower_bound(const IsogenySpec& input) {
  IsogenySpec spec = normalize(input);
  int rho = 0;
  for (const auto& f : spec.factors) {
    const int m = f.mult;
    switch (f.kind) {
      case FactorKind::elliptic:
        rho += f.has_cm ? m * m : m + choose2(m);
        break;
      case FactorKind::surface: {
        // rk End(S): 4 for types II and IV, 2 for real multiplication, else 1
        int end = *f.albert == AlbertType::I ? f.picard : 4;
        rho += m * f.picard + choose2(m) * end;
        break;
      }
      case FactorKind::simple_other:
        rho += m + choose2(m);
        break;
    }
  }
  return rho;
}

namespace {

IsogenyFactor elliptic_factor(std::string label, bool cm, int mult) {
  IsogenyFactor f;
  f.kind = FactorKind::elliptic;
  f.has_cm = cm;
  f.mult = mult;
  f.label = std::move(label);
  return f;
}

IsogenyFactor surface_factor(std::string label, AlbertType t, int picard) {
  IsogenyFactor f;
  f.kind = FactorKind::surface;
  f.albert = t;
  f.picard = picard;
  f.label = std::move(label);
  return f;
}

IsogenyFactor simple_factor(std::string label, int dim) {
  IsogenyFactor f;
  f.kind = FactorKind::simple_other;
  f.dim = dim;
  f.label = std::move(label);
  return f;
}

}  // namespace

std::vector<CatalogEntry> threefold_catalog() {
  std::vector<CatalogEntry> rows = {
      {"E_CM^3", "cube of a CM elliptic curve", {{elliptic_factor("E_CM", true, 3)}}, {}},
      {"E_RM x E_CM^2", "curve without CM times the square of a CM curve",
       {{elliptic_factor("E_RM", false, 1), elliptic_factor("E_CM", true, 2)}}, {}},
      {"S_II x E", "simple surface of type II (picard 3) times an elliptic curve",
       {{surface_factor("S_II", AlbertType::II, 3), elliptic_factor("E", false, 1)}}, {}},
      {"E_RM^2 x E", "square of a curve without CM times a non-isogenous curve",
       {{elliptic_factor("E_RM", false, 2), elliptic_factor("E", false, 1)}}, {}},
      {"E x E' x E''", "three pairwise non-isogenous elliptic curves",
       {{elliptic_factor("E", false, 1), elliptic_factor("E'", false, 1),
         elliptic_factor("E''", false, 1)}}, {}},
      {"S x E", "simple surface not isogenous to S_II times an elliptic curve",
       {{surface_factor("S", AlbertType::I, 1), elliptic_factor("E", false, 1)}}, {}},
      {"simple", "simple abelian threefold", {{simple_factor("A", 3)}}, {}},
  };
  for (auto& r : rows) r.report = classify(r.spec);
  return rows;
}

}  // namespace defect
