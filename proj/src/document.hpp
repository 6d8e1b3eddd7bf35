#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "classifier.hpp"
#include "torus.hpp"

namespace defect {

using Json = nlohmann::ordered_json;

struct BlockSpec {
  std::string label;
  Rational a;
  std::vector<Rational> beta;  // power-basis coefficients, low to high

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

struct TorusSpec {
  std::vector<Integer> min_poly;  // low to high
  Rational root_lo, root_hi;
  std::vector<BlockSpec> blocks;
  std::vector<ZMatrix> classes;

  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;
};

struct IsogenyDocument {
  IsogenySpec spec;
};

bool operator==(const IsogenyDocument& a, const IsogenyDocument& b);

/// A schema-validated input file.
struct SpecDocument {
  std::variant<IsogenyDocument, TorusSpec> body;

  bool is_torus() const { return std::holds_alternative<TorusSpec>(body); }
  const char* kind() const { return is_torus() ? "torus" : "isogeny"; }
  const TorusSpec& torus() const { return std::get<TorusSpec>(body); }
  const IsogenySpec& isogeny() const { return std::get<IsogenyDocument>(body).spec; }

  friend bool operator==(const SpecDocument& a, const SpecDocument& b) { return a.body == b.body; }
};

/// Throws InputError "<path>: <reason>" on any schema violation.
SpecDocument parse_spec(const std::string& text);
SpecDocument load_spec(const std::string& path);

/// Canonical form; parse_spec(echo(d).dump()) == d.
Json echo(const SpecDocument& d);

/// Builds the field and the product of the listed curves.
ComplexTorus build_torus(const TorusSpec& spec);
/// Declared class i as a form on the torus lattice.
AlternatingForm declared_class(const TorusSpec& spec, size_t i);

struct TorusOptions {
  int box = 2;
  std::optional<size_t> class_index;
  int threads = 1;
};

/// Each report has "ok": false when a verification entry failed.
Json classify_report(const SpecDocument& d);
Json torus_report(const SpecDocument& d, const TorusOptions& options);
Json verify_report(const SpecDocument& d, const std::vector<std::string>& checks, int box,
                   int threads);
Json catalog_records();

/// Names accepted by verify_report.
const std::vector<std::string>& known_checks();

}  // namespace defect
