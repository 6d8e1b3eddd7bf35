#include "document.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "effectivity.hpp"
#include "verify.hpp"

namespace defect {

bool operator==(const IsogenyDocument& a, const IsogenyDocument& b) {
  const auto& fa = a.spec.factors;
  const auto& fb = b.spec.factors;
  if (fa.size() != fb.size()) return false;
  for (size_t i = 0; i < fa.size(); ++i) {
    const auto& x = fa[i];
    const auto& y = fb[i];
    if (x.kind != y.kind || x.mult != y.mult || x.label != y.label) return false;
    if (x.kind == FactorKind::elliptic && x.has_cm != y.has_cm) return false;
    if (x.kind == FactorKind::surface && (x.albert != y.albert || x.picard != y.picard)) return false;
    if (x.kind == FactorKind::simple_other && x.dim != y.dim) return false;
  }
  return true;
}

namespace {

using exact::parse_integer;
using exact::parse_rational;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw InputError(path + ": " + why);
}

std::string type_name(const Json& j) {
  if (j.is_number_float()) return "floating-point number";
  return j.type_name();
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object, found " + type_name(j));
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
}

const Json& required(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "required field is missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

void reject_float(const Json& j, const std::string& path) {
  if (j.is_number_float())
    fail(path, "floating-point numbers are not allowed; write an exact string such as \"3/2\"");
  if (j.is_string() && j.get<std::string>().find_first_of(".eE") != std::string::npos)
    fail(path, "decimal notation is not allowed; write an exact string such as \"3/2\"");
}

Rational rational_of(const Json& j, const std::string& path) {
  reject_float(j, path);
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) fail(path, "expected an exact rational string, found " + type_name(j));
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Integer integer_of(const Json& j, const std::string& path) {
  reject_float(j, path);
  if (j.is_number_integer()) return Integer(j.dump());
  if (!j.is_string()) fail(path, "expected an integer, found " + type_name(j));
  try {
    return parse_integer(j.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

int small_int(const Json& j, const std::string& path) {
  reject_float(j, path);
  if (!j.is_number_integer()) fail(path, "expected an integer, found " + type_name(j));
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string, found " + type_name(j));
  return j.get<std::string>();
}

const Json& array_of(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array, found " + type_name(j));
  return j;
}

Json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json form_json(const QMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IsogenyFactor parse_factor(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object, found " + type_name(j));
  IsogenyFactor f;
  const std::string type = string_of(required(j, path, "type"), join(path, "type"));
  if (type == "elliptic") {
    expect_object(j, path, {"type", "mult", "cm", "label"});
    f.kind = FactorKind::elliptic;
    if (j.contains("cm")) {
      if (!j["cm"].is_boolean()) fail(join(path, "cm"), "expected true or false");
      f.has_cm = j["cm"].get<bool>();
    }
  } else if (type == "surface") {
    expect_object(j, path, {"type", "mult", "albert_type", "picard", "label"});
    f.kind = FactorKind::surface;
    const std::string t = string_of(required(j, path, "albert_type"), join(path, "albert_type"));
    if (t == "I") f.albert = AlbertType::I;
    else if (t == "II") f.albert = AlbertType::II;
    else if (t == "III") f.albert = AlbertType::III;
    else if (t == "IV") f.albert = AlbertType::IV;
    else fail(join(path, "albert_type"), "expected one of I, II, III, IV");
    f.picard = small_int(required(j, path, "picard"), join(path, "picard"));
  } else if (type == "simple_other") {
    expect_object(j, path, {"type", "mult", "dim", "label"});
    f.kind = FactorKind::simple_other;
    f.dim = small_int(required(j, path, "dim"), join(path, "dim"));
  } else {
    fail(join(path, "type"), "expected elliptic, surface or simple_other");
  }
  if (j.contains("mult")) f.mult = small_int(j["mult"], join(path, "mult"));
  if (j.contains("label")) f.label = string_of(j["label"], join(path, "label"));
  return f;
}

IsogenyDocument parse_isogeny(const Json& j) {
  expect_object(j, "", {"kind", "factors"});
  const Json& factors = array_of(required(j, "", "factors"), "factors");
  IsogenyDocument doc;
  for (size_t i = 0; i < factors.size(); ++i)
    doc.spec.factors.push_back(parse_factor(factors[i], at("factors", i)));
  validate(doc.spec);
  return doc;
}

TorusSpec parse_torus(const Json& j) {
  expect_object(j, "", {"kind", "field", "blocks", "classes"});
  TorusSpec t;
  if (j.contains("field")) {
    const Json& f = j["field"];
    expect_object(f, "field", {"min_poly", "root_interval"});
    const Json& mp = array_of(required(f, "field", "min_poly"), "field.min_poly");
    for (size_t i = 0; i < mp.size(); ++i) t.min_poly.push_back(integer_of(mp[i], at("field.min_poly", i)));
    const Json& ri = array_of(required(f, "field", "root_interval"), "field.root_interval");
    if (ri.size() != 2) fail("field.root_interval", "expected two rationals [lo, hi]");
    t.root_lo = rational_of(ri[0], "field.root_interval[0]");
    t.root_hi = rational_of(ri[1], "field.root_interval[1]");
  } else {
    t.min_poly = {Integer(0), Integer(1)};
    t.root_lo = -1;
    t.root_hi = 1;
  }
  try {
    exact::RealNumberField::create(t.min_poly, t.root_lo, t.root_hi);
  } catch (const Error& e) {
    fail("field", e.what());
  }
  const size_t degree = t.min_poly.size() - 1;

  const Json& blocks = array_of(required(j, "", "blocks"), "blocks");
  if (blocks.size() < 2)
    fail("blocks", "at least two elliptic curves are required (dimension-1 tori are excluded)");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string path = at("blocks", i);
    const Json& b = blocks[i];
    expect_object(b, path, {"label", "a", "beta"});
    BlockSpec bs;
    if (b.contains("label")) bs.label = string_of(b["label"], join(path, "label"));
    bs.a = b.contains("a") ? rational_of(b["a"], join(path, "a")) : Rational(0);
    const Json& beta = required(b, path, "beta");
    if (beta.is_array()) {
      if (beta.empty()) fail(join(path, "beta"), "expected at least one coefficient");
      if (beta.size() > degree)
        fail(join(path, "beta"), "more coefficients than the field degree " + std::to_string(degree));
      for (size_t k = 0; k < beta.size(); ++k) bs.beta.push_back(rational_of(beta[k], at(join(path, "beta"), k)));
    } else {
      bs.beta.push_back(rational_of(beta, join(path, "beta")));
    }
    while (bs.beta.size() > 1 && sgn(bs.beta.back()) == 0) bs.beta.pop_back();
    t.blocks.push_back(std::move(bs));
  }

  const size_t n = 2 * t.blocks.size();
  if (j.contains("classes")) {
    const Json& cls = array_of(j["classes"], "classes");
    for (size_t c = 0; c < cls.size(); ++c) {
      const std::string path = at("classes", c);
      const Json& m = array_of(cls[c], path);
      if (m.size() != n) fail(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      ZMatrix z(n, n);
      for (size_t r = 0; r < n; ++r) {
        const Json& row = array_of(m[r], at(path, r));
        if (row.size() != n) fail(at(path, r), "expected " + std::to_string(n) + " entries");
        for (size_t k = 0; k < n; ++k) z(r, k) = integer_of(row[k], at(at(path, r), k));
      }
      for (size_t r = 0; r < n; ++r)
        for (size_t k = 0; k <= r; ++k)
          if (z(r, k) != -z(k, r)) fail(path, "matrix must be antisymmetric");
      t.classes.push_back(std::move(z));
    }
  }
  return t;
}

Json echo_factor(const IsogenyFactor& f) {
  Json j;
  j["type"] = to_string(f.kind);
  j["mult"] = f.mult;
  switch (f.kind) {
    case FactorKind::elliptic:
      j["cm"] = f.has_cm;
      break;
    case FactorKind::surface:
      j["albert_type"] = to_string(*f.albert);
      j["picard"] = f.picard;
      break;
    case FactorKind::simple_other:
      j["dim"] = f.dim;
      break;
  }
  if (!f.label.empty()) j["label"] = f.label;
  return j;
}

Json echo_factors(const IsogenySpec& s) {
  Json arr = Json::array();
  for (const auto& f : s.factors) arr.push_back(echo_factor(f));
  return arr;
}

std::string block_name(const TorusSpec& t, size_t i) {
  return t.blocks[i].label.empty() ? "E" + std::to_string(i + 1) : t.blocks[i].label;
}

class Stopwatch {
 public:
  Json elapsed() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return Json{{"elapsed_ms", std::chrono::duration_cast<std::chrono::milliseconds>(d).count()}};
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json check_json(const CheckResult& c) {
  return Json{{"status", to_string(c.status)}, {"detail", c.detail}};
}

Json report_json(const DefectReport& r) {
  Json j;
  j["delta"] = r.delta;
  j["case"] = to_string(r.kind);
  if (r.kind != DefectCase::zero) j["witness_factor"] = r.witness_factor;
  if (r.kind == DefectCase::elliptic) {
    j["k"] = r.k;
    j["cm"] = r.cm;
  }
  return j;
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("(root)", "expected an object, found " + type_name(j));
  const std::string kind = string_of(required(j, "", "kind"), "kind");
  if (kind == "isogeny") return SpecDocument{parse_isogeny(j)};
  if (kind == "torus") return SpecDocument{parse_torus(j)};
  fail("kind", "expected \"isogeny\" or \"torus\"");
}

SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Json echo(const SpecDocument& d) {
  Json j;
  j["kind"] = d.kind();
  if (!d.is_torus()) {
    j["factors"] = echo_factors(d.isogeny());
    return j;
  }
  const TorusSpec& t = d.torus();
  Json poly = Json::array();
  for (const auto& c : t.min_poly) poly.push_back(integer_json(c));
  j["field"] = Json{{"min_poly", poly}, {"root_interval", {t.root_lo.get_str(), t.root_hi.get_str()}}};
  Json blocks = Json::array();
  for (const auto& b : t.blocks) {
    Json jb;
    if (!b.label.empty()) jb["label"] = b.label;
    jb["a"] = b.a.get_str();
    Json beta = Json::array();
    for (const auto& c : b.beta) beta.push_back(c.get_str());
    jb["beta"] = beta;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = blocks;
  if (!t.classes.empty()) {
    Json cls = Json::array();
    for (const auto& z : t.classes) cls.push_back(form_json(exact::convert<Rational>(z)));
    j["classes"] = cls;
  }
  return j;
}

ComplexTorus build_torus(const TorusSpec& t) {
  FieldPtr k;
  try {
    k = exact::RealNumberField::create(t.min_poly, t.root_lo, t.root_hi);
  } catch (const InputError& e) {
    fail("field", e.what());
  }
  std::vector<ComplexTorus> curves;
  for (size_t i = 0; i < t.blocks.size(); ++i) {
    const BlockSpec& b = t.blocks[i];
    AlgebraicReal beta = k->degree() == 1 ? AlgebraicReal(b.beta[0]) : AlgebraicReal(k, b.beta);
    try {
      curves.push_back(elliptic(b.a, beta, k, block_name(t, i)));
    } catch (const InputError& e) {
      fail(at("blocks", i), e.what());
    }
  }
  return product(curves);
}

AlternatingForm declared_class(const TorusSpec& t, size_t i) {
  if (i >= t.classes.size())
    throw InputError("--class: index " + std::to_string(i) + " out of range (" +
                     std::to_string(t.classes.size()) + " classes declared)");
  return AlternatingForm::from_integers(t.classes[i]);
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"voisin", "kunneth", "lefschetz", "oracle"};
  return names;
}

Json classify_report(const SpecDocument& d) {
  Stopwatch clock;
  if (d.is_torus()) fail("kind", "classify expects an isogeny spec; use `defect torus` for tori");
  const IsogenySpec& spec = d.isogeny();
  DefectReport r = classify(spec);
  Json j;
  j["command"] = "classify";
  j["input"] = echo(d);
  const Json summary = report_json(r);
  for (const auto& [key, value] : summary.items()) j[key] = value;
  j["total_dim"] = spec.total_dim();
  j["picard_lower_bound"] = picard_lower_bound(spec);
  j["ok"] = true;
  j["timing"] = clock.elapsed();
  return j;
}

Json torus_report(const SpecDocument& d, const TorusOptions& options) {
  Stopwatch clock;
  if (!d.is_torus()) fail("kind", "torus expects a torus spec; use `defect classify` for isogeny specs");
  if (options.box < 1) throw InputError("--box: must be a positive integer");
  const TorusSpec& t = d.torus();
  ComplexTorus a = build_torus(t);
  NsContext ctx(a);
  const int rho = static_cast<int>(ctx.rank());

  Json j;
  j["command"] = "torus";
  j["input"] = echo(d);
  j["dimension"] = a.dimension();
  j["picard_rank"] = rho;

  std::vector<size_t> which;
  if (options.class_index) {
    declared_class(t, *options.class_index);
    which.push_back(*options.class_index);
  } else {
    for (size_t i = 0; i < t.classes.size(); ++i) which.push_back(i);
  }
  Json classes = Json::array();
  for (size_t i : which) {
    AlternatingForm f = declared_class(t, i);
    if (!is_hodge_class(a, f)) fail(at("classes", i), "not a Hodge class");
    EffectivityReport rep = analyze_class(a, f);
    Json c;
    c["index"] = i;
    c["form"] = form_json(f.matrix());
    c["effective"] = rep.is_effective;
    c["b"] = rep.is_effective ? Json(rep.iitaka_dim) : Json(nullptr);
    c["rho_B"] = rep.is_effective ? Json(picard_rank(*rep.quotient)) : Json(nullptr);
    c["defect"] = defect_of_class(a, ctx.ns(), f);
    classes.push_back(std::move(c));
  }
  j["classes"] = classes;

  DefectReport classified = classify(isogeny_spec_of(a));
  std::optional<DefectSearchResult> search;
  if (!options.class_index) {
    SearchOptions so;
    so.box = options.box;
    so.threads = options.threads;
    search = torus_defect(ctx, so);
    Json s;
    s["box"] = search->search_box;
    s["delta"] = search->delta;
    Json w = nullptr;
    if (search->witness) {
      w = Json::object();
      w["coefficients"] = search->witness_coeffs.empty() ? Json(nullptr) : Json(search->witness_coeffs);
      w["form"] = form_json(search->witness->matrix());
    }
    s["witness"] = w;
    s["classes_scanned"] = search->classes_scanned;
    s["effective_classes"] = search->effective_classes;
    j["search"] = s;
    j["delta"] = search->delta;
  } else {
    j["search"] = nullptr;
    j["delta"] = nullptr;
  }
  j["classifier"] = report_json(classified);
  j["case"] = to_string(classified.kind);

  Json verification;
  CheckResult voisin = check_voisin(a), kunneth = check_kunneth(a);
  CheckResult vs{"classifier_vs_search", CheckStatus::skipped, "global search not run with --class"};
  if (search) {
    vs.status = search->delta == classified.delta ? CheckStatus::pass : CheckStatus::fail;
    vs.detail = "search delta = " + std::to_string(search->delta) +
                ", classifier delta = " + std::to_string(classified.delta);
  }
  verification["voisin_check"] = check_json(voisin);
  verification["kunneth_check"] = check_json(kunneth);
  verification["classifier_vs_search"] = check_json(vs);
  j["verification"] = verification;
  j["ok"] = voisin.status != CheckStatus::fail && kunneth.status != CheckStatus::fail &&
            vs.status != CheckStatus::fail;
  j["timing"] = clock.elapsed();
  return j;
}

Json verify_report(const SpecDocument& d, const std::vector<std::string>& checks, int box,
                   int threads) {
  Stopwatch clock;
  for (const auto& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw InputError("--checks: unknown check '" + c + "' (known: voisin, kunneth, lefschetz, oracle)");
  if (checks.empty()) throw InputError("--checks: at least one check is required");
  if (!d.is_torus()) fail("kind", "verify expects a torus spec");
  if (box < 1) throw InputError("--box: must be a positive integer");
  ComplexTorus a = build_torus(d.torus());
  Json results = Json::array();
  bool ok = true;
  for (const auto& c : checks) {
    CheckResult r;
    if (c == "voisin") r = check_voisin(a);
    else if (c == "kunneth") r = check_kunneth(a);
    else if (c == "lefschetz") r = check_lefschetz(a);
    else r = check_oracle(a, box, threads);
    ok = ok && r.status != CheckStatus::fail;
    results.push_back(Json{{"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
  }
  Json j;
  j["command"] = "verify";
  j["input"] = echo(d);
  j["checks"] = results;
  j["ok"] = ok;
  j["timing"] = clock.elapsed();
  return j;
}

Json catalog_records() {
  Json rows = Json::array();
  for (const auto& e : threefold_catalog()) {
    Json r;
    r["delta"] = e.report.delta;
    r["case"] = to_string(e.report.kind);
    r["name"] = e.name;
    r["description"] = e.description;
    r["factors"] = echo_factors(e.spec);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace defect
