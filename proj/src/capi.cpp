#include "defect.h"

#include <cstring>
#include <sstream>

#include "cohomology.hpp"
#include "document.hpp"
#include "effectivity.hpp"

struct defect_spec {
  defect::SpecDocument doc;
};

struct defect_torus {
  defect::ComplexTorus torus;
};

namespace {

thread_local std::string last_error;

defect_status fail(defect_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class F>
defect_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const defect::ConsistencyError& e) {
    return fail(DEFECT_INTERNAL_ERROR, e.what());
  } catch (const defect::Error& e) {
    return fail(DEFECT_INPUT_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DEFECT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(DEFECT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(DEFECT_INTERNAL_ERROR, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

defect_status emit(const defect::Json& report, char** out) {
  *out = copy_string(report.dump(2));
  return report.value("ok", true) ? DEFECT_OK : DEFECT_VERIFY_FAILED;
}

defect_status null_argument() { return fail(DEFECT_INVALID_ARGUMENT, "null argument"); }

}  // namespace

extern "C" {

const char* defect_version(void) { return DEFECT_VERSION; }

const char* defect_last_error(void) { return last_error.c_str(); }

void defect_string_free(char* s) { std::free(s); }

defect_status defect_spec_parse(const char* json, defect_spec** out) {
  if (!json || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    *out = new defect_spec{defect::parse_spec(json)};
    return DEFECT_OK;
  });
}

defect_status defect_spec_load(const char* path, defect_spec** out) {
  if (!path || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    *out = new defect_spec{defect::load_spec(path)};
    return DEFECT_OK;
  });
}

void defect_spec_free(defect_spec* spec) { delete spec; }

const char* defect_spec_kind(const defect_spec* spec) { return spec ? spec->doc.kind() : ""; }

defect_status defect_spec_echo(const defect_spec* spec, char** out_json) {
  if (!spec || !out_json) return null_argument();
  return guarded([&] {
    *out_json = copy_string(defect::echo(spec->doc).dump(2));
    return DEFECT_OK;
  });
}

defect_status defect_classify(const defect_spec* spec, char** out_report) {
  if (!spec || !out_report) return null_argument();
  *out_report = nullptr;
  return guarded([&] { return emit(defect::classify_report(spec->doc), out_report); });
}

defect_status defect_torus_analyze(const defect_spec* spec, int box, long class_index, int threads,
                                   char** out_report) {
  if (!spec || !out_report) return null_argument();
  *out_report = nullptr;
  return guarded([&] {
    defect::TorusOptions opt;
    opt.box = box;
    opt.threads = threads > 0 ? threads : 1;
    if (class_index >= 0) opt.class_index = static_cast<size_t>(class_index);
    return emit(defect::torus_report(spec->doc, opt), out_report);
  });
}

defect_status defect_verify(const defect_spec* spec, const char* checks, int box, int threads,
                            char** out_report) {
  if (!spec || !checks || !out_report) return null_argument();
  *out_report = nullptr;
  return guarded([&] {
    std::vector<std::string> names;
    std::stringstream ss(checks);
    for (std::string item; std::getline(ss, item, ',');) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      names.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return emit(defect::verify_report(spec->doc, names, box, threads > 0 ? threads : 1), out_report);
  });
}

defect_status defect_threefold_catalog(char** out_json) {
  if (!out_json) return null_argument();
  *out_json = nullptr;
  return guarded([&] {
    *out_json = copy_string(defect::catalog_records().dump(2));
    return DEFECT_OK;
  });
}

defect_status defect_torus_from_spec(const defect_spec* spec, defect_torus** out) {
  if (!spec || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    if (!spec->doc.is_torus()) throw defect::InputError("kind: expected a torus spec");
    *out = new defect_torus{defect::build_torus(spec->doc.torus())};
    return DEFECT_OK;
  });
}

void defect_torus_free(defect_torus* torus) { delete torus; }

int defect_torus_dimension(const defect_torus* torus) {
  return torus ? torus->torus.dimension() : 0;
}

defect_status defect_torus_picard_rank(const defect_torus* torus, int* out) {
  if (!torus || !out) return null_argument();
  return guarded([&] {
    *out = defect::picard_rank(torus->torus);
    return DEFECT_OK;
  });
}

defect_status defect_torus_hom_rank(const defect_torus* a, const defect_torus* b, int* out) {
  if (!a || !b || !out) return null_argument();
  return guarded([&] {
    *out = defect::hom_rank(a->torus, b->torus);
    return DEFECT_OK;
  });
}

defect_status defect_torus_class_defect(const defect_torus* torus, const long long* form, size_t size,
                                        int* out_defect) {
  if (!torus || !form || !out_defect) return null_argument();
  return guarded([&] {
    const size_t n = torus->torus.lattice_rank();
    if (size != n)
      throw defect::InputError("form: expected size " + std::to_string(n) + ", got " +
                               std::to_string(size));
    defect::ZMatrix z(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) z(i, j) = static_cast<long>(form[i * n + j]);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j <= i; ++j)
        if (z(i, j) != -z(j, i)) throw defect::InputError("form: matrix must be antisymmetric");
    *out_defect = defect::defect_of_class(torus->torus, defect::AlternatingForm::from_integers(z));
    return DEFECT_OK;
  });
}

defect_status defect_torus_search(const defect_torus* torus, int box, int threads, int* out_delta,
                                  unsigned long long* out_scanned) {
  if (!torus || !out_delta) return null_argument();
  return guarded([&] {
    if (box < 1) throw defect::InputError("box: must be a positive integer");
    defect::SearchOptions opt;
    opt.box = box;
    opt.threads = threads > 0 ? threads : 1;
    defect::DefectSearchResult r = defect::torus_defect(torus->torus, opt);
    *out_delta = r.delta;
    if (out_scanned) *out_scanned = r.classes_scanned;
    return DEFECT_OK;
  });
}

}  // extern "C"
