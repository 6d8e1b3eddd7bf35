#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>

#include "defect.h"

using Json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, verify_failed = 1, input_error = 2, internal_error = 3 };

int exit_code(defect_status s) {
  switch (s) {
    case DEFECT_OK: return ok;
    case DEFECT_VERIFY_FAILED: return verify_failed;
    case DEFECT_INPUT_ERROR: return input_error;
    default: return internal_error;
  }
}

int report_error(defect_status s) {
  std::cerr << "error: " << defect_last_error() << "\n";
  return exit_code(s);
}

struct SpecHandle {
  defect_spec* p = nullptr;
  ~SpecHandle() { defect_spec_free(p); }
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { defect_string_free(p); }
};

int threads_from_env(int& threads) {
  threads = 1;
  const char* v = std::getenv("DEFECT_THREADS");
  if (!v || !*v) return ok;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end || n < 1 || n > 1024) {
    std::cerr << "error: DEFECT_THREADS: expected a positive integer, got '" << v << "'\n";
    return input_error;
  }
  threads = static_cast<int>(n);
  return ok;
}

bool write_report(const std::string& path, const char* text) {
  if (path.empty()) return true;
  std::ofstream out(path);
  out << text << "\n";
  if (!out) {
    std::cerr << "error: --out: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_case(const Json& r) {
  std::cout << "case: " << r["case"].get<std::string>();
  if (r.contains("witness_factor")) std::cout << " (factor " << r["witness_factor"].get<std::string>();
  if (r.contains("k"))
    std::cout << ", k = " << r["k"] << ", " << (r["cm"].get<bool>() ? "CM" : "no CM");
  if (r.contains("witness_factor")) std::cout << ")";
  std::cout << "\n";
}

void print_check(const std::string& name, const Json& c) {
  std::cout << name << ": " << c["status"].get<std::string>();
  const std::string detail = c["detail"].get<std::string>();
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
}

int load(const std::string& file, SpecHandle& spec) {
  defect_status s = defect_spec_load(file.c_str(), &spec.p);
  return s == DEFECT_OK ? ok : report_error(s);
}

int run_classify(const std::string& file, const std::string& out) {
  SpecHandle spec;
  if (int rc = load(file, spec)) return rc;
  OwnedString report;
  defect_status s = defect_classify(spec.p, &report.p);
  if (!report.p) return report_error(s);
  Json r = Json::parse(report.p);
  std::cout << "delta = " << r["delta"] << "\n";
  print_case(r);
  if (!write_report(out, report.p)) return input_error;
  return exit_code(s);
}

int run_torus(const std::string& file, int box, long class_index, const std::string& out) {
  int threads;
  if (int rc = threads_from_env(threads)) return rc;
  SpecHandle spec;
  if (int rc = load(file, spec)) return rc;
  OwnedString report;
  defect_status s = defect_torus_analyze(spec.p, box, class_index, threads, &report.p);
  if (!report.p) return report_error(s);
  Json r = Json::parse(report.p);
  std::cout << "dimension = " << r["dimension"] << ", picard rank = " << r["picard_rank"] << "\n";
  if (!r["classes"].empty()) {
    std::cout << std::left << std::setw(7) << "class" << std::setw(11) << "effective" << std::setw(4)
              << "b" << std::setw(7) << "rho_B"
              << "defect\n";
    for (const auto& c : r["classes"])
      std::cout << std::setw(7) << cell(c["index"]) << std::setw(11) << cell(c["effective"])
                << std::setw(4) << cell(c["b"]) << std::setw(7) << cell(c["rho_B"]) << cell(c["defect"])
                << "\n";
  }
  if (r["search"].is_null()) {
    std::cout << "delta: not computed (single class requested)\n";
  } else {
    const Json& sr = r["search"];
    std::cout << "delta = " << r["delta"] << "\n";
    std::cout << "search: box " << sr["box"] << ", " << sr["classes_scanned"] << " classes scanned, "
              << sr["effective_classes"] << " effective\n";
  }
  std::cout << "classifier: delta = " << r["classifier"]["delta"] << "\n";
  print_case(r["classifier"]);
  for (const auto& [name, c] : r["verification"].items()) print_check(name, c);
  if (!write_report(out, report.p)) return input_error;
  return exit_code(s);
}

int run_verify(const std::string& file, const std::string& checks, int box, const std::string& out) {
  int threads;
  if (int rc = threads_from_env(threads)) return rc;
  SpecHandle spec;
  if (int rc = load(file, spec)) return rc;
  OwnedString report;
  defect_status s = defect_verify(spec.p, checks.c_str(), box, threads, &report.p);
  if (!report.p) return report_error(s);
  Json r = Json::parse(report.p);
  for (const auto& c : r["checks"]) print_check(c["name"].get<std::string>(), c);
  if (!write_report(out, report.p)) return input_error;
  return exit_code(s);
}

int run_report(const std::string& what, const std::string& format) {
  if (what != "threefolds") {
    std::cerr << "error: unknown report '" << what << "' (known: threefolds)\n";
    return input_error;
  }
  OwnedString text;
  defect_status s = defect_threefold_catalog(&text.p);
  if (s != DEFECT_OK) return report_error(s);
  Json rows = Json::parse(text.p);
  if (format == "machine") {
    for (const auto& row : rows) std::cout << row.dump() << "\n";
    return ok;
  }
  std::cout << std::left << std::setw(7) << "delta" << std::setw(17) << "case" << std::setw(16)
            << "variety"
            << "description\n";
  for (const auto& row : rows)
    std::cout << std::setw(7) << row["delta"].dump() << std::setw(17) << cell(row["case"])
              << std::setw(16) << cell(row["name"]) << cell(row["description"]) << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lefschetz defect of complex abelian varieties"};
  app.set_version_flag("--version", std::string(defect_version()));
  app.require_subcommand(1);

  std::string file, out, checks, what, format = "table";
  int box = 2;
  long class_index = -1;

  auto* classify = app.add_subcommand("classify", "Defect of an isogeny decomposition");
  classify->add_option("file", file, "Spec file (kind isogeny)")->required();
  classify->add_option("--out", out, "Write the JSON report here");

  auto* torus = app.add_subcommand("torus", "Analyze an explicit product of elliptic curves");
  torus->add_option("file", file, "Spec file (kind torus)")->required();
  torus->add_option("--box", box, "Coefficient bound of the effective-class search")
      ->check(CLI::Range(1, 20));
  torus->add_option("--class", class_index, "Analyze only this declared class")
      ->check(CLI::NonNegativeNumber);
  torus->add_option("--out", out, "Write the JSON report here");

  auto* verify = app.add_subcommand("verify", "Run invariant checks on a torus");
  verify->add_option("file", file, "Spec file (kind torus)")->required();
  verify->add_option("--checks", checks, "Comma separated: voisin,kunneth,lefschetz,oracle")
      ->required();
  verify->add_option("--box", box, "Search bound for the oracle check")->check(CLI::Range(1, 20));
  verify->add_option("--out", out, "Write the JSON report here");

  auto* report = app.add_subcommand("report", "Built-in tables");
  report->add_option("name", what, "threefolds")->required();
  report->add_option("--format", format, "table or machine")
      ->check(CLI::IsMember({"table", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : input_error;
  }

  if (*classify) return run_classify(file, out);
  if (*torus) return run_torus(file, box, class_index, out);
  if (*verify) return run_verify(file, checks, box, out);
  return run_report(what, format);
}
