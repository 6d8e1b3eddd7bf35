#include "verify.hpp"

#include <numeric>
#include <sstream>

namespace defect {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

namespace {

CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::skipped, std::move(why)};
}

std::string block_label(const ComplexTorus& a, size_t i) {
  const std::string& l = a.blocks()[i].label;
  return l.empty() ? "E" + std::to_string(i + 1) : l;
}

ComplexTorus block_product(const ComplexTorus& a, size_t from, size_t to) {
  std::vector<ComplexTorus> parts;
  for (size_t i = from; i < to; ++i) {
    const auto& b = a.blocks()[i];
    parts.push_back(elliptic(b.a, b.beta, a.field(), b.label));
  }
  return product(parts);
}

}  // namespace

IsogenySpec isogeny_spec_of(const ComplexTorus& a) {
  if (!a.is_elliptic_product())
    throw PreconditionError("isogeny decomposition needs an explicit elliptic product");
  const size_t k = a.blocks().size();
  std::vector<size_t> group(k);
  std::iota(group.begin(), group.end(), 0);
  for (size_t i = 0; i < k; ++i) {
    if (group[i] != i) continue;
    ComplexTorus ei = block_product(a, i, i + 1);
    for (size_t j = i + 1; j < k; ++j)
      if (group[j] == j && hom_rank(ei, block_product(a, j, j + 1)) > 0) group[j] = i;
  }
  IsogenySpec spec;
  std::map<size_t, size_t> index;
  for (size_t i = 0; i < k; ++i) {
    auto it = index.find(group[i]);
    if (it != index.end()) {
      ++spec.factors[it->second].mult;
      continue;
    }
    IsogenyFactor f;
    f.kind = FactorKind::elliptic;
    f.has_cm = a.blocks()[i].has_cm;
    f.label = block_label(a, i);
    index.emplace(group[i], spec.factors.size());
    spec.factors.push_back(std::move(f));
  }
  return spec;
}

CheckResult check_voisin(const ComplexTorus& a) {
  const std::string name = "voisin";
  if (a.dimension() < 2) return skipped(name, "requires n >= 2");
  if (!a.is_elliptic_product()) return skipped(name, "requires an elliptic product");
  NeronSeveri ns = neron_severi(a);
  const size_t k = a.blocks().size();
  std::ostringstream detail;
  bool ok = true;
  for (size_t drop = 0; drop < k; ++drop) {
    std::vector<size_t> keep;
    for (size_t i = 0; i < k; ++i)
      if (i != drop) keep.push_back(i);
    KernelComparison kc = compare_restriction_and_cup_kernels(a, ns, factor_sublattice(a, keep));
    ok = ok && kc.equal();
    detail << (drop ? "; " : "") << "W = complement of " << block_label(a, drop)
           << ": dim ker restriction = " << kc.restriction_kernel
           << ", dim ker cup = " << kc.cup_kernel
           << (kc.equal() ? ", equal" : ", DIFFERENT");
  }
  return {name, ok ? CheckStatus::pass : CheckStatus::fail, detail.str()};
}

CheckResult check_kunneth(const ComplexTorus& a) {
  const std::string name = "kunneth";
  if (!a.is_elliptic_product() || a.blocks().size() < 2)
    return skipped(name, "requires a product of at least two elliptic curves");
  const size_t k = a.blocks().size();
  const int rho = picard_rank(a);
  std::ostringstream detail;
  bool ok = true;
  for (size_t split = 1; split < k; ++split) {
    ComplexTorus c = block_product(a, 0, split), t = block_product(a, split, k);
    const int rc = picard_rank(c), rt = picard_rank(t), h = hom_rank(t, c);
    const bool good = rho == rc + rt + h;
    ok = ok && good;
    detail << (split > 1 ? "; " : "") << "split " << split << "|" << k - split << ": rho = " << rho
           << ", rho_C + rho_T + rk Hom(T,C) = " << rc << " + " << rt << " + " << h
           << (good ? "" : " MISMATCH");
  }
  return {name, ok ? CheckStatus::pass : CheckStatus::fail, detail.str()};
}

CheckResult check_lefschetz(const ComplexTorus& a) {
  const std::string name = "lefschetz";
  if (a.dimension() < 3) return skipped(name, "requires n ≥ 3");
  if (!a.is_elliptic_product()) return skipped(name, "requires an elliptic product");
  const size_t n = a.lattice_rank();
  QMatrix h(n, n);
  for (size_t i = 0; i < a.blocks().size(); ++i) {
    h(2 * i, 2 * i + 1) = 1;
    h(2 * i + 1, 2 * i) = -1;
  }
  QMatrix cup = cup_matrix(a, class_of_form(AlternatingForm(h)));
  const size_t r = exact::rank(cup);
  std::ostringstream detail;
  detail << "rank of cup with the product polarization = " << r << " of " << cup.cols();
  return {name, r == cup.cols() ? CheckStatus::pass : CheckStatus::fail, detail.str()};
}

const DivisorCasePredictor::Prediction& DivisorCasePredictor::predict(const AlternatingForm& e) {
  Sublattice rad = radical(a_, e);
  std::vector<std::string> key;
  for (size_t i = 0; i < rad.basis().rows(); ++i)
    for (size_t j = 0; j < rad.basis().cols(); ++j) key.push_back(rad.basis()(i, j).get_str());
  key.push_back(std::to_string(rad.rank()));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  Prediction p;
  p.b = a_.dimension() - static_cast<int>(rad.rank()) / 2;
  if (p.b >= 3) {
    p.expected = divisor_case(p.b);
  } else {
    ComplexTorus q = quotient(a_, rad);
    if (p.b == 2) {
      p.rho_b = picard_rank(q);
      p.expected = divisor_case(2, p.rho_b);
    } else if (p.b == 1) {
      const int end = hom_rank(q, q);
      p.cm = end == 2;
      const int to_a = hom_rank(q, a_);
      if (to_a % end != 0) throw ConsistencyError("rk Hom(B, A) is not a multiple of rk End(B)");
      p.k = to_a / end;
      p.expected = divisor_case(1, std::nullopt, p.cm, p.k);
      const int via_c = 1 + hom_rank(q, subtorus_torus(a_, rad));
      p.hom_path_agrees = via_c == p.expected;
    } else {
      p.expected = divisor_case(p.b);  // throws
    }
  }
  return cache_.emplace(std::move(key), p).first->second;
}

OracleReport run_oracle(const ComplexTorus& a, int box, int threads) {
  OracleReport rep;
  rep.classified = classify(isogeny_spec_of(a));
  NsContext ctx(a);
  DivisorCasePredictor predictor(a);
  const int rho = static_cast<int>(ctx.rank());
  SearchOptions opt;
  opt.box = box;
  opt.threads = threads;
  opt.on_effective = [&](const EffectiveClass& ec) {
    ++rep.effective_checked;
    auto problem = [&](const std::string& what) {
      if (rep.first_problem.empty()) rep.first_problem = what;
    };
    const auto& pred = predictor.predict(ec.form);
    if (pred.expected != ec.defect || !pred.hom_path_agrees) {
      ++rep.case_mismatches;
      problem("divisor case: measured " + std::to_string(ec.defect) + ", predicted " +
              std::to_string(pred.expected) + " (b = " + std::to_string(pred.b) + ")");
    }
    if (ec.defect < 0 || ec.defect > rho - 1) {
      ++rep.bound_violations;
      problem("defect " + std::to_string(ec.defect) + " outside [0, rho - 1]");
    }
    int doubled;
    if (!ec.coeffs.empty()) {
      std::vector<long> twice = ec.coeffs;
      for (auto& c : twice) c *= 2;
      doubled = ctx.is_effective(twice) ? ctx.defect(twice) : -1;
    } else {
      AlternatingForm f2 = Rational(2) * ec.form;
      doubled = is_effective_class(a, f2) ? defect_of_class(a, ctx.ns(), f2) : -1;
    }
    if (doubled != ec.defect) {
      ++rep.scaling_violations;
      problem("defect of 2D differs from defect of D");
    }
  };
  rep.search = torus_defect(ctx, opt);
  return rep;
}

CheckResult check_oracle(const ComplexTorus& a, int box, int threads) {
  const std::string name = "oracle";
  if (a.dimension() < 2) return skipped(name, "requires n >= 2");
  if (!a.is_elliptic_product()) return skipped(name, "requires an elliptic product");
  OracleReport r = run_oracle(a, box, threads);
  std::ostringstream detail;
  detail << "search delta = " << r.search.delta << ", classifier delta = " << r.classified.delta
         << ", effective classes checked = " << r.effective_checked
         << ", divisor-case mismatches = " << r.case_mismatches
         << ", bound/scaling violations = " << r.bound_violations + r.scaling_violations;
  if (!r.first_problem.empty()) detail << " (" << r.first_problem << ")";
  const bool ok = r.agrees() && r.consistent() && r.bounded_and_scaling();
  return {name, ok ? CheckStatus::pass : CheckStatus::fail, detail.str()};
}

}  // namespace defect
