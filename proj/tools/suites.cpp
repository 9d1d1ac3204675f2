#include "suites.hpp"

#include <map>
#include <string>

#include <supersasaki/random_fields.hpp>

namespace supersasaki::cli {

CheckResult scalar_check(std::string name, const ScalarExpr& lhs, const ScalarExpr& rhs,
                         const EqualityOptions& options) {
  CheckResult r;
  r.name = std::move(name);
  const ScalarExpr residual = simplify(lhs - rhs);
  if (residual.is_zero()) {
    r.passed = true;
    r.residual = "0";
    r.detail = "canonical";
    return r;
  }
  r.residual = residual.str();
  try {
    r.passed = expr_is_zero(residual, options);
    r.detail = r.passed ? "sampled" : "nonzero";
  } catch (const EvaluationError& e) {
    r.detail = e.what();
  }
  return r;
}

namespace {

CheckResult flag_check(std::string name, bool ok, std::string detail) {
  return CheckResult{std::move(name), ok, ok ? "0" : "-", std::move(detail)};
}

template <typename PerTrial>
std::vector<CheckResult> run_trials(const SuiteOptions& options, PerTrial&& per_trial) {
  FieldSampler sampler(options.seed);
  std::vector<std::vector<CheckResult>> all;
  for (int t = 0; t < options.trials; ++t) all.push_back(per_trial(sampler));
  return aggregate(all);
}

}  // namespace

std::vector<CheckResult> aggregate(const std::vector<std::vector<CheckResult>>& trials,
                                   const std::string& unit) {
  struct Tally {
    CheckResult first_failure;
    int passed = 0;
    int canonical = 0;
    int total = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Tally> tally;
  for (const auto& trial : trials) {
    for (const auto& r : trial) {
      auto [it, fresh] = tally.try_emplace(r.name);
      if (fresh) order.push_back(r.name);
      Tally& t = it->second;
      ++t.total;
      if (r.passed) {
        ++t.passed;
        if (r.detail == "canonical") ++t.canonical;
      } else if (t.first_failure.name.empty()) {
        t.first_failure = r;
      }
    }
  }
  std::vector<CheckResult> out;
  for (const auto& name : order) {
    const Tally& t = tally[name];
    CheckResult r;
    r.name = name;
    r.passed = t.passed == t.total;
    r.residual = r.passed ? "0" : t.first_failure.residual;
    r.detail = std::to_string(t.passed) + "/" + std::to_string(t.total) + " " + unit + ", " +
               std::to_string(t.canonical) + " canonical";
    if (!r.passed && !t.first_failure.detail.empty()) r.detail += "; " + t.first_failure.detail;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> proposition_suite(const Geometry& geom, const SuiteOptions& options) {
  const SuperDomain domain(geom.chart);
  const MetricFunction g = super_sasaki(domain, geom);
  const EqualityOptions eq = geom.chart.options(options.equality);
  return run_trials(options, [&](FieldSampler& s) {
    const VectorFieldM x = s.base_field(geom.chart);
    const VectorFieldM y = s.base_field(geom.chart);
    return verify_proposition(domain, geom, g, x, y, eq);
  });
}

std::vector<CheckResult> cartan_suite(const Geometry& geom, const SuiteOptions& options) {
  const SuperDomain domain(geom.chart);
  const EqualityOptions eq = geom.chart.options(options.equality);
  return run_trials(options, [&](FieldSampler& s) {
    const VectorFieldM x = s.base_field(geom.chart);
    const VectorFieldM y = s.base_field(geom.chart);
    return cartan_relations(domain, x, y, eq);
  });
}

std::vector<CheckResult> epsilon_suite(const Geometry& geom, const SuiteOptions& options) {
  const SuperDomain domain(geom.chart);
  const MetricFunction g = super_sasaki(domain, geom);
  const EqualityOptions eq = geom.chart.options(options.equality);
  return run_trials(options, [&](FieldSampler& s) {
    const VectorFieldM x = s.base_field(geom.chart);
    const VectorFieldM y = s.base_field(geom.chart);
    return epsilon_observations(domain, geom, g, x, y, eq);
  });
}

std::vector<CheckResult> axioms_suite(const Geometry& geom, const SuiteOptions& options) {
  const SuperDomain domain(geom.chart);
  const MetricFunction g = super_sasaki(domain, geom);
  const EqualityOptions eq = geom.chart.options(options.equality);
  const Parity parities[] = {Parity::Even, Parity::Odd};

  std::vector<CheckResult> out = run_trials(options, [&](FieldSampler& s) {
    std::vector<CheckResult> r;
    for (Parity px : parities) {
      for (Parity py : parities) {
        const VectorFieldPTM x = s.ptm_field(domain, px);
        const VectorFieldPTM y = s.ptm_field(domain, py);
        const GradedExpr xy = pairing_via_lift(domain, x, y, g);
        const GradedParity p = parity_of(xy);
        const bool additive =
            xy.is_zero() || p == (px + py == Parity::Odd ? GradedParity::Odd : GradedParity::Even);
        r.push_back(flag_check("parity of <X|Y> is |X|+|Y|", additive,
                               additive ? "canonical" : "parity mismatch"));

        const GradedExpr yx = pairing_via_lift(domain, y, x, g);
        const bool both_odd = px == Parity::Odd && py == Parity::Odd;
        r.push_back(graded_check("<X|Y> = (-1)^{|X||Y|} <Y|X>", xy, both_odd ? -yx : yx, eq));

        r.push_back(graded_check("closed form = 1/2 iota_X iota_Y g",
                                 pairing_closed_form(domain, x, y, geom), xy, eq));

        // <fX + W|Y> = f<X|Y> + <W|Y>, with W of the same parity as fX.
        const Parity pf = to_int(px) == to_int(py) ? Parity::Even : Parity::Odd;
        const GradedExpr f = s.graded(domain, pf);
        const VectorFieldPTM w = s.ptm_field(domain, pf + px);
        const GradedExpr lhs = pairing_via_lift(domain, f * x + w, y, g);
        r.push_back(graded_check("<fX+W|Y> = f<X|Y> + <W|Y>", lhs,
                                 f * xy + pairing_via_lift(domain, w, y, g), eq));
      }
    }
    return r;
  });

  const NondegeneracyBlocks blocks = nondegeneracy(domain, g, eq);
  out.push_back(flag_check("non-degenerate even block eps<d_a|d_b>", blocks.even_nonzero,
                           "det = " + determinant(blocks.even_block).str()));
  out.push_back(flag_check("non-degenerate odd block eps<d_da|d_db>", blocks.odd_nonzero,
                           "det = " + determinant(blocks.odd_block).str()));
  return out;
}

std::vector<CheckResult> invariance_suite(const SmoothMap& psi, const Geometry& m,
                                          const Geometry& n, const SuiteOptions& options) {
  const SuperDomain dn(n.chart);
  const Parity parities[] = {Parity::Even, Parity::Odd};
  return run_trials(options, [&](FieldSampler& s) {
    std::vector<CheckResult> r;
    for (Parity px : parities) {
      for (Parity py : parities) {
        r.push_back(invariance_check(psi, m, n, s.ptm_field(dn, px), s.ptm_field(dn, py),
                                     options.equality));
      }
    }
    return r;
  });
}

NaturalitySuite naturality_suite(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                                 const SuiteOptions& options) {
  const EqualityOptions eq = m.chart.options(options.equality);
  NaturalitySuite out;
  if (psi.inverse()) {
    out.results.push_back(flag_check("declared inverse composes to the identity",
                                     psi.inverse_consistent(eq), "sampled"));
  }
  const bool invertible = psi.locally_invertible(eq);
  out.results.push_back(
      flag_check("Jacobian invertible on the sample domain", invertible, "sampled"));
  if (!invertible) return out;

  const TransformedTensors tt = transform_tensors(psi, n.g, n.omega, n.gamma);
  const Christoffel direct = christoffel(m.chart, MetricTensor(m.chart, tt.g));
  std::vector<CheckResult> gamma_checks;
  const std::size_t dim = m.chart.dim();
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      for (std::size_t c = 0; c < dim; ++c) {
        gamma_checks.push_back(scalar_check("transformed Gamma = Gamma of Psi^* g",
                                            tt.gamma(a, b, c), direct(a, b, c), eq));
      }
    }
  }
  std::vector<std::vector<CheckResult>> per_component;
  for (auto& r : gamma_checks) per_component.push_back({std::move(r)});
  for (auto& r : aggregate(per_component, "components")) out.results.push_back(std::move(r));

  out.report = check_naturality(psi, m, n, options.equality);
  out.results.push_back(out.report.check);
  return out;
}

}  // namespace supersasaki::cli
