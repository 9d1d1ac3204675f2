#include "supersasaki/random_fields.hpp"

namespace supersasaki {

int FieldSampler::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

ScalarExpr FieldSampler::polynomial(const std::vector<std::string>& vars, int max_degree,
                                    int terms) {
  ScalarExpr out;
  while (out.is_zero()) {
    const int count = uniform(1, std::max(1, terms));
    for (int k = 0; k < count; ++k) {
      int coeff = 0;
      while (coeff == 0) coeff = uniform(-3, 3);
      ScalarExpr term(coeff);
      const int degree = uniform(0, max_degree);
      for (int d = 0; d < degree && !vars.empty(); ++d) {
        term *= ScalarExpr::variable(vars[uniform(0, static_cast<int>(vars.size()) - 1)]);
      }
      out += term;
    }
  }
  return out;
}

VectorFieldM FieldSampler::base_field(const Chart& chart, int max_degree) {
  VectorFieldM out;
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    out.push_back(polynomial(chart.coords(), max_degree));
  }
  return out;
}

GradedExpr FieldSampler::graded(const SuperDomain& domain, Parity parity, int max_degree) {
  const std::size_t n = domain.dim();
  const std::vector<std::string>& coords = domain.chart().coords();
  GradedExpr out(domain.ptm());
  // Enumerate dx-subsets of matching length parity and keep each with
  // probability 1/2; always keep at least one.
  std::vector<GradedExpr> monomials;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((__builtin_popcount(mask) % 2 == 1) != (parity == Parity::Odd)) continue;
    GradedExpr m = domain.ptm_scalar(1);
    for (std::size_t a = 0; a < n; ++a) {
      if (mask & (1u << a)) m = m * domain.ptm_gen(domain.dx(a));
    }
    monomials.push_back(std::move(m));
  }
  while (out.is_zero()) {
    for (const auto& m : monomials) {
      if (uniform(0, 1) == 0) continue;
      out += polynomial(coords, max_degree, 2) * m;
    }
  }
  return out;
}

VectorFieldPTM FieldSampler::ptm_field(const SuperDomain& domain, Parity parity,
                                       int max_degree) {
  std::vector<GradedExpr> base;
  std::vector<GradedExpr> bar;
  for (std::size_t a = 0; a < domain.dim(); ++a) {
    base.push_back(graded(domain, parity, max_degree));
    bar.push_back(graded(domain, flip(parity), max_degree));
  }
  return VectorFieldPTM(domain, std::move(base), std::move(bar), parity);
}

}  // namespace supersasaki
