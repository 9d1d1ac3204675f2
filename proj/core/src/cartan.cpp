#include "supersasaki/cartan.hpp"

namespace supersasaki {

namespace {

std::vector<GradedExpr> zeros(const SuperDomain& domain) {
  return std::vector<GradedExpr>(domain.dim(), GradedExpr(domain.ptm()));
}

void require_dim(const SuperDomain& domain, const VectorFieldM& x) {
  if (x.size() != domain.dim()) throw GeometryError("vector field dimension mismatch");
}

}  // namespace

CartanField de_rham(const SuperDomain& domain) {
  auto base = zeros(domain);
  for (std::size_t a = 0; a < domain.dim(); ++a) base[a] = domain.ptm_gen(domain.dx(a));
  return {VectorFieldPTM(domain, base, zeros(domain), Parity::Odd), CartanOrigin::DeRham, "d"};
}

CartanField interior(const SuperDomain& domain, const VectorFieldM& x) {
  require_dim(domain, x);
  auto bar = zeros(domain);
  for (std::size_t a = 0; a < domain.dim(); ++a) bar[a] = domain.ptm_scalar(x[a]);
  return {VectorFieldPTM(domain, zeros(domain), bar, Parity::Odd), CartanOrigin::Interior,
          "i_X"};
}

CartanField lie_derivative(const SuperDomain& domain, const VectorFieldM& x) {
  require_dim(domain, x);
  const std::size_t n = domain.dim();
  auto base = zeros(domain);
  auto bar = zeros(domain);
  for (std::size_t a = 0; a < n; ++a) {
    base[a] = domain.ptm_scalar(x[a]);
    for (std::size_t b = 0; b < n; ++b) {
      bar[a] += domain.ptm_gen(domain.dx(b)) *
                domain.ptm_scalar(differentiate(x[a], domain.x(b)));
    }
  }
  return {VectorFieldPTM(domain, base, bar, Parity::Even), CartanOrigin::Lie, "L_X"};
}

VectorFieldPTM super_commutator(const VectorFieldPTM& u, const VectorFieldPTM& v) {
  if (!same_table(u.table(), v.table())) throw GradedError("fields over different domains");
  const Parity pu = u.require_parity();
  const Parity pv = v.require_parity();
  const bool minus = !(pu == Parity::Odd && pv == Parity::Odd);
  const std::size_t n = u.dim();
  std::vector<GradedExpr> base;
  std::vector<GradedExpr> bar;
  for (std::size_t k = 0; k < n; ++k) {
    const GradedExpr b1 = u.apply(v.base()[k]);
    const GradedExpr b2 = v.apply(u.base()[k]);
    base.push_back(minus ? b1 - b2 : b1 + b2);
    const GradedExpr c1 = u.apply(v.bar()[k]);
    const GradedExpr c2 = v.apply(u.bar()[k]);
    bar.push_back(minus ? c1 - c2 : c1 + c2);
  }
  return VectorFieldPTM::from_components(u.table(), std::move(base), std::move(bar), pu + pv);
}

std::vector<GradedExpr> nabla_form(const SuperDomain& domain, const VectorFieldM& x,
                                   const Christoffel& gamma) {
  const ExprMatrix nx = covariant_derivative(domain.chart(), x, gamma);
  const std::size_t n = domain.dim();
  std::vector<GradedExpr> out = zeros(domain);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (nx[a][c].is_zero()) continue;
      out[a] += nx[a][c] * domain.ptm_gen(domain.dx(c));
    }
  }
  return out;
}

CheckResult graded_check(std::string name, const GradedExpr& lhs, const GradedExpr& rhs,
                         const EqualityOptions& options) {
  CheckResult r;
  r.name = std::move(name);
  const GradedExpr residual = lhs - rhs;
  if (residual.is_zero()) {
    r.passed = true;
    r.residual = "0";
    r.detail = "canonical";
    return r;
  }
  r.residual = residual.str();
  try {
    r.passed = graded_is_zero(residual, options);
    r.detail = r.passed ? "sampled" : "nonzero";
  } catch (const EvaluationError& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

CheckResult field_check(std::string name, const SuperDomain& domain, const VectorFieldPTM& lhs,
                        const VectorFieldPTM& rhs, const EqualityOptions& options) {
  CheckResult r;
  r.name = std::move(name);
  const VectorFieldPTM residual = lhs - rhs;
  if (residual.is_zero()) {
    r.passed = true;
    r.residual = "0";
    r.detail = "canonical";
    return r;
  }
  r.residual = residual.str(domain);
  try {
    r.passed = field_is_zero(residual, options);
    r.detail = r.passed ? "sampled" : "nonzero";
  } catch (const EvaluationError& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

std::vector<CheckResult> verify_proposition(const SuperDomain& domain, const Geometry& geom,
                                            const MetricFunction& g, const VectorFieldM& x,
                                            const VectorFieldM& y,
                                            const EqualityOptions& options) {
  const std::size_t n = domain.dim();
  const TablePtr& t = domain.ptm();
  const VectorFieldPTM d = de_rham(domain).field;
  const VectorFieldPTM ix = interior(domain, x).field;
  const VectorFieldPTM iy = interior(domain, y).field;
  const VectorFieldPTM lx = lie_derivative(domain, x).field;
  const VectorFieldPTM ly = lie_derivative(domain, y).field;
  auto pair = [&](const VectorFieldPTM& u, const VectorFieldPTM& v) {
    return pairing_via_lift(domain, u, v, g);
  };

  std::vector<GradedExpr> ys;
  for (const auto& c : y) ys.push_back(GradedExpr(t, c));
  const auto ux = nabla_form(domain, x, geom.gamma);
  const auto uy = nabla_form(domain, y, geom.gamma);

  GradedExpr xflat(t);
  const OneForm alpha = flat(x, geom.g);
  for (std::size_t b = 0; b < n; ++b) xflat += alpha[b] * domain.ptm_gen(domain.dx(b));

  const ExprMatrix& w = geom.omega.components();
  std::vector<CheckResult> out;
  out.push_back(graded_check("(i) <i_X|i_Y> = omega(X,Y)", pair(ix, iy),
                             GradedExpr(t, bilinear_eval(w, x, y)), options));
  out.push_back(graded_check("(ii) <i_X|d> = 0", pair(ix, d), GradedExpr(t), options));
  out.push_back(graded_check("(iii) <d|d> = 0", pair(d, d), GradedExpr(t), options));
  out.push_back(graded_check("(iv) <L_X|d> = X^flat", pair(lx, d), xflat, options));
  out.push_back(graded_check("(v) <L_X|i_Y> = omega(nabla X, Y)", pair(lx, iy),
                             graded_bilinear(w, ux, Parity::Odd, ys, Parity::Even, t),
                             options));
  out.push_back(graded_check(
      "(vi) <L_X|L_Y> = <X|Y>_h + omega(nabla X, nabla Y)", pair(lx, ly),
      GradedExpr(t, bilinear_eval(geom.g.components(), x, y)) +
          graded_bilinear(w, ux, Parity::Odd, uy, Parity::Odd, t),
      options));
  return out;
}

std::vector<CheckResult> epsilon_observations(const SuperDomain& domain, const Geometry& geom,
                                              const MetricFunction& g, const VectorFieldM& x,
                                              const VectorFieldM& y,
                                              const EqualityOptions& options) {
  const TablePtr& t = domain.ptm();
  const VectorFieldPTM lx = lie_derivative(domain, x).field;
  const VectorFieldPTM ly = lie_derivative(domain, y).field;
  const VectorFieldPTM ix = interior(domain, x).field;
  const VectorFieldPTM iy = interior(domain, y).field;
  std::vector<CheckResult> out;
  out.push_back(graded_check(
      "eps(<L_X|L_Y>) = <X|Y>_h",
      GradedExpr(t, epsilon(pairing_via_lift(domain, lx, ly, g))),
      GradedExpr(t, bilinear_eval(geom.g.components(), x, y)), options));
  out.push_back(graded_check("<i_X|i_Y> = omega(X,Y)", pairing_via_lift(domain, ix, iy, g),
                             GradedExpr(t, bilinear_eval(geom.omega.components(), x, y)),
                             options));
  return out;
}

std::vector<CheckResult> cartan_relations(const SuperDomain& domain, const VectorFieldM& x,
                                          const VectorFieldM& y,
                                          const EqualityOptions& options) {
  const VectorFieldPTM d = de_rham(domain).field;
  const VectorFieldPTM ix = interior(domain, x).field;
  const VectorFieldPTM iy = interior(domain, y).field;
  const VectorFieldPTM lx = lie_derivative(domain, x).field;
  const VectorFieldPTM ixy = interior(domain, lie_bracket(domain.chart(), x, y)).field;
  const VectorFieldPTM zero_odd = VectorFieldPTM::zero(domain, Parity::Odd);
  const VectorFieldPTM zero_even = VectorFieldPTM::zero(domain, Parity::Even);
  std::vector<CheckResult> out;
  out.push_back(field_check("[d,d] = 0", domain, super_commutator(d, d), zero_even, options));
  out.push_back(field_check("[d,i_X] = L_X", domain, super_commutator(d, ix), lx, options));
  out.push_back(
      field_check("[i_X,i_Y] = 0", domain, super_commutator(ix, iy), zero_even, options));
  out.push_back(
      field_check("[L_X,i_Y] = i_[X,Y]", domain, super_commutator(lx, iy), ixy, options));
  out.push_back(
      field_check("[d,L_X] = 0", domain, super_commutator(d, lx), zero_odd, options));
  return out;
}

}  // namespace supersasaki
