#include "supersasaki/transform.hpp"

#include "supersasaki/cartan.hpp"

namespace supersasaki {

SmoothMap::SmoothMap(Chart source, Chart target, ExprVector components,
                     std::optional<ExprVector> inverse)
    : source_(std::move(source)),
      target_(std::move(target)),
      y_(std::move(components)),
      inverse_(std::move(inverse)) {
  if (y_.size() != target_.dim()) {
    throw GeometryError("map needs one component per target coordinate");
  }
  const auto vocab = source_.vocabulary();
  for (auto& c : y_) {
    c = simplify(c);
    for (const auto& v : c.free_variables()) {
      if (!vocab.count(v)) throw GeometryError("map component uses unknown variable '" + v + "'");
    }
  }
  if (inverse_) {
    if (inverse_->size() != source_.dim()) {
      throw GeometryError("inverse needs one component per source coordinate");
    }
    const auto tv = target_.vocabulary();
    for (auto& c : *inverse_) {
      c = simplify(c);
      for (const auto& v : c.free_variables()) {
        if (!tv.count(v)) throw GeometryError("inverse uses unknown variable '" + v + "'");
      }
    }
  }
  jacobian_ = zero_matrix(target_.dim(), source_.dim());
  for (std::size_t al = 0; al < target_.dim(); ++al) {
    images_.emplace(target_.coord(al), y_[al]);
    for (std::size_t a = 0; a < source_.dim(); ++a) {
      jacobian_[al][a] = differentiate(y_[al], source_.coord(a));
    }
  }
}

ScalarExpr SmoothMap::pull(const ScalarExpr& f) const { return substitute(f, images_); }

bool SmoothMap::inverse_consistent(const EqualityOptions& options) const {
  if (!inverse_) return false;
  for (std::size_t a = 0; a < source_.dim(); ++a) {
    if (!expr_equal(pull((*inverse_)[a]), ScalarExpr::variable(source_.coord(a)),
                    source_.options(options))) {
      return false;
    }
  }
  std::map<std::string, ScalarExpr> back;
  for (std::size_t a = 0; a < source_.dim(); ++a) back.emplace(source_.coord(a), (*inverse_)[a]);
  for (std::size_t al = 0; al < target_.dim(); ++al) {
    if (!expr_equal(substitute(y_[al], back), ScalarExpr::variable(target_.coord(al)),
                    target_.options(options))) {
      return false;
    }
  }
  return true;
}

bool SmoothMap::locally_invertible(const EqualityOptions& options) const {
  if (source_.dim() != target_.dim()) return false;
  return nonzero_at_samples(determinant(jacobian_), source_.options(options));
}

SmoothMap compose(const SmoothMap& psi, const SmoothMap& chi) {
  if (!(chi.target() == psi.source())) throw GeometryError("maps do not compose");
  ExprVector out;
  for (const auto& c : psi.components()) out.push_back(chi.pull(c));
  std::optional<ExprVector> inverse;
  if (psi.inverse() && chi.inverse()) {
    std::map<std::string, ScalarExpr> psi_inv;
    for (std::size_t b = 0; b < psi.source().dim(); ++b) {
      psi_inv.emplace(psi.source().coord(b), (*psi.inverse())[b]);
    }
    inverse.emplace();
    for (const auto& c : *chi.inverse()) inverse->push_back(substitute(c, psi_inv));
  }
  return SmoothMap(chi.source(), psi.target(), std::move(out), std::move(inverse));
}

namespace {

std::map<std::string, GradedExpr> prolong_into(const SmoothMap& psi, const SuperDomain& src,
                                               const SuperDomain& tgt, const TablePtr& table,
                                               bool full) {
  const std::size_t m = src.dim();
  const std::size_t n = tgt.dim();
  const ExprMatrix& jac = psi.jacobian();
  auto gen = [&](const std::string& name) { return GradedExpr::generator(table, name); };
  std::map<std::string, GradedExpr> images;
  for (std::size_t al = 0; al < n; ++al) {
    images.emplace(tgt.x(al), GradedExpr(table, psi.components()[al]));
    GradedExpr dy(table);
    for (std::size_t a = 0; a < m; ++a) {
      if (!jac[al][a].is_zero()) dy += jac[al][a] * gen(src.dx(a));
    }
    images.emplace(tgt.dx(al), dy);
    if (!full) continue;
    GradedExpr ydot(table);
    GradedExpr dydot(table);
    GradedExpr xi(table);
    for (std::size_t b = 0; b < m; ++b) {
      if (!jac[al][b].is_zero()) {
        ydot += jac[al][b] * gen(src.xdot(b));
        dydot += jac[al][b] * gen(src.dxdot(b));
        xi += jac[al][b] * gen(src.xi(b));
      }
      for (std::size_t c = 0; c < m; ++c) {
        const ScalarExpr second = differentiate(jac[al][b], src.x(c));
        if (!second.is_zero()) dydot += second * (gen(src.xdot(b)) * gen(src.dx(c)));
      }
    }
    images.emplace(tgt.xdot(al), ydot);
    images.emplace(tgt.dxdot(al), dydot);
    images.emplace(tgt.xi(al), xi);
  }
  return images;
}

// t_ab(x) = d_a y^alpha d_b y^beta t_alpha beta(y(x))
ExprMatrix pull_bilinear(const SmoothMap& psi, const ExprMatrix& t) {
  const std::size_t m = psi.source().dim();
  const std::size_t n = psi.target().dim();
  const ExprMatrix& jac = psi.jacobian();
  ExprMatrix out = zero_matrix(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      ScalarExpr s;
      for (std::size_t al = 0; al < n; ++al) {
        for (std::size_t be = 0; be < n; ++be) {
          if (t[al][be].is_zero()) continue;
          s += jac[al][a] * jac[be][b] * psi.pull(t[al][be]);
        }
      }
      out[a][b] = s;
    }
  }
  return out;
}

void require_charts(const SmoothMap& psi, const SuperDomain& src, const SuperDomain& tgt) {
  if (!(psi.source() == src.chart()) || !(psi.target() == tgt.chart())) {
    throw GeometryError("domains do not match the map's charts");
  }
}

}  // namespace

std::map<std::string, GradedExpr> prolong(const SmoothMap& psi, const SuperDomain& source,
                                          const SuperDomain& target) {
  require_charts(psi, source, target);
  return prolong_into(psi, source, target, source.tptm(), true);
}

GradedExpr pullback(const SmoothMap& psi, const GradedExpr& f, const SuperDomain& source,
                    const SuperDomain& target) {
  require_charts(psi, source, target);
  if (same_table(f.table(), target.ptm())) {
    return gsubstitute(f, prolong_into(psi, source, target, source.ptm(), false), source.ptm());
  }
  if (same_table(f.table(), target.tptm())) {
    return gsubstitute(f, prolong_into(psi, source, target, source.tptm(), true),
                       source.tptm());
  }
  throw GradedError("pullback of a function outside the target tables");
}

TransformedTensors transform_tensors(const SmoothMap& psi, const MetricTensor& g,
                                     const AlmostSymplectic& omega, const Christoffel& gamma) {
  const std::size_t m = psi.source().dim();
  const std::size_t n = psi.target().dim();
  if (g.dim() != n || omega.dim() != n || gamma.dim() != n) {
    throw GeometryError("tensor dimension does not match the target chart");
  }
  const ExprMatrix& jac = psi.jacobian();
  TransformedTensors out{pull_bilinear(psi, g.components()),
                         pull_bilinear(psi, omega.components()), Christoffel(m)};

  if (m != n) throw GeometryError("Christoffel transformation needs a diffeomorphism");
  ExprMatrix jinv;
  try {
    jinv = inverse(jac);
  } catch (const SymbolicError&) {
    throw GeometryError("map Jacobian is not invertible");
  }
  std::vector<ExprMatrix> gm(m, zero_matrix(m, m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = b; c < m; ++c) {
        ScalarExpr s;
        for (std::size_t al = 0; al < n; ++al) {
          if (jinv[a][al].is_zero()) continue;
          ScalarExpr inner = differentiate(jac[al][b], psi.source().coord(c));
          for (std::size_t be = 0; be < n; ++be) {
            for (std::size_t ga = 0; ga < n; ++ga) {
              if (gamma(al, be, ga).is_zero()) continue;
              inner += jac[be][b] * jac[ga][c] * psi.pull(gamma(al, be, ga));
            }
          }
          s += jinv[a][al] * inner;
        }
        gm[a][b][c] = s;
        gm[a][c][b] = s;
      }
    }
  }
  out.gamma = Christoffel(std::move(gm));
  return out;
}

bool is_isometry(const SmoothMap& psi, const MetricTensor& g_m, const MetricTensor& g_n,
                 const EqualityOptions& options) {
  return matrix_equal(pull_bilinear(psi, g_n.components()), g_m.components(),
                      psi.source().options(options));
}

bool is_symplectomorphism(const SmoothMap& psi, const AlmostSymplectic& w_m,
                          const AlmostSymplectic& w_n, const EqualityOptions& options) {
  return matrix_equal(pull_bilinear(psi, w_n.components()), w_m.components(),
                      psi.source().options(options));
}

NaturalityReport check_naturality(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                                  const EqualityOptions& options) {
  if (!(psi.source() == m.chart) || !(psi.target() == n.chart)) {
    throw GeometryError("geometries do not match the map's charts");
  }
  const EqualityOptions opts = m.chart.options(options);
  NaturalityReport out;
  out.isometry = is_isometry(psi, m.g, n.g, opts);
  out.symplectomorphism = is_symplectomorphism(psi, m.omega, n.omega, opts);
  const SuperDomain dm(m.chart);
  const SuperDomain dn(n.chart);
  const GradedExpr pulled = pullback(psi, super_sasaki(dn, n).value(), dm, dn);
  out.check = graded_check("Psi^* g_N = g_M", pulled, super_sasaki(dm, m).value(), opts);
  out.residual = pulled - super_sasaki(dm, m).value();
  return out;
}

VectorFieldPTM related_field(const SmoothMap& psi, const VectorFieldPTM& x,
                             const SuperDomain& source, const SuperDomain& target) {
  require_charts(psi, source, target);
  if (!same_table(x.table(), target.ptm())) throw GradedError("field is not over the target");
  const std::size_t m = source.dim();
  const std::size_t n = target.dim();
  if (m != n) throw GeometryError("related fields need a diffeomorphism");
  const TablePtr& t = source.ptm();
  const ExprMatrix& jac = psi.jacobian();
  ExprMatrix jinv;
  try {
    jinv = inverse(jac);
  } catch (const SymbolicError&) {
    throw GeometryError("map Jacobian is not invertible");
  }
  auto pb = [&](const GradedExpr& f) { return pullback(psi, f, source, target); };

  // X'(Psi^* y) = Psi^*(X y) and X'(Psi^* dy) = Psi^*(X dy), solved with J^-1.
  std::vector<GradedExpr> base(m, GradedExpr(t));
  std::vector<GradedExpr> bar(m, GradedExpr(t));
  std::vector<GradedExpr> xb;
  std::vector<GradedExpr> xbar;
  for (std::size_t al = 0; al < n; ++al) {
    xb.push_back(pb(x.base()[al]));
    xbar.push_back(pb(x.bar()[al]));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t al = 0; al < n; ++al) {
      if (!jinv[a][al].is_zero()) base[a] += jinv[a][al] * xb[al];
    }
  }
  for (std::size_t be = 0; be < n; ++be) {
    GradedExpr rest = xbar[be];
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t e = 0; e < m; ++e) {
        const ScalarExpr second = differentiate(jac[be][c], source.x(e));
        if (second.is_zero()) continue;
        rest -= second * (base[c] * source.ptm_gen(source.dx(e)));
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (!jinv[a][be].is_zero()) bar[a] += jinv[a][be] * rest;
    }
  }
  return VectorFieldPTM(source, std::move(base), std::move(bar), x.parity());
}

CheckResult invariance_check(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                             const VectorFieldPTM& x, const VectorFieldPTM& y,
                             const EqualityOptions& options) {
  const SuperDomain dm(m.chart);
  const SuperDomain dn(n.chart);
  const GradedExpr lhs =
      pullback(psi, pairing_via_lift(dn, x, y, super_sasaki(dn, n)), dm, dn);
  const VectorFieldPTM xm = related_field(psi, x, dm, dn);
  const VectorFieldPTM ym = related_field(psi, y, dm, dn);
  const GradedExpr rhs = pairing_via_lift(dm, xm, ym, super_sasaki(dm, m));
  return graded_check("Psi^* <X|Y>_N = <X'|Y'>_M", lhs, rhs, m.chart.options(options));
}

}  // namespace supersasaki
