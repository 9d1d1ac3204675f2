#include "supersasaki/sasakilift.hpp"

#include <sstream>

namespace supersasaki {

// ---------------------------------------------------------------------------
// SuperDomain

SuperDomain::SuperDomain(Chart chart) : chart_(std::move(chart)) {
  const std::size_t n = chart_.dim();
  std::vector<Generator> ptm;
  std::vector<Generator> tptm;
  std::vector<Generator> classical;
  for (std::size_t a = 0; a < n; ++a) ptm.push_back({x(a), Parity::Even});
  for (std::size_t a = 0; a < n; ++a) ptm.push_back({dx(a), Parity::Odd});
  tptm = ptm;
  for (std::size_t a = 0; a < n; ++a) tptm.push_back({xdot(a), Parity::Even});
  for (std::size_t a = 0; a < n; ++a) tptm.push_back({dxdot(a), Parity::Odd});
  for (std::size_t a = 0; a < n; ++a) tptm.push_back({xi(a), Parity::Odd});
  for (std::size_t a = 0; a < n; ++a) classical.push_back({x(a), Parity::Even});
  for (std::size_t a = 0; a < n; ++a) classical.push_back({delta(a), Parity::Even});
  for (std::size_t a = 0; a < n; ++a) classical.push_back({xdot(a), Parity::Even});
  for (std::size_t a = 0; a < n; ++a) classical.push_back({deltadot(a), Parity::Even});
  ptm_ = make_table(std::move(ptm));
  tptm_ = make_table(std::move(tptm));
  classical_ = make_table(std::move(classical));
}

GradedExpr SuperDomain::to_tptm(const GradedExpr& f) const { return embed(f, tptm_); }

GradedExpr SuperDomain::to_ptm(const GradedExpr& f) const {
  if (same_table(f.table(), ptm_)) return f;
  std::map<std::string, GradedExpr> images;
  for (const auto& gen : f.table()->generators()) {
    if (!ptm_->index_of(gen.name)) images.emplace(gen.name, GradedExpr(ptm_));
  }
  return gsubstitute(f, images, ptm_);
}

// ---------------------------------------------------------------------------
// VectorFieldPTM

namespace {

std::optional<Parity> homogeneous(const GradedExpr& e) {
  switch (parity_of(e)) {
    case GradedParity::Even: return Parity::Even;
    case GradedParity::Odd: return Parity::Odd;
    case GradedParity::Inhomogeneous: return std::nullopt;
  }
  return std::nullopt;
}

GradedExpr degree_parity_part(const GradedExpr& e, Parity p) {
  GradedExpr out(e.table());
  for (std::size_t k : e.form_degrees()) {
    if ((k % 2 == 1) == (p == Parity::Odd)) out += e.form_degree_part(k);
  }
  return out;
}

}  // namespace

VectorFieldPTM::VectorFieldPTM(const SuperDomain& domain, std::vector<GradedExpr> base,
                               std::vector<GradedExpr> bar, std::optional<Parity> declared)
    : VectorFieldPTM(from_components(domain.ptm(), std::move(base), std::move(bar), declared)) {
  if (base_.size() != domain.dim()) {
    throw GradedError("vector field needs one component per coordinate in each block");
  }
}

VectorFieldPTM VectorFieldPTM::from_components(TablePtr ptm, std::vector<GradedExpr> base,
                                               std::vector<GradedExpr> bar,
                                               std::optional<Parity> declared) {
  VectorFieldPTM out;
  out.table_ = std::move(ptm);
  out.base_ = std::move(base);
  out.bar_ = std::move(bar);
  out.declared_ = declared;
  out.validate();
  return out;
}

void VectorFieldPTM::validate() const {
  if (base_.size() != bar_.size() || 2 * base_.size() != table_->size()) {
    throw GradedError("vector field needs one component per coordinate in each block");
  }
  for (const auto* block : {&base_, &bar_}) {
    for (const auto& c : *block) {
      if (!same_table(c.table(), table_)) {
        throw GradedError("vector field component is not over the PTM table");
      }
    }
  }
  if (declared_ && !is_zero()) {
    auto p = parity();
    if (!p || *p != *declared_) {
      throw GradedError("vector field components do not have the declared parity");
    }
  }
}

VectorFieldPTM VectorFieldPTM::zero(const SuperDomain& domain, Parity parity) {
  std::vector<GradedExpr> z(domain.dim(), GradedExpr(domain.ptm()));
  return VectorFieldPTM(domain, z, z, parity);
}

bool VectorFieldPTM::is_zero() const {
  for (const auto& c : base_) {
    if (!c.is_zero()) return false;
  }
  for (const auto& c : bar_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<Parity> VectorFieldPTM::parity() const {
  std::optional<Parity> p;
  auto merge = [&](const GradedExpr& c, bool shifted) {
    if (c.is_zero()) return true;
    auto q = homogeneous(c);
    if (!q) return false;
    const Parity total = shifted ? flip(*q) : *q;
    if (p && *p != total) return false;
    p = total;
    return true;
  };
  for (const auto& c : base_) {
    if (!merge(c, false)) return std::nullopt;
  }
  for (const auto& c : bar_) {
    if (!merge(c, true)) return std::nullopt;
  }
  if (!p) return declared_.value_or(Parity::Even);
  return p;
}

Parity VectorFieldPTM::require_parity() const {
  auto p = parity();
  if (!p) throw GradedError("vector field is not homogeneous");
  return *p;
}

std::pair<VectorFieldPTM, VectorFieldPTM> VectorFieldPTM::split() const {
  VectorFieldPTM even;
  VectorFieldPTM odd;
  even.table_ = odd.table_ = table_;
  even.declared_ = Parity::Even;
  odd.declared_ = Parity::Odd;
  for (const auto& c : base_) {
    even.base_.push_back(degree_parity_part(c, Parity::Even));
    odd.base_.push_back(degree_parity_part(c, Parity::Odd));
  }
  for (const auto& c : bar_) {
    even.bar_.push_back(degree_parity_part(c, Parity::Odd));
    odd.bar_.push_back(degree_parity_part(c, Parity::Even));
  }
  return {std::move(even), std::move(odd)};
}

GradedExpr VectorFieldPTM::apply(const GradedExpr& f) const {
  if (!same_table(f.table(), table_)) throw GradedError("function is not over the PTM table");
  const std::size_t n = base_.size();
  GradedExpr out(table_);
  for (std::size_t a = 0; a < n; ++a) {
    const Generator& x = (*table_)[a];
    const Generator& dx = (*table_)[n + a];
    if (!base_[a].is_zero()) out += base_[a] * partial(f, x.name);
    if (!bar_[a].is_zero()) out += bar_[a] * partial(f, dx.name);
  }
  return out;
}

VectorFieldPTM operator+(const VectorFieldPTM& a, const VectorFieldPTM& b) {
  if (!same_table(a.table_, b.table_) || a.dim() != b.dim()) {
    throw GradedError("vector fields over different domains");
  }
  VectorFieldPTM out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.base_[i] += b.base_[i];
    out.bar_[i] += b.bar_[i];
  }
  if (a.declared_ != b.declared_) out.declared_.reset();
  return out;
}

VectorFieldPTM operator-(const VectorFieldPTM& a, const VectorFieldPTM& b) {
  if (!same_table(a.table_, b.table_) || a.dim() != b.dim()) {
    throw GradedError("vector fields over different domains");
  }
  VectorFieldPTM out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.base_[i] -= b.base_[i];
    out.bar_[i] -= b.bar_[i];
  }
  if (a.declared_ != b.declared_) out.declared_.reset();
  return out;
}

VectorFieldPTM operator*(const GradedExpr& f, const VectorFieldPTM& x) {
  VectorFieldPTM out = x;
  for (auto& c : out.base_) c = f * c;
  for (auto& c : out.bar_) c = f * c;
  auto pf = homogeneous(f);
  if (x.declared_ && pf) {
    out.declared_ = *pf + *x.declared_;
  } else {
    out.declared_.reset();
  }
  return out;
}

std::string VectorFieldPTM::str(const SuperDomain& domain) const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const GradedExpr& c, const std::string& gen) {
    if (c.is_zero()) return;
    if (!first) os << " + ";
    first = false;
    const std::string text = c.str();
    if (text == "1") {
      os << "d/d" << gen;
    } else if (text.find_first_of("+ ") == std::string::npos) {
      os << text << "*d/d" << gen;
    } else {
      os << "(" << text << ")*d/d" << gen;
    }
  };
  for (std::size_t a = 0; a < dim(); ++a) emit(base_[a], domain.x(a));
  for (std::size_t a = 0; a < dim(); ++a) emit(bar_[a], domain.dx(a));
  if (first) os << "0";
  return os.str();
}

bool field_is_zero(const VectorFieldPTM& x, const EqualityOptions& options) {
  for (const auto& c : x.base()) {
    if (!graded_is_zero(c, options)) return false;
  }
  for (const auto& c : x.bar()) {
    if (!graded_is_zero(c, options)) return false;
  }
  return true;
}

VectorFieldPTM coordinate_field(const SuperDomain& domain, std::size_t a) {
  std::vector<GradedExpr> base(domain.dim(), GradedExpr(domain.ptm()));
  std::vector<GradedExpr> bar = base;
  base.at(a) = domain.ptm_scalar(1);
  return VectorFieldPTM(domain, base, bar, Parity::Even);
}

VectorFieldPTM form_field(const SuperDomain& domain, std::size_t a) {
  std::vector<GradedExpr> base(domain.dim(), GradedExpr(domain.ptm()));
  std::vector<GradedExpr> bar = base;
  bar.at(a) = domain.ptm_scalar(1);
  return VectorFieldPTM(domain, base, bar, Parity::Odd);
}

// ---------------------------------------------------------------------------
// Metric functions

MetricFunction::MetricFunction(const SuperDomain& domain, GradedExpr value)
    : value_(std::move(value)) {
  if (!same_table(value_.table(), domain.tptm())) {
    throw GradedError("metric function is not over the T(PTM) table");
  }
  if (parity_of(value_) != GradedParity::Even) {
    throw GradedError("metric function is not even");
  }
  if (!domain.to_ptm(value_).is_zero()) {
    throw GradedError("metric function does not vanish on the zero section");
  }
}

std::vector<GradedExpr> nabla_dot(const SuperDomain& domain, const Christoffel& gamma) {
  const std::size_t n = domain.dim();
  std::vector<GradedExpr> out;
  for (std::size_t a = 0; a < n; ++a) {
    GradedExpr e = domain.tptm_gen(domain.dxdot(a));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (gamma(a, c, b).is_zero()) continue;
        e += gamma(a, c, b) *
             (domain.tptm_gen(domain.dx(b)) * domain.tptm_gen(domain.xdot(c)));
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

GradedExpr decomposed_metric(const SuperDomain& domain, const MetricTensor& g,
                             const AlmostSymplectic& omega) {
  const std::size_t n = domain.dim();
  GradedExpr out(domain.tptm());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out += g(b, a) * (domain.tptm_gen(domain.xdot(a)) * domain.tptm_gen(domain.xdot(b)));
      out += omega(b, a) * (domain.tptm_gen(domain.xi(a)) * domain.tptm_gen(domain.xi(b)));
    }
  }
  return out;
}

MetricFunction super_sasaki(const SuperDomain& domain, const Geometry& geom) {
  const GradedExpr big_g = decomposed_metric(domain, geom.g, geom.omega);
  const auto nabla = nabla_dot(domain, geom.gamma);
  std::map<std::string, GradedExpr> images;
  for (std::size_t a = 0; a < domain.dim(); ++a) images.emplace(domain.xi(a), nabla[a]);
  return MetricFunction(domain, gsubstitute(big_g, images, domain.tptm()));
}

GradedExpr super_sasaki_expanded(const SuperDomain& domain, const Geometry& geom) {
  const std::size_t n = domain.dim();
  const auto& g = geom.g;
  const auto& w = geom.omega;
  const auto& gam = geom.gamma;
  auto xdot = [&](std::size_t a) { return domain.tptm_gen(domain.xdot(a)); };
  auto dxdot = [&](std::size_t a) { return domain.tptm_gen(domain.dxdot(a)); };
  auto dx = [&](std::size_t a) { return domain.tptm_gen(domain.dx(a)); };

  GradedExpr out(domain.tptm());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out += g(b, a) * (xdot(a) * xdot(b));
      out += w(b, a) * (dxdot(a) * dxdot(b));
      GradedExpr cross(domain.tptm());
      GradedExpr quad(domain.tptm());
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          cross += (gam(d, c, b) * w(d, a)) * dx(c);
          ScalarExpr k;
          for (std::size_t e = 0; e < n; ++e) {
            for (std::size_t f = 0; f < n; ++f) k += gam(e, d, a) * gam(f, b, c) * w(f, e);
          }
          if (!k.is_zero()) quad += k * (dx(c) * dx(d));
        }
      }
      out += ScalarExpr(2) * (dxdot(a) * xdot(b) * cross);
      out -= xdot(a) * xdot(b) * quad;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertical lift and pairings

VerticalLift::VerticalLift(const SuperDomain& domain, const VectorFieldPTM& x) {
  if (!same_table(x.table(), domain.ptm())) throw GradedError("field from another domain");
  for (std::size_t a = 0; a < domain.dim(); ++a) {
    xdot_.push_back(domain.xdot(a));
    dxdot_.push_back(domain.dxdot(a));
    along_xdot_.push_back(domain.to_tptm(x.base()[a]));
    along_dxdot_.push_back(domain.to_tptm(x.bar()[a]));
  }
}

GradedExpr VerticalLift::apply(const GradedExpr& f) const {
  GradedExpr out(f.table());
  for (std::size_t a = 0; a < xdot_.size(); ++a) {
    if (!along_xdot_[a].is_zero()) out += along_xdot_[a] * partial(f, xdot_[a]);
    if (!along_dxdot_[a].is_zero()) out += along_dxdot_[a] * partial(f, dxdot_[a]);
  }
  return out;
}

VerticalLift vertical_lift(const SuperDomain& domain, const VectorFieldPTM& x) {
  return VerticalLift(domain, x);
}

GradedExpr pairing_via_lift(const SuperDomain& domain, const VectorFieldPTM& x,
                            const VectorFieldPTM& y, const MetricFunction& g) {
  const GradedExpr inner = vertical_lift(domain, y).apply(g.value());
  const GradedExpr outer = vertical_lift(domain, x).apply(inner);
  return ScalarExpr(Rational(1, 2)) * domain.to_ptm(outer);
}

namespace {

GradedExpr closed_form_homogeneous(const SuperDomain& domain, const VectorFieldPTM& x,
                                   const VectorFieldPTM& y, const Geometry& geom) {
  const std::size_t n = domain.dim();
  const TablePtr& t = domain.ptm();
  const auto& g = geom.g;
  const auto& w = geom.omega;
  const auto& gam = geom.gamma;
  const Parity px = x.require_parity();
  const Parity py = y.require_parity();
  const ScalarExpr sy(py == Parity::Odd ? -1 : 1);
  const ScalarExpr sxy(to_int(px) * (to_int(py) + 1) % 2 == 1 ? -1 : 1);
  auto dx = [&](std::size_t a) { return domain.ptm_gen(domain.dx(a)); };

  // K_ab = dx^c dx^d Gamma^e_da Gamma^f_bc omega_fe ; L_ab = dx^c Gamma^d_cb omega_da
  std::vector<std::vector<GradedExpr>> k(n, std::vector<GradedExpr>(n, GradedExpr(t)));
  std::vector<std::vector<GradedExpr>> l(n, std::vector<GradedExpr>(n, GradedExpr(t)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        ScalarExpr lc;
        for (std::size_t d = 0; d < n; ++d) {
          lc += gam(d, c, b) * w(d, a);
          ScalarExpr kc;
          for (std::size_t e = 0; e < n; ++e) {
            for (std::size_t f = 0; f < n; ++f) kc += gam(e, d, a) * gam(f, b, c) * w(f, e);
          }
          if (!kc.is_zero()) k[a][b] += kc * (dx(c) * dx(d));
        }
        if (!lc.is_zero()) l[a][b] += lc * dx(c);
      }
    }
  }

  const auto& xa = x.base();
  const auto& xb = x.bar();
  const auto& ya = y.base();
  const auto& yb = y.bar();
  GradedExpr out(t);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out += xa[a] * ya[b] * GradedExpr(t, g(b, a));
      out -= xa[a] * ya[b] * k[a][b];
      out += (sy * (xb[a] * ya[b]) + sxy * (yb[a] * xa[b])) * l[a][b];
      out += sy * (xb[a] * yb[b] * GradedExpr(t, w(b, a)));
    }
  }
  return out;
}

}  // namespace

GradedExpr pairing_closed_form(const SuperDomain& domain, const VectorFieldPTM& x,
                               const VectorFieldPTM& y, const Geometry& geom) {
  if (x.parity() && y.parity()) return closed_form_homogeneous(domain, x, y, geom);
  const auto [x0, x1] = x.split();
  const auto [y0, y1] = y.split();
  GradedExpr out(domain.ptm());
  for (const auto* u : {&x0, &x1}) {
    for (const auto* v : {&y0, &y1}) {
      if (u->is_zero() || v->is_zero()) continue;
      out += closed_form_homogeneous(domain, *u, *v, geom);
    }
  }
  return out;
}

GradedExpr classical_sasaki(const SuperDomain& domain, const MetricTensor& g,
                            const Christoffel& gamma) {
  const std::size_t n = domain.dim();
  auto var = [](const std::string& s) { return ScalarExpr::variable(s); };
  std::vector<ScalarExpr> d(n);
  for (std::size_t a = 0; a < n; ++a) {
    ScalarExpr e = var(domain.deltadot(a));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        e += var(domain.delta(b)) * var(domain.xdot(c)) * gamma(a, c, b);
      }
    }
    d[a] = e;
  }
  ScalarExpr out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out += (var(domain.xdot(a)) * var(domain.xdot(b)) + d[a] * d[b]) * g(b, a);
    }
  }
  return GradedExpr(domain.classical(), out);
}

GradedExpr graded_bilinear(const ExprMatrix& b, const std::vector<GradedExpr>& u, Parity pu,
                           const std::vector<GradedExpr>& v, Parity pv, const TablePtr& table) {
  const std::size_t n = b.size();
  if (u.size() != n || v.size() != n) throw GeometryError("vector dimension mismatch");
  GradedExpr out(table);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b[i][j].is_zero()) continue;
      out += b[i][j] * (u[i] * v[j]);
    }
  }
  return pu == Parity::Odd && pv == Parity::Odd ? -out : out;
}

NondegeneracyBlocks nondegeneracy(const SuperDomain& domain, const MetricFunction& g,
                                  const EqualityOptions& options) {
  const std::size_t n = domain.dim();
  NondegeneracyBlocks out{zero_matrix(n, n), zero_matrix(n, n), false, false};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.even_block[a][b] = epsilon(pairing_via_lift(
          domain, coordinate_field(domain, a), coordinate_field(domain, b), g));
      out.odd_block[a][b] = epsilon(
          pairing_via_lift(domain, form_field(domain, a), form_field(domain, b), g));
    }
  }
  out.even_nonzero = nonzero_at_samples(determinant(out.even_block), options);
  out.odd_nonzero = nonzero_at_samples(determinant(out.odd_block), options);
  return out;
}

std::vector<Convention> convention_ledger() {
  return {
      {"odd derivatives", "left: d/dxi (xi*m) = m"},
      {"vector fields", "left derivations, coefficients multiply from the left"},
      {"monomial order", "generator declaration order x, dx, xdot, dxdot, xi_x"},
      {"omega dictionary",
       "omega = sum_{a<b} c_ab dx^a^dx^b has components omega_ab = -c_ab; "
       "omega(X,Y) = X^a Y^b omega_ab"},
      {"bilinear on forms", "B(U,V) = (-1)^{|U||V|} U^a V^b B_ab"},
      {"G normalization", "G = xdot^a xdot^b g_ba + xi^a xi^b omega_ba (no factor 1/2)"},
      {"pairing", "<X|Y> = 1/2 iota_X iota_Y g"},
  };
}

}  // namespace supersasaki
