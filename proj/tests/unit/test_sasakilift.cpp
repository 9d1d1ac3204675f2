#include <doctest.h>

#include <random>

#include <supersasaki/cartan.hpp>
#include <supersasaki/random_fields.hpp>
#include <supersasaki/sasakilift.hpp>

#include "support/geometries.hpp"
#include "support/oracles.hpp"

using namespace supersasaki;
using testgeom::euclidean;
using testgeom::misner;
using testgeom::warped;

TEST_CASE("super domains") {
  const SuperDomain d(Chart({"x", "y"}));
  CHECK(d.ptm()->size() == 4);
  CHECK(d.tptm()->size() == 10);
  CHECK(d.classical()->size() == 8);
  CHECK((*d.ptm())[2].parity == Parity::Odd);
  CHECK((*d.tptm())[5].name == "ydot");
  CHECK((*d.tptm())[5].parity == Parity::Even);
  for (const auto& gen : d.classical()->generators()) CHECK(gen.parity == Parity::Even);
}

TEST_CASE("vector fields on PTM") {
  const SuperDomain d(Chart({"x", "y"}));
  const TablePtr t = d.ptm();
  auto G = [&](const char* s) { return parse_graded(s, t); };
  // an even field must have odd barred components
  CHECK_THROWS_AS(VectorFieldPTM(d, {G("x"), G("1")}, {G("x"), G("0")}, Parity::Even),
                  GradedError);
  const VectorFieldPTM inhom(d, {G("1"), G("dx")}, {G("0"), G("0")});
  CHECK_FALSE(inhom.parity().has_value());
  const auto [even, odd] = inhom.split();
  CHECK(even.parity() == Parity::Even);
  CHECK(odd.parity() == Parity::Odd);
  CHECK(field_is_zero(even + odd - inhom, {}));
  // coordinate fields act as left derivatives
  CHECK(coordinate_field(d, 0).apply(G("x^2*dy")) == G("2*x*dy"));
  CHECK(form_field(d, 1).apply(G("dx*dy")) == G("-dx"));
}

TEST_CASE("splitting covectors") {
  const Geometry e = euclidean(2);
  const SuperDomain de(e.chart);
  const auto flat_nd = nabla_dot(de, e.gamma);
  CHECK(flat_nd[0].str() == "dxdot");
  CHECK(flat_nd[1].str() == "dydot");

  const Geometry m = misner();
  const SuperDomain dm(m.chart);
  const auto nd = nabla_dot(dm, m.gamma);
  // dxdot^a + dx^b xdot^c Gamma^a_cb with Gamma^t_{t phi} = 1/2, Gamma^t_{phi phi} = t/2,
  // Gamma^phi_{phi phi} = -1/2
  CHECK(nd[0] == parse_graded("dtdot + 1/2*dt*phidot + 1/2*dphi*tdot + 1/2*t*dphi*phidot",
                              dm.tptm()));
  CHECK(nd[1] == parse_graded("dphidot - 1/2*dphi*phidot", dm.tptm()));
  for (const auto& n : nd) CHECK(parity_of(n) == GradedParity::Odd);
}

TEST_CASE("super-Sasaki metric") {
  const Geometry e = euclidean(2);
  const SuperDomain de(e.chart);
  CHECK(super_sasaki(de, e).str() == "xdot^2 + ydot^2 + 2*dxdot*dydot");

  const Geometry m = misner();
  const SuperDomain dm(m.chart);
  const MetricFunction g = super_sasaki(dm, m);
  CHECK(parity_of(g.value()) == GradedParity::Even);
  CHECK(super_sasaki_expanded(dm, m) == g.value());
  // the compact form 2 tdot phidot + t phidot^2 + 2 nabla tdot nabla phidot
  const auto nd = nabla_dot(dm, m.gamma);
  const GradedExpr compact = parse_graded("2*tdot*phidot + t*phidot^2", dm.tptm()) +
                             GradedExpr(dm.tptm(), 2) * nd[0] * nd[1];
  CHECK(compact == g.value());

  const Geometry w = warped();
  const SuperDomain dw(w.chart);
  CHECK(graded_equal(super_sasaki_expanded(dw, w), super_sasaki(dw, w).value(), w.chart.options()));
}

TEST_CASE("metric functions are validated") {
  const SuperDomain d(Chart({"x", "y"}));
  CHECK_THROWS(MetricFunction(d, parse_graded("xdot*dxdot", d.tptm())));
  CHECK_THROWS(MetricFunction(d, parse_graded("1 + xdot^2", d.tptm())));
  CHECK_THROWS(MetricFunction(d, parse_graded("dx", d.ptm())));
  CHECK_NOTHROW(MetricFunction(d, parse_graded("x*xdot^2 + dxdot*dydot", d.tptm())));
}

TEST_CASE("vertical lift") {
  const Geometry e = euclidean(2);
  const SuperDomain d(e.chart);
  const MetricFunction g = super_sasaki(d, e);
  CHECK(vertical_lift(d, coordinate_field(d, 0)).apply(g.value()).str() == "2*xdot");
  const VerticalLift l = vertical_lift(d, coordinate_field(d, 0));
  CHECK(l.along_xdot()[0].str() == "1");
  FieldSampler s(1);
  const VectorFieldPTM x = s.ptm_field(d, Parity::Odd);
  const VectorFieldPTM y = s.ptm_field(d, Parity::Odd);
  const GradedExpr f = d.to_tptm(s.graded(d, Parity::Even)) * g.value();
  CHECK(vertical_lift(d, x + y).apply(f) ==
        vertical_lift(d, x).apply(f) + vertical_lift(d, y).apply(f));
}

TEST_CASE("pairings on named fields") {
  const Geometry e = euclidean(2);
  const SuperDomain d(e.chart);
  const MetricFunction g = super_sasaki(d, e);
  const VectorFieldPTM dr = de_rham(d).field;
  CHECK(pairing_via_lift(d, dr, dr, g).is_zero());
  const GradedExpr ixiy =
      pairing_via_lift(d, interior(d, {1, 0}).field, interior(d, {0, 1}).field, g);
  CHECK(ixiy.str() == bilinear_eval(e.omega.components(), {1, 0}, {0, 1}).str());
  CHECK(pairing_via_lift(d, dr, VectorFieldPTM::zero(d, Parity::Odd), g).is_zero());
  // Gamma = 0 and no barred parts: X^a Y^b g_ba
  const VectorFieldPTM x(d, {parse_graded("x", d.ptm()), parse_graded("y^2", d.ptm())},
                         {GradedExpr(d.ptm()), GradedExpr(d.ptm())}, Parity::Even);
  CHECK(pairing_closed_form(d, x, x, e) == parse_graded("x^2 + y^4", d.ptm()));
}

TEST_CASE("closed form matches the lift on random fields") {
  for (const Geometry& geom : {euclidean(2), misner(), warped()}) {
    const SuperDomain d(geom.chart);
    const MetricFunction g = super_sasaki(d, geom);
    FieldSampler s(17);
    for (int k = 0; k < 12; ++k) {
      const VectorFieldPTM x = s.ptm_field(d, k % 2 ? Parity::Odd : Parity::Even);
      const VectorFieldPTM y = s.ptm_field(d, (k / 2) % 2 ? Parity::Odd : Parity::Even);
      const GradedExpr lift = pairing_via_lift(d, x, y, g);
      CHECK(graded_equal(pairing_closed_form(d, x, y, geom), lift, geom.chart.options()));
      // inhomogeneous fields split into homogeneous parts
      CHECK(graded_equal(pairing_closed_form(d, x + y, y, geom),
                         pairing_via_lift(d, x + y, y, g), geom.chart.options()));
    }
  }
}

TEST_CASE("lifted pairing against a numeric Grassmann oracle") {
  // iota_X iota_Y g expanded by hand: with Y independent of the fibre,
  //   X^a Y^b g_,ab + X^a Ybar^b d_a D_b g + (-1)^|Y| Xbar^a Y^b D_a d_b g
  //   - (-1)^|Y| Xbar^a Ybar^b D_a D_b g,
  // d_a = d/dxdot^a (finite differences), D_a = d/ddxdot^a (bitmask oracle).
  const Geometry m = misner();
  const SuperDomain d(m.chart);
  const MetricFunction g = super_sasaki(d, m);
  const TablePtr tp = d.tptm();
  auto idx = [&](const std::string& n) { return static_cast<int>(*tp->index_of(n)); };
  FieldSampler s(23);
  std::mt19937_64 rng(2);
  const double h = 1e-3;
  for (int k = 0; k < 8; ++k) {
    const VectorFieldPTM x = s.ptm_field(d, k % 2 ? Parity::Odd : Parity::Even);
    const VectorFieldPTM y = s.ptm_field(d, (k / 2) % 2 ? Parity::Odd : Parity::Even);
    const double sy = y.parity() == Parity::Odd ? -1.0 : 1.0;
    Assignment at = oracle::random_point({"t", "phi"}, rng, -2, 2);
    for (std::size_t a = 0; a < 2; ++a) at[d.xdot(a)] = 0.0;
    auto num = [&](const GradedExpr& f) { return oracle::numeric(d.to_tptm(f), at); };
    auto g_shifted = [&](std::size_t a, double u, std::size_t b, double v) {
      Assignment q = at;
      q[d.xdot(a)] += u;
      q[d.xdot(b)] += v;
      return oracle::numeric(g.value(), q);
    };
    oracle::Grass acc;
    for (std::size_t a = 0; a < 2; ++a) {
      const oracle::Grass da = (g_shifted(a, h, a, 0) - g_shifted(a, -h, a, 0)).scaled(1 / (2 * h));
      for (std::size_t b = 0; b < 2; ++b) {
        const oracle::Grass db = (g_shifted(b, h, b, 0) - g_shifted(b, -h, b, 0)).scaled(1 / (2 * h));
        const oracle::Grass dab = (g_shifted(a, h, b, h) - g_shifted(a, h, b, -h) -
                                   g_shifted(a, -h, b, h) + g_shifted(a, -h, b, -h))
                                      .scaled(1 / (4 * h * h));
        const int ka = idx(d.dxdot(a));
        const int kb = idx(d.dxdot(b));
        const oracle::Grass gv = oracle::numeric(g.value(), at);
        acc = acc + num(x.base()[a]) * (num(y.base()[b]) * dab);
        acc = acc + num(x.base()[a]) * (num(y.bar()[b]) * da.left_derivative(kb));
        acc = acc + (num(x.bar()[a]) * (num(y.base()[b]) * db.left_derivative(ka))).scaled(sy);
        acc = acc + (num(x.bar()[a]) * (num(y.bar()[b]) *
                                        gv.left_derivative(kb).left_derivative(ka)))
                        .scaled(-sy);
      }
    }
    const oracle::Grass got = num(pairing_via_lift(d, x, y, g));
    CHECK(oracle::distance(acc.scaled(0.5), got) < 1e-5);
  }
}

TEST_CASE("classical Sasaki metric") {
  const Geometry e = euclidean(2);
  const SuperDomain d(e.chart);
  CHECK(classical_sasaki(d, e.g, e.gamma).str() == "deltaxdot^2 + deltaydot^2 + xdot^2 + ydot^2");
  const Geometry m = misner();
  const SuperDomain dm(m.chart);
  // D tdot = deltatdot + deltat xdot^c Gamma^t_c t + ... assembled independently
  const TablePtr c = dm.classical();
  auto P = [&](const char* s) { return parse_graded(s, c); };
  const GradedExpr dt = P("deltatdot + 1/2*deltat*phidot + 1/2*deltaphi*tdot + 1/2*t*deltaphi*phidot");
  const GradedExpr dp = P("deltaphidot - 1/2*deltaphi*phidot");
  const GradedExpr expected = P("2*tdot*phidot + t*phidot^2") + GradedExpr(c, 2) * dt * dp +
                              P("t") * dp * dp;
  CHECK(classical_sasaki(dm, m.g, m.gamma) == expected);
}

TEST_CASE("non-degeneracy and the inhomogeneity witness") {
  for (const Geometry& geom : {euclidean(2), misner(), warped(), euclidean(4)}) {
    const SuperDomain d(geom.chart);
    const NondegeneracyBlocks b = nondegeneracy(d, super_sasaki(d, geom), geom.chart.options());
    CHECK(b.even_nonzero);
    CHECK(b.odd_nonzero);
  }
  const Geometry e = euclidean(2);
  const SuperDomain d(e.chart);
  const GradedExpr p = pairing_via_lift(d, lie_derivative(d, {parse_expr("x*y"), parse_expr("x")}).field,
                                        lie_derivative(d, {parse_expr("y^2"), parse_expr("x^2")}).field,
                                        super_sasaki(d, e));
  CHECK(p.form_degrees() == std::set<std::size_t>{0, 2});
}

TEST_CASE("convention ledger") {
  const auto ledger = convention_ledger();
  bool has_dictionary = false;
  for (const auto& c : ledger) has_dictionary = has_dictionary || c.key == "omega dictionary";
  CHECK(has_dictionary);
}
