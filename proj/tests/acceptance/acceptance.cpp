// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <supersasaki/cartan.hpp>
#include <supersasaki/random_fields.hpp>
#include <supersasaki/transform.hpp>

#include "cli.hpp"
#include "specs.hpp"
#include "suites.hpp"
#include "support/oracles.hpp"

using namespace supersasaki;
using namespace supersasaki::cli;

namespace {

const std::string kData = SUPERSASAKI_DATA_DIR;

struct Verdict {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

struct Invocation {
  int code;
  std::string out;
};
Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str() + err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

Geometry load(const std::string& name) { return load_geometry(kData + "/" + name + ".json").geometry; }

bool exact_zero(const std::vector<CheckResult>& rs, const std::string& needle = "") {
  for (const auto& r : rs) {
    if (!needle.empty() && r.name.find(needle) == std::string::npos) continue;
    if (!r.passed) return false;
  }
  return true;
}

std::string failures(const std::vector<CheckResult>& rs) {
  std::string s;
  for (const auto& r : rs) {
    if (!r.passed) s += (s.empty() ? "" : ", ") + r.name + " [" + r.residual + "]";
  }
  return s;
}

// ---- criteria ----

Verdict ac1() {
  Verdict v;
  const auto t0 = Clock::now();
  const Invocation e2 = invoke({"sasaki", kData + "/euclidean2.json"});
  v.require(e2.code == 0, "exit code");
  v.require(has_line(e2.out, "xdot^2 + ydot^2 + 2*dxdot*dydot"), "euclidean2 output line");
  for (int p : {2, 3}) {
    const GeometrySpec spec = load_geometry(kData + "/euclidean2p" + std::to_string(p) + ".json");
    const SuperDomain d(spec.geometry.chart);
    // sum (xdot^i)^2 + 2 sum dxdot^j dydot^j, assembled from the coordinate names
    std::string expected;
    for (const auto& c : spec.geometry.chart.coords()) expected += c + "dot^2 + ";
    for (int j = 1; j <= p; ++j) {
      expected += "2*dx" + std::to_string(j) + "dot*dy" + std::to_string(j) + "dot";
      if (j < p) expected += " + ";
    }
    const GradedExpr residual = super_sasaki(d, spec.geometry).value() -
                                parse_graded(expected, d.tptm());
    v.require(residual.is_zero(), "R^" + std::to_string(2 * p) + " residual " + residual.str());
    const Invocation cli = invoke({"sasaki", spec.path.string()});
    v.require(has_line(cli.out, parse_graded(expected, d.tptm()).str()),
              "R^" + std::to_string(2 * p) + " printed form");
  }
  const double s = since(t0);
  v.require(s < 1.0, "time " + seconds(s));
  v.note = v.pass ? "euclidean2 and R^4, R^6 exact, " + seconds(s) : v.note;
  return v;
}

Verdict ac2() {
  Verdict v;
  const GeometrySpec spec = load_geometry(kData + "/misner.json");
  const Geometry& m = spec.geometry;
  v.require(m.gamma(0, 0, 1).str() == "1/2" && m.gamma(0, 1, 0).str() == "1/2",
            "Gamma^t_{t phi} = Gamma^t_{phi t} = 1/2");
  for (const auto& block : metric_compatibility_residual(m.chart, m.g, m.gamma)) {
    for (const auto& row : block) {
      for (const auto& e : row) v.require(e.is_zero(), "compatibility residual " + e.str());
    }
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(-2, 2), up(0, 6.28), uv(-2, 2);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Assignment at{{"t", ut(rng)}, {"phi", up(rng)}};
    worst = std::max(worst, oracle::geodesic_residual(m.chart, m.g.components(), m.gamma, at,
                                                      {uv(rng), uv(rng)}));
  }
  v.require(worst < 1e-6, "geodesic residual " + std::to_string(worst));
  const Invocation cli = invoke({"christoffel", spec.path.string()});
  v.require(cli.out.find("beyond the reference set") != std::string::npos, "delta listed");
  if (v.pass) {
    std::ostringstream os;
    os << "1/2 reproduced, nabla g = 0, geodesic residual " << worst
       << "; delta: Gamma^t_{phi,phi} = " << m.gamma(0, 1, 1).str()
       << ", Gamma^phi_{phi,phi} = " << m.gamma(1, 1, 1).str();
    v.note = os.str();
  }
  return v;
}

Verdict ac3() {
  Verdict v;
  const auto t0 = Clock::now();
  int canonical = 0;
  int total = 0;
  for (const char* name : {"euclidean2", "misner", "warped"}) {
    const Geometry geom = load(name);
    const SuperDomain d(geom.chart);
    const MetricFunction g = super_sasaki(d, geom);
    FieldSampler s(3);
    for (int k = 0; k < 20; ++k) {
      const auto rs = verify_proposition(d, geom, g, s.base_field(geom.chart),
                                         s.base_field(geom.chart), geom.chart.options());
      v.require(rs.size() == 6 && exact_zero(rs), std::string(name) + ": " + failures(rs));
      for (const auto& r : rs) {
        ++total;
        canonical += r.detail == "canonical";
      }
    }
  }
  const double s = since(t0);
  v.require(s < 60.0, "time " + seconds(s));
  if (v.pass) {
    v.note = "3 geometries x 20 fields x 6 identities, " + std::to_string(canonical) + "/" +
             std::to_string(total) + " canonical zero, " + seconds(s);
  }
  return v;
}

Verdict ac4() {
  Verdict v;
  int pairs = 0;
  for (const char* name : {"euclidean2", "misner", "warped", "polar", "euclidean2p2"}) {
    const Geometry geom = load(name);
    const SuperDomain d(geom.chart);
    const MetricFunction g = super_sasaki(d, geom);
    FieldSampler s(4);
    for (Parity px : {Parity::Even, Parity::Odd}) {
      for (int k = 0; k < 50; ++k) {
        const VectorFieldPTM x = s.ptm_field(d, px);
        const VectorFieldPTM y = s.ptm_field(d, k % 2 ? Parity::Odd : Parity::Even);
        const GradedExpr residual =
            pairing_closed_form(d, x, y, geom) - pairing_via_lift(d, x, y, g);
        v.require(residual.is_zero(), std::string(name) + " residual " + residual.str());
        ++pairs;
      }
    }
  }
  if (v.pass) v.note = std::to_string(pairs) + " field pairs, all residuals exactly zero";
  return v;
}

Verdict ac5() {
  Verdict v;
  int geometries = 0;
  for (const char* name :
       {"euclidean2", "euclidean2p2", "euclidean2p3", "misner", "polar", "warped"}) {
    const Geometry geom = load(name);
    SuiteOptions so;
    so.trials = std::string(name) == "euclidean2p3" ? 3 : 10;
    so.seed = 5;
    const auto rs = axioms_suite(geom, so);
    v.require(exact_zero(rs), std::string(name) + ": " + failures(rs));
    ++geometries;
  }
  if (v.pass) {
    v.note = "parity, graded symmetry, linearity, non-degeneracy on " +
             std::to_string(geometries) + " shipped geometries";
  }
  return v;
}

Verdict ac6() {
  Verdict v;
  const MapSpec ms = load_map(kData + "/maps/polar_to_cartesian.json");
  const Geometry pol = load_geometry(ms.source_path).geometry;
  const Geometry car = load_geometry(ms.target_path).geometry;
  const SmoothMap psi = build_map(ms, pol.chart, car.chart);
  const SuperDomain d(car.chart);
  const auto field = [&](const std::string& file) {
    return build_ptm_field(load_field(kData + "/fields/" + file), d);
  };
  const VectorFieldM rot = build_base_field(load_field(kData + "/fields/rotation_generator.json"),
                                            car.chart);
  const std::vector<VectorFieldPTM> fixed = {de_rham(d).field, interior(d, rot).field,
                                             lie_derivative(d, rot).field,
                                             field("odd_sample.json")};
  EqualityOptions eq;
  eq.tol = 1e-9;
  int n = 0;
  for (const auto& x : fixed) {
    for (const auto& y : fixed) {
      const CheckResult r = invariance_check(psi, pol, car, x, y, eq);
      v.require(r.passed, r.residual);
      ++n;
    }
  }
  if (v.pass) v.note = std::to_string(n) + " fixed pairs invariant under polar -> Cartesian";
  return v;
}

Verdict ac7() {
  Verdict v;
  const std::string e2 = kData + "/euclidean2.json";
  const Invocation rot =
      invoke({"check", e2, "--suite", "naturality", "--map", kData + "/maps/rotation.json"});
  v.require(rot.code == 0 && has_line(rot.out, "Psi^* g_N - g_M = 0"), "rotation");
  const Invocation tr = invoke({"check", kData + "/misner.json", "--suite", "naturality", "--map",
                                kData + "/maps/misner_translation.json"});
  v.require(tr.code == 0 && has_line(tr.out, "Psi^* g_N - g_M = 0"), "phi-translation");
  const Invocation sc =
      invoke({"check", e2, "--suite", "naturality", "--map", kData + "/maps/scaling.json"});
  v.require(sc.code == 1, "scaling exit code " + std::to_string(sc.code));
  v.require(!has_line(sc.out, "Psi^* g_N - g_M = 0"), "scaling residual is nonzero");
  if (v.pass) v.note = "rotation and phi-translation residual 0; scaling nonzero, exit 1";
  return v;
}

Verdict ac8() {
  Verdict v;
  std::mt19937_64 rng(8);
  int n = 0;
  for (const char* name :
       {"euclidean2", "euclidean2p2", "euclidean2p3", "misner", "polar", "warped"}) {
    const Geometry geom = load(name);
    const SuperDomain d(geom.chart);
    const MetricFunction g = super_sasaki(d, geom);
    FieldSampler s(8);
    for (int k = 0; k < 5; ++k) {
      const VectorFieldM x = s.base_field(geom.chart);
      const VectorFieldM y = s.base_field(geom.chart);
      const ScalarExpr ll =
          epsilon(pairing_via_lift(d, lie_derivative(d, x).field, lie_derivative(d, y).field, g));
      const GradedExpr ii = pairing_via_lift(d, interior(d, x).field, interior(d, y).field, g);
      v.require(ii.form_degrees().size() <= 1 && !ii.form_degrees().count(1) &&
                    !ii.form_degrees().count(2),
                std::string(name) + ": <i_X|i_Y> is not a function");
      // oracle: h(X,Y) and omega(X,Y) from numeric component matrices
      for (int p = 0; p < 5; ++p) {
        Assignment at;
        for (const auto& c : geom.chart.coords()) {
          const Interval iv = geom.chart.domain().at(c);
          at[c] = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
        }
        const oracle::Mat gm = oracle::eval(geom.g.components(), at);
        const oracle::Mat cm = oracle::eval(geom.omega.classical(), at);
        double h = 0.0;
        double w = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
          for (std::size_t b = 0; b < y.size(); ++b) {
            const double xa = eval_numeric(x[a], at);
            const double yb = eval_numeric(y[b], at);
            h += xa * yb * gm[a][b];
            w -= xa * yb * cm[a][b];
          }
        }
        const double scale = 1.0 + std::abs(h) + std::abs(w);
        v.require(std::abs(eval_numeric(ll, at) - h) < 1e-9 * scale, std::string(name) + ": eps");
        v.require(std::abs(eval_numeric(epsilon(ii), at) - w) < 1e-9 * scale,
                  std::string(name) + ": omega");
        ++n;
      }
    }
  }
  if (v.pass) v.note = std::to_string(n) + " point checks on 6 geometries";
  return v;
}

Verdict ac9() {
  Verdict v;
  const auto t0 = Clock::now();
  int n = 0;
  for (const char* name : {"euclidean2", "misner", "warped", "polar", "euclidean2p2"}) {
    const Geometry geom = load(name);
    const SuperDomain d(geom.chart);
    FieldSampler s(9);
    for (int k = 0; k < 10; ++k) {
      const auto rs = cartan_relations(d, s.base_field(geom.chart), s.base_field(geom.chart),
                                       geom.chart.options());
      v.require(rs.size() == 5 && exact_zero(rs), std::string(name) + ": " + failures(rs));
      for (const auto& r : rs) v.require(r.residual == "0", "residual not canonical");
      n += 5;
    }
  }
  const double s = since(t0);
  v.require(s < 10.0, "time " + seconds(s));
  if (v.pass) v.note = std::to_string(n) + " relations, all exactly zero, " + seconds(s);
  return v;
}

Verdict ac10() {
  Verdict v;
  const Geometry e = load("euclidean2");
  const SuperDomain d(e.chart);
  const GradedExpr gs = classical_sasaki(d, e.g, e.gamma);
  const GradedExpr expected =
      parse_graded("xdot^2 + ydot^2 + deltaxdot^2 + deltaydot^2", d.classical());
  v.require((gs - expected).is_zero(), "residual " + (gs - expected).str());
  const Invocation cli = invoke({"classical-sasaki", kData + "/euclidean2.json"});
  v.require(has_line(cli.out, expected.str()), "CLI output");
  if (v.pass) v.note = gs.str();
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 Cartesian golden metric", ac1},   {"AC2 Lorentzian cylinder pipeline", ac2},
      {"AC3 proposition suite", ac3},         {"AC4 closed form = lift", ac4},
      {"AC5 metric axioms", ac5},             {"AC6 coordinate invariance", ac6},
      {"AC7 naturality", ac7},                {"AC8 epsilon observations", ac8},
      {"AC9 Cartan algebra", ac9},            {"AC10 classical Sasaki", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.note << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
