#include <doctest.h>

#include <random>

#include <supersasaki/geometry.hpp>
#include <supersasaki/random_fields.hpp>

#include "support/oracles.hpp"

using namespace supersasaki;

namespace {

ExprMatrix M(const std::vector<std::vector<std::string>>& rows) {
  ExprMatrix m;
  for (const auto& r : rows) {
    ExprVector v;
    for (const auto& e : r) v.push_back(simplify(parse_expr(e)));
    m.push_back(v);
  }
  return m;
}

VectorFieldM V(const std::vector<std::string>& comps) {
  VectorFieldM v;
  for (const auto& c : comps) v.push_back(simplify(parse_expr(c)));
  return v;
}

const Chart kPlane({"x", "y"}, {{"x", {-2, 2}}, {"y", {-2, 2}}});
const Chart kMisner({"t", "phi"}, {{"t", {-2, 2}}, {"phi", {0, 6.28}}});
const ExprMatrix kStandard = M({{"0", "1"}, {"-1", "0"}});

}  // namespace

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart({}), GeometryError);
  CHECK_THROWS_AS(Chart({"x", "x"}), GeometryError);
  CHECK_THROWS_AS(Chart({"x", "dx"}), GeometryError);
  CHECK_THROWS_AS(Chart({"sin"}), GeometryError);
  CHECK(kMisner.index_of("phi") == 1);
}

TEST_CASE("tensor invariants") {
  CHECK_THROWS_AS(MetricTensor(kPlane, M({{"1", "x"}, {"0", "1"}})), GeometryError);
  CHECK_THROWS_AS(MetricTensor(kPlane, M({{"1", "1"}, {"1", "1"}})), GeometryError);
  CHECK_THROWS_AS(AlmostSymplectic(kPlane, M({{"0", "1"}, {"1", "0"}})), GeometryError);
  CHECK_THROWS_AS(AlmostSymplectic(kPlane, M({{"0", "0"}, {"0", "0"}})), GeometryError);
  const Chart line({"s"});
  CHECK_THROWS_AS(AlmostSymplectic(line, M({{"0"}})), GeometryError);
  // pseudo-Riemannian is fine
  CHECK_NOTHROW(MetricTensor(kMisner, M({{"0", "1"}, {"1", "t"}})));
}

TEST_CASE("inverse metric") {
  CHECK(matrix_equal(inverse_metric(MetricTensor(kPlane, identity_matrix(2))),
                     identity_matrix(2), {}));
  const MetricTensor g(kMisner, M({{"0", "1"}, {"1", "t"}}));
  const ExprMatrix inv = inverse_metric(g);
  CHECK(matrix_equal(inv, M({{"-t", "1"}, {"1", "0"}}), {}));
  // oracle: numeric product is the identity
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    const Assignment at = oracle::random_point({"t", "phi"}, rng, -2, 2);
    const oracle::Mat p = oracle::multiply(oracle::eval(g.components(), at), oracle::eval(inv, at));
    CHECK(p[0][0] == doctest::Approx(1));
    CHECK(p[0][1] == doctest::Approx(0));
    CHECK(p[1][0] == doctest::Approx(0));
    CHECK(p[1][1] == doctest::Approx(1));
  }
  CHECK_THROWS_AS(inverse(M({{"1", "1"}, {"1", "1"}})), SymbolicError);
}

TEST_CASE("Christoffel symbols") {
  const Christoffel flat_gamma = christoffel(kPlane, MetricTensor(kPlane, identity_matrix(2)));
  CHECK(flat_gamma.is_zero());
  CHECK(christoffel(kPlane, MetricTensor(kPlane, M({{"2", "1"}, {"1", "5"}}))).is_zero());

  const MetricTensor g(kMisner, M({{"0", "1"}, {"1", "t"}}));
  const Christoffel gamma = christoffel(kMisner, g);
  CHECK(gamma(0, 0, 1).str() == "1/2");
  CHECK(gamma(0, 1, 0).str() == "1/2");
  CHECK(gamma(0, 1, 1).str() == "1/2*t");
  CHECK(gamma(1, 1, 1).str() == "-1/2");
  CHECK(gamma(0, 0, 0).is_zero());
  CHECK(gamma(1, 0, 0).is_zero());
  CHECK(gamma(1, 0, 1).is_zero());

  for (const auto& m : metric_compatibility_residual(kMisner, g, gamma)) {
    for (const auto& row : m) {
      for (const auto& e : row) CHECK(e.is_zero());
    }
  }
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Assignment at = oracle::random_point({"t", "phi"}, rng, -2, 2);
    const Assignment vel = oracle::random_point({"a", "b"}, rng, -2, 2);
    CHECK(oracle::geodesic_residual(kMisner, g.components(), gamma, at,
                                    {vel.at("a"), vel.at("b")}) < 1e-6);
  }
}

TEST_CASE("Christoffel symbols of a variable metric pass both oracles") {
  const Chart c({"x", "y"}, {{"x", {-1, 1}}, {"y", {-1, 1}}});
  const MetricTensor g(c, M({{"1 + x^2", "x*y"}, {"x*y", "1 + y^2"}}));
  const Christoffel gamma = christoffel(c, g);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t d = 0; d < 2; ++d) CHECK(expr_equal(gamma(a, b, d), gamma(a, d, b)));
    }
  }
  for (const auto& m : metric_compatibility_residual(c, g, gamma)) {
    for (const auto& row : m) {
      for (const auto& e : row) CHECK(expr_is_zero(e));
    }
  }
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const Assignment at = oracle::random_point({"x", "y"}, rng);
    CHECK(oracle::geodesic_residual(c, g.components(), gamma, at, {0.7, -1.3}) < 1e-6);
  }
}

TEST_CASE("covariant derivative") {
  const Christoffel zero(2);
  CHECK(matrix_equal(covariant_derivative(kPlane, V({"x", "y"}), zero), identity_matrix(2), {}));
  CHECK(matrix_equal(covariant_derivative(kPlane, V({"3", "-1"}), zero), zero_matrix(2, 2), {}));
  const MetricTensor g(kMisner, M({{"0", "1"}, {"1", "t"}}));
  const Christoffel gamma = christoffel(kMisner, g);
  const ExprMatrix nx = covariant_derivative(kMisner, V({"1", "0"}), gamma);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(expr_equal(nx[a][c], gamma(a, 0, c)));
  }
}

TEST_CASE("flat and bilinear evaluation") {
  const MetricTensor id(kPlane, identity_matrix(2));
  const OneForm fx = flat(V({"1", "0"}), id);
  CHECK(fx[0].str() == "1");
  CHECK(fx[1].str() == "0");
  const MetricTensor g(kMisner, M({{"0", "1"}, {"1", "t"}}));
  const OneForm ft = flat(V({"1", "0"}), g);
  CHECK(ft[0].is_zero());
  CHECK(ft[1].str() == "1");

  FieldSampler s(2);
  for (int k = 0; k < 10; ++k) {
    const VectorFieldM x = s.base_field(kMisner);
    const VectorFieldM y = s.base_field(kMisner);
    VectorFieldM sum;
    for (std::size_t a = 0; a < 2; ++a) sum.push_back(x[a] + y[a]);
    const OneForm fs = flat(sum, g);
    const OneForm f1 = flat(x, g);
    const OneForm f2 = flat(y, g);
    for (std::size_t a = 0; a < 2; ++a) CHECK(expr_equal(fs[a], f1[a] + f2[a]));
    CHECK(expr_equal(bilinear_eval(g.components(), x, y), bilinear_eval(g.components(), y, x)));
    CHECK(bilinear_eval(kStandard, x, x).is_zero());
  }
  // flat is injective: the metric is non-degenerate at samples
  CHECK(nonzero_at_samples(determinant(g.components()), kMisner.options()));
}

TEST_CASE("two-form dictionary") {
  const AlmostSymplectic w = AlmostSymplectic::from_classical(kPlane, kStandard);
  CHECK(w(0, 1).str() == "-1");
  CHECK(matrix_equal(w.classical(), kStandard, {}));
  CHECK(bilinear_eval(w.components(), V({"1", "0"}), V({"0", "1"})).str() == "-1");
}

TEST_CASE("almost complex structure") {
  const AlmostSymplectic w(kPlane, kStandard);
  const AcsResult flat_j = acs_J(MetricTensor(kPlane, identity_matrix(2)), w, {});
  CHECK(matrix_equal(flat_j.j, kStandard, {}));
  CHECK(flat_j.squares_to_minus_identity);
  const AcsResult squashed = acs_J(MetricTensor(kPlane, M({{"1", "0"}, {"0", "4"}})), w, {});
  CHECK_FALSE(squashed.squares_to_minus_identity);
  // independent 2x2 product: J = w g^-1 = [[0, 1/4], [-1, 0]], J^2 = -1/4 Id
  CHECK(matrix_equal(squashed.j, M({{"0", "1/4"}, {"-1", "0"}}), {}));
}

TEST_CASE("Lie bracket") {
  const VectorFieldM br = lie_bracket(kPlane, V({"1", "0"}), V({"0", "x"}));
  CHECK(br[0].is_zero());
  CHECK(br[1].str() == "1");
}
