#pragma once

// Test geometries built directly in code, independent of the JSON loader.

#include <string>
#include <vector>

#include <supersasaki/geometry.hpp>

namespace testgeom {

using namespace supersasaki;

inline ExprMatrix matrix(const std::vector<std::vector<std::string>>& rows) {
  ExprMatrix m;
  for (const auto& r : rows) {
    ExprVector v;
    for (const auto& e : r) v.push_back(simplify(parse_expr(e)));
    m.push_back(v);
  }
  return m;
}

/// R^n, n even, coordinates x1, y1, x2, y2, ... (x, y when n = 2) and
/// classical two-form sum_i dx_i ^ dy_i.
inline Geometry euclidean(std::size_t n) {
  std::vector<std::string> coords;
  std::map<std::string, Interval> domain;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::string s = n == 2 ? "" : std::to_string(i + 1);
    coords.push_back("x" + s);
    coords.push_back("y" + s);
  }
  for (const auto& c : coords) domain[c] = {-2, 2};
  Chart chart(coords, domain);
  ExprMatrix c = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; i += 2) {
    c[i][i + 1] = 1;
    c[i + 1][i] = -1;
  }
  return make_geometry("euclidean" + std::to_string(n), chart,
                       MetricTensor(chart, identity_matrix(n)),
                       AlmostSymplectic::from_classical(chart, c));
}

inline Geometry misner() {
  Chart chart({"t", "phi"}, {{"t", {-2, 2}}, {"phi", {0, 6.28}}});
  return make_geometry("misner", chart, MetricTensor(chart, matrix({{"0", "1"}, {"1", "t"}})),
                       AlmostSymplectic::from_classical(chart, matrix({{"0", "1"}, {"-1", "0"}})));
}

inline Geometry warped() {
  Chart chart({"x", "y"}, {{"x", {-1, 1}}, {"y", {-1, 1}}});
  return make_geometry(
      "warped", chart, MetricTensor(chart, matrix({{"1 + x^2", "x*y"}, {"x*y", "1 + y^2"}})),
      AlmostSymplectic::from_classical(chart, matrix({{"0", "1 + x^2"}, {"-1 - x^2", "0"}})));
}

inline Geometry polar() {
  Chart chart({"r", "theta"}, {{"r", {0.5, 2}}, {"theta", {0, 6.28}}});
  return make_geometry("polar", chart, MetricTensor(chart, matrix({{"1", "0"}, {"0", "r^2"}})),
                       AlmostSymplectic::from_classical(chart, matrix({{"0", "r"}, {"-r", "0"}})));
}

}  // namespace testgeom
