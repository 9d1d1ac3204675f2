#include "supersasaki/geometry.hpp"

#include <cmath>
#include <random>
#include <regex>
#include <utility>

namespace supersasaki {

namespace {

const std::regex& identifier() {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
  return re;
}

bool is_function_name(const std::string& s) {
  return s == "sin" || s == "cos" || s == "exp" || s == "sqrt" || s == "ln";
}

void require_square(const ExprMatrix& m, std::size_t n, const char* what) {
  if (m.size() != n) {
    throw GeometryError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  }
  for (const auto& row : m) {
    if (row.size() != n) {
      throw GeometryError(std::string(what) + ": expected " + std::to_string(n) +
                          " columns");
    }
  }
}

std::string entry(const char* what, std::size_t a, std::size_t b) {
  return std::string(what) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
}

}  // namespace

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::vector<std::string> coords, std::map<std::string, Interval> domain)
    : coords_(std::move(coords)), domain_(std::move(domain)) {
  if (coords_.empty()) throw GeometryError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!std::regex_match(c, identifier()) || is_function_name(c)) {
      throw GeometryError("invalid coordinate name '" + c + "'");
    }
    if (!seen.insert(c).second) throw GeometryError("duplicate coordinate '" + c + "'");
  }
  // Derived generator names (dx, xdot, dxdot, xi_x, deltax, ...) must not
  // shadow another coordinate.
  for (const auto& c : coords_) {
    for (const auto& derived : {"d" + c, c + "dot", "d" + c + "dot", "xi_" + c,
                                "delta" + c, "delta" + c + "dot"}) {
      if (seen.count(derived)) {
        throw GeometryError("coordinate '" + derived + "' collides with a name derived from '" +
                            c + "'");
      }
    }
  }
  for (const auto& [name, iv] : domain_) {
    if (!seen.count(name)) throw GeometryError("domain for unknown coordinate '" + name + "'");
    if (!(iv.lo < iv.hi)) throw GeometryError("empty sampling interval for '" + name + "'");
  }
}

std::size_t Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == name) return i;
  }
  throw GeometryError("unknown coordinate '" + name + "'");
}

std::set<std::string> Chart::vocabulary() const {
  return {coords_.begin(), coords_.end()};
}

EqualityOptions Chart::options(const EqualityOptions& base) const {
  EqualityOptions out = base;
  for (const auto& [name, iv] : domain_) out.domain.emplace(name, iv);
  return out;
}

// ---------------------------------------------------------------------------
// Matrices

ExprMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return ExprMatrix(rows, ExprVector(cols, ScalarExpr(0)));
}

ExprMatrix identity_matrix(std::size_t n) {
  ExprMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = ScalarExpr(1);
  return m;
}

ExprMatrix transpose(const ExprMatrix& m) {
  if (m.empty()) return m;
  ExprMatrix t = zero_matrix(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  ExprMatrix out = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw GeometryError("matrix shape mismatch");
    for (std::size_t j = 0; j < cols; ++j) {
      ScalarExpr s;
      for (std::size_t k = 0; k < inner; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  }
  return out;
}

ExprMatrix operator-(const ExprMatrix& a) {
  ExprMatrix out = a;
  for (auto& row : out) {
    for (auto& e : row) e = -e;
  }
  return out;
}

ExprMatrix simplify(const ExprMatrix& m) {
  ExprMatrix out = m;
  for (auto& row : out) {
    for (auto& e : row) e = simplify(e);
  }
  return out;
}

ExprMatrix inverse(const ExprMatrix& m) {
  const std::size_t n = m.size();
  require_square(m, n, "inverse");
  ExprMatrix a = simplify(m);
  ExprMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw SymbolicError("matrix is singular (canonically zero determinant)");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const ScalarExpr p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / p;
      inv[col][j] = inv[col][j] / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const ScalarExpr f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

ScalarExpr determinant(const ExprMatrix& m) {
  const std::size_t n = m.size();
  require_square(m, n, "determinant");
  ExprMatrix a = simplify(m);
  ScalarExpr det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return ScalarExpr(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const ScalarExpr f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

bool matrix_equal(const ExprMatrix& a, const ExprMatrix& b, const EqualityOptions& options) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (!expr_equal(a[i][j], b[i][j], options)) return false;
    }
  }
  return true;
}

bool nonzero_at_samples(const ScalarExpr& e, const EqualityOptions& options) {
  if (e.is_zero()) return false;
  if (e.is_constant()) return true;
  std::mt19937_64 rng(options.seed);
  const auto vars = e.free_variables();
  std::size_t valid = 0;
  for (std::size_t attempt = 0;
       valid < options.samples && attempt < options.samples * 20 + 100; ++attempt) {
    double v = 0.0;
    try {
      v = eval_numeric(e, draw_sample(vars, options, rng));
    } catch (const EvaluationError&) {
      continue;
    }
    if (std::abs(v) < 1e-12) return false;
    ++valid;
  }
  return valid > 0;
}

// ---------------------------------------------------------------------------
// Tensors

MetricTensor::MetricTensor(const Chart& chart, ExprMatrix components)
    : g_(simplify(components)) {
  const std::size_t n = chart.dim();
  require_square(g_, n, "metric");
  const EqualityOptions opts = chart.options();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!expr_equal(g_[a][b], g_[b][a], opts)) {
        throw GeometryError("metric is not symmetric at " + entry("g", a, b));
      }
    }
  }
  if (!nonzero_at_samples(determinant(g_), opts)) {
    throw GeometryError("metric is degenerate on the chart domain");
  }
}

AlmostSymplectic::AlmostSymplectic(const Chart& chart, ExprMatrix components)
    : w_(simplify(components)) {
  const std::size_t n = chart.dim();
  require_square(w_, n, "omega");
  if (n % 2 != 0) throw GeometryError("almost symplectic form needs an even dimension");
  const EqualityOptions opts = chart.options();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      if (!expr_equal(w_[a][b], -w_[b][a], opts)) {
        throw GeometryError("omega is not antisymmetric at " + entry("omega", a, b));
      }
    }
  }
  if (!nonzero_at_samples(determinant(w_), opts)) {
    throw GeometryError("omega is degenerate on the chart domain");
  }
}

AlmostSymplectic AlmostSymplectic::from_classical(const Chart& chart, const ExprMatrix& c) {
  return AlmostSymplectic(chart, -c);
}

ExprMatrix AlmostSymplectic::classical() const { return -w_; }

Christoffel::Christoffel(std::size_t n) : gamma_(n, zero_matrix(n, n)) {}

Christoffel::Christoffel(std::vector<ExprMatrix> gamma) : gamma_(std::move(gamma)) {
  const std::size_t n = gamma_.size();
  for (auto& m : gamma_) {
    require_square(m, n, "christoffel");
    m = simplify(m);
  }
}

bool Christoffel::is_zero() const {
  for (const auto& m : gamma_) {
    for (const auto& row : m) {
      for (const auto& e : row) {
        if (!e.is_zero()) return false;
      }
    }
  }
  return true;
}

Geometry make_geometry(std::string name, Chart chart, MetricTensor g, AlmostSymplectic omega) {
  if (g.dim() != chart.dim() || omega.dim() != chart.dim()) {
    throw GeometryError("tensor dimension does not match the chart");
  }
  Christoffel gamma = christoffel(chart, g);
  return Geometry{std::move(name), std::move(chart), std::move(g), std::move(omega),
                  std::move(gamma)};
}

ExprMatrix inverse_metric(const MetricTensor& g) { return inverse(g.components()); }

Christoffel christoffel(const Chart& chart, const MetricTensor& g) {
  const std::size_t n = chart.dim();
  const ExprMatrix ginv = inverse_metric(g);
  // dg[c][a][b] = d_c g_ab
  std::vector<ExprMatrix> dg(n, zero_matrix(n, n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) dg[c][a][b] = differentiate(g(a, b), chart.coord(c));
    }
  }
  std::vector<ExprMatrix> gamma(n, zero_matrix(n, n));
  const ScalarExpr half = ScalarExpr(Rational(1, 2));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = b; c < n; ++c) {
        ScalarExpr s;
        for (std::size_t d = 0; d < n; ++d) {
          if (ginv[a][d].is_zero()) continue;
          s += ginv[a][d] * (dg[b][d][c] + dg[c][b][d] - dg[d][b][c]);
        }
        gamma[a][b][c] = half * s;
        gamma[a][c][b] = gamma[a][b][c];
      }
    }
  }
  return Christoffel(std::move(gamma));
}

ExprMatrix covariant_derivative(const Chart& chart, const VectorFieldM& x,
                                const Christoffel& gamma) {
  const std::size_t n = chart.dim();
  if (x.size() != n) throw GeometryError("vector field dimension mismatch");
  ExprMatrix out = zero_matrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      ScalarExpr s = differentiate(x[a], chart.coord(c));
      for (std::size_t d = 0; d < n; ++d) s += x[d] * gamma(a, d, c);
      out[a][c] = s;
    }
  }
  return out;
}

OneForm flat(const VectorFieldM& x, const MetricTensor& g) {
  const std::size_t n = g.dim();
  if (x.size() != n) throw GeometryError("vector field dimension mismatch");
  OneForm out(n);
  for (std::size_t b = 0; b < n; ++b) {
    ScalarExpr s;
    for (std::size_t a = 0; a < n; ++a) s += g(b, a) * x[a];
    out[b] = s;
  }
  return out;
}

ScalarExpr bilinear_eval(const ExprMatrix& b, const VectorFieldM& x, const VectorFieldM& y) {
  const std::size_t n = b.size();
  if (x.size() != n || y.size() != n) throw GeometryError("vector field dimension mismatch");
  ScalarExpr s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s += x[i] * y[j] * b[i][j];
  }
  return s;
}

AcsResult acs_J(const MetricTensor& g, const AlmostSymplectic& omega,
                const EqualityOptions& options) {
  ExprMatrix j = omega.components() * inverse_metric(g);
  const bool ok = matrix_equal(j * j, -identity_matrix(g.dim()), options);
  return AcsResult{std::move(j), ok};
}

VectorFieldM lie_bracket(const Chart& chart, const VectorFieldM& x, const VectorFieldM& y) {
  const std::size_t n = chart.dim();
  if (x.size() != n || y.size() != n) throw GeometryError("vector field dimension mismatch");
  VectorFieldM out(n);
  for (std::size_t a = 0; a < n; ++a) {
    ScalarExpr s;
    for (std::size_t b = 0; b < n; ++b) {
      s += x[b] * differentiate(y[a], chart.coord(b)) -
           y[b] * differentiate(x[a], chart.coord(b));
    }
    out[a] = s;
  }
  return out;
}

std::vector<ExprMatrix> metric_compatibility_residual(const Chart& chart, const MetricTensor& g,
                                                      const Christoffel& gamma) {
  const std::size_t n = chart.dim();
  std::vector<ExprMatrix> out(n, zero_matrix(n, n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        ScalarExpr s = differentiate(g(a, b), chart.coord(c));
        for (std::size_t d = 0; d < n; ++d) {
          s -= gamma(d, c, a) * g(d, b) + gamma(d, c, b) * g(a, d);
        }
        out[c][a][b] = s;
      }
    }
  }
  return out;
}

}  // namespace supersasaki
