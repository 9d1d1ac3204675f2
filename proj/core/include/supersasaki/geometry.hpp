#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "supersasaki/symexpr.hpp"

namespace supersasaki {

/// Invalid geometric input: shape mismatch, broken symmetry, degeneracy.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ExprVector = std::vector<ScalarExpr>;
using ExprMatrix = std::vector<ExprVector>;
using VectorFieldM = ExprVector;  // X^a(x)
using OneForm = ExprVector;       // alpha_a(x)

/// Coordinate chart on the even base. The sampling intervals feed the
/// numeric equality oracle and keep it away from chart singularities.
class Chart {
 public:
  explicit Chart(std::vector<std::string> coords,
                 std::map<std::string, Interval> domain = {});

  std::size_t dim() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::string& coord(std::size_t i) const { return coords_[i]; }
  std::size_t index_of(const std::string& name) const;
  std::set<std::string> vocabulary() const;
  const std::map<std::string, Interval>& domain() const { return domain_; }

  /// `base` with this chart's sampling intervals merged in.
  EqualityOptions options(const EqualityOptions& base = {}) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> coords_;
  std::map<std::string, Interval> domain_;
};

ExprMatrix zero_matrix(std::size_t rows, std::size_t cols);
ExprMatrix identity_matrix(std::size_t n);
ExprMatrix transpose(const ExprMatrix& m);
ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator-(const ExprMatrix& a);
ExprMatrix simplify(const ExprMatrix& m);

/// Gauss-Jordan over the canonical rational-function field.
ExprMatrix inverse(const ExprMatrix& m);
ScalarExpr determinant(const ExprMatrix& m);

bool matrix_equal(const ExprMatrix& a, const ExprMatrix& b, const EqualityOptions& options);

/// False if `e` is canonically zero or vanishes (|e| < 1e-12) at a sample.
bool nonzero_at_samples(const ScalarExpr& e, const EqualityOptions& options);

class MetricTensor {
 public:
  /// Validates shape, symmetry and non-degeneracy on the chart.
  MetricTensor(const Chart& chart, ExprMatrix components);

  std::size_t dim() const { return g_.size(); }
  const ExprMatrix& components() const { return g_; }
  const ScalarExpr& operator()(std::size_t a, std::size_t b) const { return g_[a][b]; }

 private:
  ExprMatrix g_;
};

/// Component matrix omega_ab of a non-degenerate two-form.
///
/// A classical two-form sum_{a<b} c_ab dx^a ^ dx^b has omega_ab = -c_ab in
/// this representation, so that G = xi^a xi^b omega_ba gives +2 dxdot dydot
/// for dx ^ dy on the Cartesian plane.
class AlmostSymplectic {
 public:
  AlmostSymplectic(const Chart& chart, ExprMatrix components);
  /// From the antisymmetric matrix of classical coefficients c_ab.
  static AlmostSymplectic from_classical(const Chart& chart, const ExprMatrix& c);

  std::size_t dim() const { return w_.size(); }
  const ExprMatrix& components() const { return w_; }
  const ScalarExpr& operator()(std::size_t a, std::size_t b) const { return w_[a][b]; }
  /// The classical coefficients c_ab = -omega_ab.
  ExprMatrix classical() const;

 private:
  ExprMatrix w_;
};

/// Gamma^a_bc stored as gamma[a][b][c].
class Christoffel {
 public:
  explicit Christoffel(std::size_t n);
  explicit Christoffel(std::vector<ExprMatrix> gamma);

  std::size_t dim() const { return gamma_.size(); }
  const ScalarExpr& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return gamma_[a][b][c];
  }
  const std::vector<ExprMatrix>& components() const { return gamma_; }
  bool is_zero() const;

 private:
  std::vector<ExprMatrix> gamma_;
};

struct Geometry {
  std::string name;
  Chart chart;
  MetricTensor g;
  AlmostSymplectic omega;
  Christoffel gamma;
};

/// Levi-Civita connection of g, computed from the chart.
Geometry make_geometry(std::string name, Chart chart, MetricTensor g, AlmostSymplectic omega);

ExprMatrix inverse_metric(const MetricTensor& g);
Christoffel christoffel(const Chart& chart, const MetricTensor& g);

/// (nabla X)^a_c = d_c X^a + X^d Gamma^a_dc, indexed [a][c].
ExprMatrix covariant_derivative(const Chart& chart, const VectorFieldM& x,
                                const Christoffel& gamma);

/// alpha_b = g_ba X^a.
OneForm flat(const VectorFieldM& x, const MetricTensor& g);

/// X^a Y^b B_ab.
ScalarExpr bilinear_eval(const ExprMatrix& b, const VectorFieldM& x, const VectorFieldM& y);

struct AcsResult {
  ExprMatrix j;
  bool squares_to_minus_identity;
};
/// J_a^b = omega_ac g^cb.
AcsResult acs_J(const MetricTensor& g, const AlmostSymplectic& omega,
                const EqualityOptions& options);

/// [X,Y]^a = X^b d_b Y^a - Y^b d_b X^a.
VectorFieldM lie_bracket(const Chart& chart, const VectorFieldM& x, const VectorFieldM& y);

/// d_c g_ab - Gamma^d_ca g_db - Gamma^d_cb g_ad, indexed [c][a][b].
std::vector<ExprMatrix> metric_compatibility_residual(const Chart& chart, const MetricTensor& g,
                                                      const Christoffel& gamma);

}  // namespace supersasaki
