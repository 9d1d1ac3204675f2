#pragma once

#include <map>
#include <optional>
#include <string>

#include "supersasaki/report.hpp"
#include "supersasaki/sasakilift.hpp"

namespace supersasaki {

/// psi: source -> target, given by target coordinates y^alpha(x).
class SmoothMap {
 public:
  SmoothMap(Chart source, Chart target, ExprVector components,
            std::optional<ExprVector> inverse = std::nullopt);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const ExprVector& components() const { return y_; }
  const std::optional<ExprVector>& inverse() const { return inverse_; }

  /// J[alpha][a] = d y^alpha / d x^a.
  const ExprMatrix& jacobian() const { return jacobian_; }
  /// f(y) -> f(y(x)).
  ScalarExpr pull(const ScalarExpr& f) const;

  /// Declared inverse composes to the identity on both sides (sampling oracle).
  bool inverse_consistent(const EqualityOptions& options) const;
  /// Square Jacobian whose determinant is nonzero at samples of the source domain.
  bool locally_invertible(const EqualityOptions& options) const;

 private:
  Chart source_;
  Chart target_;
  ExprVector y_;
  std::optional<ExprVector> inverse_;
  ExprMatrix jacobian_;
  std::map<std::string, ScalarExpr> images_;
};

/// psi o chi, with chi: A -> B and psi: B -> C.
SmoothMap compose(const SmoothMap& psi, const SmoothMap& chi);

/// Images of the target generators of T(PTM) over the source T(PTM) table:
///   y -> y(x), dy -> dx^a d_a y, ydot -> xdot^b d_b y,
///   dydot -> dxdot^c d_c y + xdot^b dx^c d_c d_b y, xi_y -> xi_x^a d_a y.
std::map<std::string, GradedExpr> prolong(const SmoothMap& psi, const SuperDomain& source,
                                          const SuperDomain& target);

/// Pullback of a function over the target PTM or T(PTM) table; the result
/// lives over the corresponding source table.
GradedExpr pullback(const SmoothMap& psi, const GradedExpr& f, const SuperDomain& source,
                    const SuperDomain& target);

struct TransformedTensors {
  ExprMatrix g;
  ExprMatrix omega;
  Christoffel gamma;
};
/// Components of target tensors pulled back to the source chart; Gamma gains
/// the inhomogeneous second-derivative term.
TransformedTensors transform_tensors(const SmoothMap& psi, const MetricTensor& g,
                                     const AlmostSymplectic& omega, const Christoffel& gamma);

bool is_isometry(const SmoothMap& psi, const MetricTensor& g_m, const MetricTensor& g_n,
                 const EqualityOptions& options);
bool is_symplectomorphism(const SmoothMap& psi, const AlmostSymplectic& w_m,
                          const AlmostSymplectic& w_n, const EqualityOptions& options);

struct NaturalityReport {
  bool isometry = false;
  bool symplectomorphism = false;
  /// Psi^* g_N - g_M over the source T(PTM) table.
  std::optional<GradedExpr> residual;
  CheckResult check;
};
NaturalityReport check_naturality(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                                  const EqualityOptions& options);

/// The field on PTM(source) that is Psi-related to a field on PTM(target).
VectorFieldPTM related_field(const SmoothMap& psi, const VectorFieldPTM& x,
                             const SuperDomain& source, const SuperDomain& target);

/// Psi^* <X|Y>_N against <X'|Y'>_M for the related fields X', Y'.
CheckResult invariance_check(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                             const VectorFieldPTM& x, const VectorFieldPTM& y,
                             const EqualityOptions& options);

}  // namespace supersasaki
