#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supersasaki/geometry.hpp"
#include "supersasaki/grassmann.hpp"

namespace supersasaki {

/// Generator tables derived from a chart with coordinates x^a:
///   PTM       x^a (even), dx^a (odd)
///   TPTM      x^a, dx^a, xdot^a (even), dxdot^a (odd), xi_x^a (odd)
///   classical x^a, deltax^a, xdot^a, deltaxdot^a (all even)
/// The xi block carries the fibre coordinates of the decomposed bundle.
class SuperDomain {
 public:
  explicit SuperDomain(Chart chart);

  const Chart& chart() const { return chart_; }
  std::size_t dim() const { return chart_.dim(); }
  const TablePtr& ptm() const { return ptm_; }
  const TablePtr& tptm() const { return tptm_; }
  const TablePtr& classical() const { return classical_; }

  std::string x(std::size_t a) const { return chart_.coord(a); }
  std::string dx(std::size_t a) const { return "d" + chart_.coord(a); }
  std::string xdot(std::size_t a) const { return chart_.coord(a) + "dot"; }
  std::string dxdot(std::size_t a) const { return "d" + chart_.coord(a) + "dot"; }
  std::string xi(std::size_t a) const { return "xi_" + chart_.coord(a); }
  std::string delta(std::size_t a) const { return "delta" + chart_.coord(a); }
  std::string deltadot(std::size_t a) const { return "delta" + chart_.coord(a) + "dot"; }

  GradedExpr ptm_gen(const std::string& name) const { return GradedExpr::generator(ptm_, name); }
  GradedExpr tptm_gen(const std::string& name) const {
    return GradedExpr::generator(tptm_, name);
  }
  GradedExpr ptm_scalar(const ScalarExpr& s) const { return GradedExpr(ptm_, s); }
  GradedExpr tptm_scalar(const ScalarExpr& s) const { return GradedExpr(tptm_, s); }

  /// Pullback along T(PTM) -> PTM.
  GradedExpr to_tptm(const GradedExpr& f) const;
  /// Restriction to the zero section of T(PTM) -> PTM (fibre generators set to 0).
  GradedExpr to_ptm(const GradedExpr& f) const;

  /// Chart intervals for the base coordinates; fibre generators use the fallback.
  EqualityOptions options(const EqualityOptions& base = {}) const {
    return chart_.options(base);
  }

 private:
  Chart chart_;
  TablePtr ptm_;
  TablePtr tptm_;
  TablePtr classical_;
};

/// X = X^a d/dx^a + Xbar^a d/d(dx^a) with components over the PTM table.
class VectorFieldPTM {
 public:
  VectorFieldPTM(const SuperDomain& domain, std::vector<GradedExpr> base,
                 std::vector<GradedExpr> bar, std::optional<Parity> declared = std::nullopt);
  static VectorFieldPTM zero(const SuperDomain& domain, Parity parity = Parity::Even);
  static VectorFieldPTM from_components(TablePtr ptm, std::vector<GradedExpr> base,
                                        std::vector<GradedExpr> bar,
                                        std::optional<Parity> declared = std::nullopt);

  const std::vector<GradedExpr>& base() const { return base_; }
  const std::vector<GradedExpr>& bar() const { return bar_; }
  const TablePtr& table() const { return table_; }
  std::size_t dim() const { return base_.size(); }

  bool is_zero() const;
  /// Total parity, or nullopt for an inhomogeneous field. A zero field has its
  /// declared parity (even if none was declared).
  std::optional<Parity> parity() const;
  Parity require_parity() const;
  /// Even part and odd part.
  std::pair<VectorFieldPTM, VectorFieldPTM> split() const;

  /// Action as a left derivation.
  GradedExpr apply(const GradedExpr& f) const;

  friend VectorFieldPTM operator+(const VectorFieldPTM& a, const VectorFieldPTM& b);
  friend VectorFieldPTM operator-(const VectorFieldPTM& a, const VectorFieldPTM& b);
  /// f * X, coefficients multiplied from the left.
  friend VectorFieldPTM operator*(const GradedExpr& f, const VectorFieldPTM& x);

  std::string str(const SuperDomain& domain) const;

 private:
  VectorFieldPTM() = default;
  void validate() const;
  TablePtr table_;
  std::vector<GradedExpr> base_;
  std::vector<GradedExpr> bar_;
  std::optional<Parity> declared_;
};

bool field_is_zero(const VectorFieldPTM& x, const EqualityOptions& options);

VectorFieldPTM coordinate_field(const SuperDomain& domain, std::size_t a);  // d/dx^a
VectorFieldPTM form_field(const SuperDomain& domain, std::size_t a);        // d/d(dx^a)

/// Even function on T(PTM) that vanishes on the zero section.
class MetricFunction {
 public:
  MetricFunction(const SuperDomain& domain, GradedExpr value);
  const GradedExpr& value() const { return value_; }
  std::string str() const { return value_.str(); }

 private:
  GradedExpr value_;
};

/// nabla xdot^a = dxdot^a + dx^b xdot^c Gamma^a_cb, over the TPTM table.
std::vector<GradedExpr> nabla_dot(const SuperDomain& domain, const Christoffel& gamma);

/// G = xdot^a xdot^b g_ba + xi^a xi^b omega_ba on the decomposed bundle.
GradedExpr decomposed_metric(const SuperDomain& domain, const MetricTensor& g,
                             const AlmostSymplectic& omega);

/// g = phi_h^* G, substituting xi^a -> nabla xdot^a.
MetricFunction super_sasaki(const SuperDomain& domain, const Geometry& geom);

/// The expanded four-term coordinate form, assembled term by term.
GradedExpr super_sasaki_expanded(const SuperDomain& domain, const Geometry& geom);

/// iota_X = X^a d/dxdot^a + Xbar^a d/d(dxdot^a) on T(PTM).
class VerticalLift {
 public:
  VerticalLift(const SuperDomain& domain, const VectorFieldPTM& x);
  GradedExpr apply(const GradedExpr& f) const;
  const std::vector<GradedExpr>& along_xdot() const { return along_xdot_; }
  const std::vector<GradedExpr>& along_dxdot() const { return along_dxdot_; }

 private:
  std::vector<std::string> xdot_;
  std::vector<std::string> dxdot_;
  std::vector<GradedExpr> along_xdot_;
  std::vector<GradedExpr> along_dxdot_;
};

VerticalLift vertical_lift(const SuperDomain& domain, const VectorFieldPTM& x);

/// <X|Y> = 1/2 iota_X iota_Y g, restricted to PTM. Inhomogeneous fields are
/// split into homogeneous parts.
GradedExpr pairing_via_lift(const SuperDomain& domain, const VectorFieldPTM& x,
                            const VectorFieldPTM& y, const MetricFunction& g);

/// The closed local expression for <X|Y> in terms of g, omega, Gamma.
GradedExpr pairing_closed_form(const SuperDomain& domain, const VectorFieldPTM& x,
                               const VectorFieldPTM& y, const Geometry& geom);

/// g_S = xdot^a xdot^b g_ba + Dxdot^a Dxdot^b g_ba with
/// Dxdot^a = deltaxdot^a + deltax^b xdot^c Gamma^a_cb, over the classical table.
GradedExpr classical_sasaki(const SuperDomain& domain, const MetricTensor& g,
                            const Christoffel& gamma);

/// B(U,V) = (-1)^{|U||V|} U^a V^b B_ab for form-valued vectors over PTM.
GradedExpr graded_bilinear(const ExprMatrix& b, const std::vector<GradedExpr>& u, Parity pu,
                           const std::vector<GradedExpr>& v, Parity pv, const TablePtr& table);

/// eps<d_a|d_b> and eps<d_{dx^a}|d_{dx^b}>, with determinant checks at samples.
struct NondegeneracyBlocks {
  ExprMatrix even_block;
  ExprMatrix odd_block;
  bool even_nonzero;
  bool odd_nonzero;
};
NondegeneracyBlocks nondegeneracy(const SuperDomain& domain, const MetricFunction& g,
                                  const EqualityOptions& options);

struct Convention {
  std::string key;
  std::string value;
};
/// Sign and ordering conventions in force, for self-describing reports.
std::vector<Convention> convention_ledger();

}  // namespace supersasaki
