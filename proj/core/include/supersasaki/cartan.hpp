#pragma once

#include <string>
#include <vector>

#include "supersasaki/report.hpp"
#include "supersasaki/sasakilift.hpp"

namespace supersasaki {

enum class CartanOrigin { DeRham, Interior, Lie, Custom };

struct CartanField {
  VectorFieldPTM field;
  CartanOrigin origin;
  std::string label;
};

/// d = dx^a d/dx^a (odd).
CartanField de_rham(const SuperDomain& domain);
/// i_X = X^a d/d(dx^a) (odd).
CartanField interior(const SuperDomain& domain, const VectorFieldM& x);
/// L_X = X^a d/dx^a + dx^b d_b X^a d/d(dx^a) (even).
CartanField lie_derivative(const SuperDomain& domain, const VectorFieldM& x);

/// [U,V] = U o V - (-1)^{|U||V|} V o U, components read off the generators.
VectorFieldPTM super_commutator(const VectorFieldPTM& u, const VectorFieldPTM& v);

/// U^a = dx^c (nabla X)^a_c, an odd vector of one-forms.
std::vector<GradedExpr> nabla_form(const SuperDomain& domain, const VectorFieldM& x,
                                   const Christoffel& gamma);

/// The six pairing identities for d, i_X, L_X, i_Y, L_Y.
std::vector<CheckResult> verify_proposition(const SuperDomain& domain, const Geometry& geom,
                                            const MetricFunction& g, const VectorFieldM& x,
                                            const VectorFieldM& y,
                                            const EqualityOptions& options);

/// eps(<L_X|L_Y>) = <X|Y>_h and <i_X|i_Y> = omega(X,Y).
std::vector<CheckResult> epsilon_observations(const SuperDomain& domain, const Geometry& geom,
                                              const MetricFunction& g, const VectorFieldM& x,
                                              const VectorFieldM& y,
                                              const EqualityOptions& options);

/// [d,d]=0, [d,i_X]=L_X, [i_X,i_Y]=0, [L_X,i_Y]=i_[X,Y], [d,L_X]=0.
std::vector<CheckResult> cartan_relations(const SuperDomain& domain, const VectorFieldM& x,
                                          const VectorFieldM& y,
                                          const EqualityOptions& options);

CheckResult graded_check(std::string name, const GradedExpr& lhs, const GradedExpr& rhs,
                         const EqualityOptions& options);
CheckResult field_check(std::string name, const SuperDomain& domain, const VectorFieldPTM& lhs,
                        const VectorFieldPTM& rhs, const EqualityOptions& options);

}  // namespace supersasaki
