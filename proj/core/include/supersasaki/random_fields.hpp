#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "supersasaki/sasakilift.hpp"

namespace supersasaki {

/// Seeded generator of random polynomial test data.
class FieldSampler {
 public:
  explicit FieldSampler(std::uint64_t seed) : rng_(seed) {}

  /// Sum of up to `terms` monomials of total degree <= max_degree with small
  /// integer coefficients. Never identically zero.
  ScalarExpr polynomial(const std::vector<std::string>& vars, int max_degree = 2,
                        int terms = 3);
  VectorFieldM base_field(const Chart& chart, int max_degree = 2);
  /// Homogeneous element of the PTM algebra: random polynomial coefficients on
  /// random dx-monomials of the requested parity.
  GradedExpr graded(const SuperDomain& domain, Parity parity, int max_degree = 1);
  /// Homogeneous vector field on PTM of total parity `parity`.
  VectorFieldPTM ptm_field(const SuperDomain& domain, Parity parity, int max_degree = 1);

  std::mt19937_64& engine() { return rng_; }

 private:
  int uniform(int lo, int hi);
  std::mt19937_64 rng_;
};

}  // namespace supersasaki
