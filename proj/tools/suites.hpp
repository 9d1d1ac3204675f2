#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <supersasaki/cartan.hpp>
#include <supersasaki/transform.hpp>

namespace supersasaki::cli {

struct SuiteOptions {
  int trials = 20;
  std::uint64_t seed = 0;
  EqualityOptions equality;
};

/// lhs - rhs vanishes: canonically, else at samples.
CheckResult scalar_check(std::string name, const ScalarExpr& lhs, const ScalarExpr& rhs,
                         const EqualityOptions& options);

/// Merges per-trial results by name: a check passes only if every trial did.
std::vector<CheckResult> aggregate(const std::vector<std::vector<CheckResult>>& trials,
                                   const std::string& unit = "trials");

std::vector<CheckResult> proposition_suite(const Geometry& geom, const SuiteOptions& options);
std::vector<CheckResult> cartan_suite(const Geometry& geom, const SuiteOptions& options);
std::vector<CheckResult> epsilon_suite(const Geometry& geom, const SuiteOptions& options);

/// Parity additivity, graded symmetry, linearity, closed form vs lift, and
/// the non-degeneracy blocks.
std::vector<CheckResult> axioms_suite(const Geometry& geom, const SuiteOptions& options);

/// Random fields on the target, compared with their related fields on the source.
std::vector<CheckResult> invariance_suite(const SmoothMap& psi, const Geometry& m,
                                          const Geometry& n, const SuiteOptions& options);

struct NaturalitySuite {
  NaturalityReport report;
  std::vector<CheckResult> results;
};
NaturalitySuite naturality_suite(const SmoothMap& psi, const Geometry& m, const Geometry& n,
                                 const SuiteOptions& options);

}  // namespace supersasaki::cli
