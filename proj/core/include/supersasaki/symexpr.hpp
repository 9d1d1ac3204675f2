#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace supersasaki {

using Rational = mpq_class;

enum class Function { Sin, Cos, Exp, Sqrt, Ln };

std::string_view function_name(Function f);

enum class NodeKind {
  Constant,
  Variable,
  Sum,
  Difference,
  Product,
  Quotient,
  Power,
  Negation,
  Call,
};

class RationalFunction;
struct ExprNode;

/// Malformed expression text. `offset` is the byte position of the offending
/// token in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by numeric evaluation: division by zero, sqrt of a negative value,
/// ln of a non-positive value, unbound variable.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by symbolic operations whose preconditions fail (e.g. inverting a
/// canonically singular matrix).
class SymbolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable symbolic expression over even (commuting) variables.
///
/// A ScalarExpr is either a raw parse tree (as produced by `parse_expr` or the
/// raw builders below) or a canonical value backed by an exact rational
/// function over atoms (variables and function applications). The arithmetic
/// operators always return canonical values; `simplify` turns a raw tree into
/// its canonical value. Canonical values still expose a tree through the
/// accessors, built on first use.
class ScalarExpr {
 public:
  ScalarExpr();  // the constant 0
  ScalarExpr(int value);  // NOLINT(google-explicit-constructor)
  ScalarExpr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static ScalarExpr variable(const std::string& name);

  // Raw tree builders. No simplification is performed.
  static ScalarExpr raw_constant(const Rational& value);
  static ScalarExpr raw_sum(const ScalarExpr& a, const ScalarExpr& b);
  static ScalarExpr raw_difference(const ScalarExpr& a, const ScalarExpr& b);
  static ScalarExpr raw_product(const ScalarExpr& a, const ScalarExpr& b);
  static ScalarExpr raw_quotient(const ScalarExpr& a, const ScalarExpr& b);
  static ScalarExpr raw_power(const ScalarExpr& base, int exponent);
  static ScalarExpr raw_negation(const ScalarExpr& a);
  static ScalarExpr raw_call(Function f, const ScalarExpr& arg);

  static ScalarExpr from_canonical(RationalFunction value);

  NodeKind kind() const;
  const Rational& value() const;        // Constant
  const std::string& name() const;      // Variable
  Function function() const;            // Call
  int exponent() const;                 // Power
  const ScalarExpr& lhs() const;        // binary nodes, Power base
  const ScalarExpr& rhs() const;        // binary nodes
  const ScalarExpr& operand() const;    // Negation, Call

  bool is_canonical() const;
  /// Exact rational-function form. Computed on demand for raw trees.
  std::shared_ptr<const RationalFunction> canonical() const;

  /// True when the canonical form is the zero function.
  bool is_zero() const;
  /// True when the canonical form is a rational constant.
  bool is_constant() const;
  /// Rational value of a constant expression; throws SymbolicError otherwise.
  Rational constant_value() const;

  std::set<std::string> free_variables() const;
  bool depends_on(const std::string& variable) const;

  std::string str() const;

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a);
  ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
  ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
  ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }

  /// Structural identity of the canonical forms.
  friend bool canonical_equal(const ScalarExpr& a, const ScalarExpr& b);

 private:
  friend struct ExprNode;
  explicit ScalarExpr(std::shared_ptr<const ExprNode> node);
  const ExprNode& tree() const;

  std::shared_ptr<const ExprNode> node_;
};

std::ostream& operator<<(std::ostream& os, const ScalarExpr& e);

ScalarExpr pow(const ScalarExpr& base, int exponent);
ScalarExpr apply(Function f, const ScalarExpr& arg);
inline ScalarExpr sin(const ScalarExpr& a) { return apply(Function::Sin, a); }
inline ScalarExpr cos(const ScalarExpr& a) { return apply(Function::Cos, a); }
inline ScalarExpr exp(const ScalarExpr& a) { return apply(Function::Exp, a); }
inline ScalarExpr sqrt(const ScalarExpr& a) { return apply(Function::Sqrt, a); }
inline ScalarExpr ln(const ScalarExpr& a) { return apply(Function::Ln, a); }

/// Parses `text` against the expression grammar. Every identifier must be a
/// member of `vocabulary`.
ScalarExpr parse_expr(std::string_view text,
                      const std::set<std::string>& vocabulary);
/// Same grammar, any identifier accepted.
ScalarExpr parse_expr(std::string_view text);

ScalarExpr simplify(const ScalarExpr& e);
ScalarExpr differentiate(const ScalarExpr& e, const std::string& variable);
/// Simultaneous substitution of variables.
ScalarExpr substitute(const ScalarExpr& e,
                      const std::map<std::string, ScalarExpr>& images);

using Assignment = std::map<std::string, double>;
double eval_numeric(const ScalarExpr& e, const Assignment& at);

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct EqualityOptions {
  std::size_t samples = 50;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::map<std::string, Interval> domain;
  /// Interval for variables not listed in `domain`.
  Interval fallback{-1.5, 1.5};
};

/// One pseudo-random point for `variables`, drawn from the option intervals.
Assignment draw_sample(const std::set<std::string>& variables,
                       const EqualityOptions& options, std::mt19937_64& rng);

/// Two-tier equality: canonical forms first, then agreement at pseudo-random
/// sample points. Throws EvaluationError when no valid sample can be drawn.
bool expr_equal(const ScalarExpr& a, const ScalarExpr& b,
                const EqualityOptions& options = {});
bool expr_is_zero(const ScalarExpr& e, const EqualityOptions& options = {});

}  // namespace supersasaki
