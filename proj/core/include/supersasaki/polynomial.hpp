#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supersasaki/symexpr.hpp"

namespace supersasaki {

/// An indeterminate of the polynomial layer: a named variable or a function
/// applied to a canonical argument. Atoms are ordered by `key`.
struct Atom {
  std::string key;
  std::optional<Function> function;
  ScalarExpr argument;  // canonical; meaningful only for function atoms
  std::set<std::string> variables;
};

using AtomPtr = std::shared_ptr<const Atom>;

AtomPtr make_variable_atom(const std::string& name);
/// Returns the canonical function atom for f(arg); arg must be canonical.
AtomPtr make_function_atom(Function f, const ScalarExpr& arg);

struct Factor {
  AtomPtr atom;
  int exponent;
};

/// Power product of atoms, factors sorted by atom key, exponents positive.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const AtomPtr& atom, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  int exponent_of(const Atom& atom) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// a / b when b divides a.
  friend std::optional<Monomial> divide(const Monomial& a, const Monomial& b);
  Monomial without(const Atom& atom) const;

  /// Graded lexicographic comparison: -1, 0, +1.
  friend int compare(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

struct MonomialDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare(a, b) > 0;
  }
};

/// Sparse multivariate polynomial over Q. Terms are kept in descending
/// graded-lex order, so the first term is the leading term.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, MonomialDescending>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  std::vector<AtomPtr> atoms() const;
  bool contains(const Atom& atom) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(int exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  /// Exact quotient a / b, or nullopt when b does not divide a.
  friend std::optional<Polynomial> divide_exact(const Polynomial& a,
                                                const Polynomial& b);

  /// Coefficients with respect to one atom: p = sum_k c_k atom^k.
  std::map<int, Polynomial> coefficients_in(const Atom& atom) const;
  int degree_in(const Atom& atom) const;

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Greatest common divisor over Q[atoms], normalized to be monic.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Reduced fraction num/den: gcd(num, den) = 1, den monic, zero is 0/1.
/// Powers sin(u)^k with k >= 2 are rewritten through sin^2 = 1 - cos^2 and
/// sqrt(u)^2 is replaced by u when u is a polynomial.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(const Rational& c);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable(const std::string& name);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
  Rational constant_value() const;
  std::set<std::string> free_variables() const;

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  RationalFunction pow(int exponent) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction derivative(const std::string& variable) const;
  RationalFunction substitute(
      const std::map<std::string, RationalFunction>& images) const;

 private:
  struct Reduced {};
  RationalFunction(Polynomial num, Polynomial den, Reduced)
      : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

/// f(arg) with exact special values (sin 0, cos 0, exp 0, ln 1, sqrt of a
/// rational square).
RationalFunction apply_function(Function f, const RationalFunction& arg);

}  // namespace supersasaki
