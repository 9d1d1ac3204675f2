#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "supersasaki/symexpr.hpp"

namespace supersasaki {

enum class Parity { Even, Odd };

inline Parity operator+(Parity a, Parity b) {
  return a == b ? Parity::Even : Parity::Odd;
}
inline int to_int(Parity p) { return p == Parity::Odd ? 1 : 0; }
inline Parity flip(Parity p) { return p == Parity::Odd ? Parity::Even : Parity::Odd; }
std::string_view to_string(Parity p);

/// Table mismatch, unknown generator or a parity violation.
class GradedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Generator {
  std::string name;
  Parity parity;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered generators of a supercommutative algebra. The declaration order is
/// the monomial order.
class GeneratorTable {
 public:
  explicit GeneratorTable(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;
  std::set<std::string> names() const;

  friend bool operator==(const GeneratorTable& a, const GeneratorTable& b) {
    return a.generators_ == b.generators_;
  }

 private:
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<Generator> generators);
bool same_table(const TablePtr& a, const TablePtr& b);

/// Strictly increasing list of table indices of odd generators.
class OddMonomial {
 public:
  OddMonomial() = default;
  explicit OddMonomial(std::vector<std::size_t> sorted_indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t length() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  /// Graded order: shorter first, then lexicographic.
  friend bool operator<(const OddMonomial& a, const OddMonomial& b);
  friend bool operator==(const OddMonomial&, const OddMonomial&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// a * b = sign * merged, or nullopt when they share a generator.
struct SignedMonomial {
  int sign;
  OddMonomial monomial;
};
std::optional<SignedMonomial> multiply(const OddMonomial& a, const OddMonomial& b);

enum class GradedParity { Even, Odd, Inhomogeneous };

/// Element of the supercommutative algebra generated by a table: a finite map
/// from odd monomials to scalar coefficients that depend on even generators.
/// Coefficients are canonical and never canonically zero.
class GradedExpr {
 public:
  using Terms = std::map<OddMonomial, ScalarExpr>;

  explicit GradedExpr(TablePtr table);
  GradedExpr(TablePtr table, const ScalarExpr& scalar);
  GradedExpr(TablePtr table, Terms terms);

  static GradedExpr generator(const TablePtr& table, std::string_view name);

  const TablePtr& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ScalarExpr coefficient(const OddMonomial& m) const;

  /// Terms whose monomials have exactly `length` odd generators.
  GradedExpr form_degree_part(std::size_t length) const;
  std::set<std::size_t> form_degrees() const;

  GradedExpr map_coefficients(
      const std::function<ScalarExpr(const ScalarExpr&)>& fn) const;

  friend GradedExpr operator+(const GradedExpr& a, const GradedExpr& b);
  friend GradedExpr operator-(const GradedExpr& a, const GradedExpr& b);
  friend GradedExpr operator-(const GradedExpr& a);
  friend GradedExpr operator*(const GradedExpr& a, const GradedExpr& b);
  friend GradedExpr operator*(const ScalarExpr& s, const GradedExpr& a);
  GradedExpr& operator+=(const GradedExpr& b) { return *this = *this + b; }
  GradedExpr& operator-=(const GradedExpr& b) { return *this = *this - b; }

  /// Exact structural equality of canonical forms.
  friend bool operator==(const GradedExpr& a, const GradedExpr& b);

  std::string str() const;

 private:
  TablePtr table_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const GradedExpr& e);

GradedExpr gmul(const GradedExpr& a, const GradedExpr& b);

/// Left partial derivative with respect to a generator of the table.
GradedExpr partial(const GradedExpr& f, std::string_view generator);

/// Algebra-morphism substitution. Generators of f's table missing from
/// `images` map to the same-named generator of `target`. Even images may carry
/// nilpotent parts; coefficients are then Taylor-expanded.
GradedExpr gsubstitute(const GradedExpr& f,
                       const std::map<std::string, GradedExpr>& images,
                       const TablePtr& target);

/// Identity substitution into a table that contains f's generators.
GradedExpr embed(const GradedExpr& f, const TablePtr& target);

/// Degree-zero part.
ScalarExpr epsilon(const GradedExpr& f);

GradedParity parity_of(const GradedExpr& f);

bool graded_equal(const GradedExpr& a, const GradedExpr& b,
                  const EqualityOptions& options = {});
bool graded_is_zero(const GradedExpr& f, const EqualityOptions& options = {});

/// Parses an expression over the table's generators; products keep the
/// written order of odd factors.
GradedExpr parse_graded(std::string_view text, const TablePtr& table);

}  // namespace supersasaki
