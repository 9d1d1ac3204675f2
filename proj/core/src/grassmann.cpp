#include "supersasaki/grassmann.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace supersasaki {

std::string_view to_string(Parity p) {
  return p == Parity::Odd ? "odd" : "even";
}

// ---------------------------------------------------------------------------
// GeneratorTable

GeneratorTable::GeneratorTable(std::vector<Generator> generators)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& name = generators_[i].name;
    if (name.empty()) throw GradedError("empty generator name");
    if (!index_.emplace(name, i).second) {
      throw GradedError("duplicate generator '" + name + "'");
    }
  }
}

std::optional<std::size_t> GeneratorTable::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GeneratorTable::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw GradedError("unknown generator '" + std::string(name) + "'");
  return *i;
}

std::set<std::string> GeneratorTable::names() const {
  std::set<std::string> out;
  for (const auto& g : generators_) out.insert(g.name);
  return out;
}

TablePtr make_table(std::vector<Generator> generators) {
  return std::make_shared<const GeneratorTable>(std::move(generators));
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

void require_same_table(const TablePtr& a, const TablePtr& b) {
  if (!same_table(a, b)) throw GradedError("generator table mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// OddMonomial

OddMonomial::OddMonomial(std::vector<std::size_t> sorted_indices)
    : indices_(std::move(sorted_indices)) {}

bool operator<(const OddMonomial& a, const OddMonomial& b) {
  if (a.indices_.size() != b.indices_.size()) {
    return a.indices_.size() < b.indices_.size();
  }
  return a.indices_ < b.indices_;
}

std::optional<SignedMonomial> multiply(const OddMonomial& a, const OddMonomial& b) {
  const auto& x = a.indices();
  const auto& y = b.indices();
  std::vector<std::size_t> merged;
  merged.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t swaps = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    while (i < x.size() && x[i] < y[j]) merged.push_back(x[i++]);
    if (i < x.size() && x[i] == y[j]) return std::nullopt;
    // y[j] moves left past every remaining element of x.
    swaps += x.size() - i;
    merged.push_back(y[j]);
  }
  while (i < x.size()) merged.push_back(x[i++]);
  return SignedMonomial{swaps % 2 == 0 ? 1 : -1, OddMonomial(std::move(merged))};
}

// ---------------------------------------------------------------------------
// GradedExpr

GradedExpr::GradedExpr(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw GradedError("graded expression without a table");
}

GradedExpr::GradedExpr(TablePtr table, const ScalarExpr& scalar)
    : GradedExpr(std::move(table)) {
  const ScalarExpr c = simplify(scalar);
  if (!c.is_zero()) terms_.emplace(OddMonomial(), c);
}

GradedExpr::GradedExpr(TablePtr table, Terms terms) : GradedExpr(std::move(table)) {
  for (auto& [m, c] : terms) {
    for (std::size_t idx : m.indices()) {
      if (idx >= table_->size() || (*table_)[idx].parity != Parity::Odd) {
        throw GradedError("monomial index is not an odd generator");
      }
    }
    ScalarExpr s = simplify(c);
    if (!s.is_zero()) terms_.emplace(m, std::move(s));
  }
}

GradedExpr GradedExpr::generator(const TablePtr& table, std::string_view name) {
  const std::size_t i = table->require(name);
  const Generator& g = (*table)[i];
  if (g.parity == Parity::Even) {
    return GradedExpr(table, ScalarExpr::variable(g.name));
  }
  GradedExpr out(table);
  out.terms_.emplace(OddMonomial({i}), ScalarExpr(1));
  return out;
}

ScalarExpr GradedExpr::coefficient(const OddMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ScalarExpr(0) : it->second;
}

GradedExpr GradedExpr::form_degree_part(std::size_t length) const {
  GradedExpr out(table_);
  for (const auto& [m, c] : terms_) {
    if (m.length() == length) out.terms_.emplace(m, c);
  }
  return out;
}

std::set<std::size_t> GradedExpr::form_degrees() const {
  std::set<std::size_t> out;
  for (const auto& [m, c] : terms_) out.insert(m.length());
  return out;
}

GradedExpr GradedExpr::map_coefficients(
    const std::function<ScalarExpr(const ScalarExpr&)>& fn) const {
  GradedExpr out(table_);
  for (const auto& [m, c] : terms_) {
    ScalarExpr v = simplify(fn(c));
    if (!v.is_zero()) out.terms_.emplace(m, std::move(v));
  }
  return out;
}

GradedExpr operator+(const GradedExpr& a, const GradedExpr& b) {
  require_same_table(a.table_, b.table_);
  GradedExpr out = a;
  for (const auto& [m, c] : b.terms_) {
    auto it = out.terms_.find(m);
    if (it == out.terms_.end()) {
      out.terms_.emplace(m, c);
      continue;
    }
    ScalarExpr sum = it->second + c;
    if (sum.is_zero()) {
      out.terms_.erase(it);
    } else {
      it->second = std::move(sum);
    }
  }
  return out;
}

GradedExpr operator-(const GradedExpr& a) {
  GradedExpr out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

GradedExpr operator-(const GradedExpr& a, const GradedExpr& b) {
  return a + (-b);
}

GradedExpr operator*(const GradedExpr& a, const GradedExpr& b) {
  require_same_table(a.table_, b.table_);
  GradedExpr out(a.table_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto product = multiply(ma, mb);
      if (!product) continue;
      ScalarExpr c = ca * cb;
      if (product->sign < 0) c = -c;
      auto it = out.terms_.find(product->monomial);
      if (it == out.terms_.end()) {
        if (!c.is_zero()) out.terms_.emplace(product->monomial, std::move(c));
        continue;
      }
      ScalarExpr sum = it->second + c;
      if (sum.is_zero()) {
        out.terms_.erase(it);
      } else {
        it->second = std::move(sum);
      }
    }
  }
  return out;
}

GradedExpr operator*(const ScalarExpr& s, const GradedExpr& a) {
  const ScalarExpr k = simplify(s);
  return a.map_coefficients([&](const ScalarExpr& c) { return k * c; });
}

bool operator==(const GradedExpr& a, const GradedExpr& b) {
  if (!same_table(a.table_, b.table_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || !canonical_equal(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

std::string GradedExpr::str() const {
  if (terms_.empty()) return "0";
  ScalarExpr out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (m.empty()) {
      out = c;
      first = false;
      continue;
    }
    bool negative = false;
    ScalarExpr magnitude = c;
    if (c.kind() == NodeKind::Negation) {
      negative = true;
      magnitude = c.operand();
    } else if (c.kind() == NodeKind::Constant && c.value() < 0) {
      negative = true;
      magnitude = ScalarExpr::raw_constant(-c.value());
    }
    const bool unit = magnitude.kind() == NodeKind::Constant && magnitude.value() == 1;
    ScalarExpr term;
    for (std::size_t k = 0; k < m.indices().size(); ++k) {
      ScalarExpr g = ScalarExpr::variable((*table_)[m.indices()[k]].name);
      if (k == 0) {
        term = unit ? g : ScalarExpr::raw_product(magnitude, g);
      } else {
        term = ScalarExpr::raw_product(term, g);
      }
    }
    if (first) {
      out = negative ? ScalarExpr::raw_negation(term) : term;
      first = false;
    } else {
      out = negative ? ScalarExpr::raw_difference(out, term)
                     : ScalarExpr::raw_sum(out, term);
    }
  }
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const GradedExpr& e) {
  return os << e.str();
}

GradedExpr gmul(const GradedExpr& a, const GradedExpr& b) { return a * b; }

GradedExpr partial(const GradedExpr& f, std::string_view generator) {
  const std::size_t idx = f.table()->require(generator);
  const Generator& g = (*f.table())[idx];
  if (g.parity == Parity::Even) {
    return f.map_coefficients(
        [&](const ScalarExpr& c) { return differentiate(c, g.name); });
  }
  GradedExpr::Terms terms;
  for (const auto& [m, c] : f.terms()) {
    const auto& ind = m.indices();
    auto it = std::find(ind.begin(), ind.end(), idx);
    if (it == ind.end()) continue;
    const auto position = static_cast<std::size_t>(it - ind.begin());
    std::vector<std::size_t> rest(ind.begin(), it);
    rest.insert(rest.end(), it + 1, ind.end());
    terms.emplace(OddMonomial(std::move(rest)), position % 2 == 0 ? c : -c);
  }
  return GradedExpr(f.table(), std::move(terms));
}

ScalarExpr epsilon(const GradedExpr& f) { return f.coefficient(OddMonomial()); }

GradedParity parity_of(const GradedExpr& f) {
  bool even = false;
  bool odd = false;
  for (const auto& [m, c] : f.terms()) {
    (m.length() % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return GradedParity::Inhomogeneous;
  return odd ? GradedParity::Odd : GradedParity::Even;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct NilpotentShift {
  std::string name;
  GradedExpr shift;
};

// Multivariate Taylor expansion of `c` around the scalar images, shifted by
// nilpotent parts. Terminates because every shift is nilpotent.
GradedExpr taylor(const ScalarExpr& c, const std::vector<NilpotentShift>& shifts,
                  std::size_t i, const std::map<std::string, ScalarExpr>& scalar_images,
                  const TablePtr& target) {
  if (i == shifts.size()) {
    return GradedExpr(target, scalar_images.empty() ? c : substitute(c, scalar_images));
  }
  const auto& [name, shift] = shifts[i];
  GradedExpr result(target);
  GradedExpr power(target, ScalarExpr(1));
  ScalarExpr derivative = c;
  Rational factorial = 1;
  for (int k = 0;; ++k) {
    if (k > 0) factorial *= k;
    if (derivative.is_zero()) break;
    result += ScalarExpr(Rational(1) / factorial) *
              (taylor(derivative, shifts, i + 1, scalar_images, target) * power);
    power = power * shift;
    if (power.is_zero()) break;
    derivative = differentiate(derivative, name);
  }
  return result;
}

void check_parity(const Generator& g, const GradedExpr& image) {
  const GradedParity p = parity_of(image);
  if (image.is_zero()) return;
  const bool ok = (g.parity == Parity::Even && p == GradedParity::Even) ||
                  (g.parity == Parity::Odd && p == GradedParity::Odd);
  if (!ok) {
    throw GradedError("parity mismatch substituting for " +
                      std::string(to_string(g.parity)) + " generator '" + g.name + "'");
  }
}

}  // namespace

GradedExpr gsubstitute(const GradedExpr& f,
                       const std::map<std::string, GradedExpr>& images,
                       const TablePtr& target) {
  const GeneratorTable& source = *f.table();
  std::vector<GradedExpr> image(source.size(), GradedExpr(target));
  std::map<std::string, ScalarExpr> scalar_images;
  std::vector<NilpotentShift> shifts;

  for (const auto& [name, img] : images) {
    if (!source.index_of(name)) {
      throw GradedError("substitution for unknown generator '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Generator& g = source[i];
    auto it = images.find(g.name);
    if (it != images.end()) {
      require_same_table(it->second.table(), target);
      check_parity(g, it->second);
      image[i] = it->second;
    } else {
      auto j = target->index_of(g.name);
      if (!j || (*target)[*j].parity != g.parity) {
        throw GradedError("no image for generator '" + g.name + "'");
      }
      image[i] = GradedExpr::generator(target, g.name);
    }
    if (g.parity == Parity::Even) {
      const ScalarExpr base = epsilon(image[i]);
      if (!canonical_equal(base, ScalarExpr::variable(g.name))) {
        scalar_images.emplace(g.name, base);
      }
      GradedExpr nil = image[i] - GradedExpr(target, base);
      if (!nil.is_zero()) shifts.push_back({g.name, std::move(nil)});
    }
  }

  GradedExpr out(target);
  for (const auto& [m, c] : f.terms()) {
    GradedExpr term = taylor(c, shifts, 0, scalar_images, target);
    for (std::size_t idx : m.indices()) {
      term = term * image[idx];
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

GradedExpr embed(const GradedExpr& f, const TablePtr& target) {
  if (same_table(f.table(), target)) return f;
  return gsubstitute(f, {}, target);
}

bool graded_equal(const GradedExpr& a, const GradedExpr& b,
                  const EqualityOptions& options) {
  return graded_is_zero(a - b, options);
}

bool graded_is_zero(const GradedExpr& f, const EqualityOptions& options) {
  for (const auto& [m, c] : f.terms()) {
    if (!expr_is_zero(c, options)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

GradedExpr inverse(const GradedExpr& e) {
  const ScalarExpr base = epsilon(e);
  if (base.is_zero()) throw GradedError("division by a nilpotent element");
  if (parity_of(e) != GradedParity::Even) {
    throw GradedError("division by an element that is not even");
  }
  const TablePtr& t = e.table();
  // 1/(a + n) = (1/a) * sum_k (-n/a)^k
  const GradedExpr q = ScalarExpr(-1) / base * (e - GradedExpr(t, base));
  GradedExpr sum(t, ScalarExpr(1));
  GradedExpr power(t, ScalarExpr(1));
  while (true) {
    power = power * q;
    if (power.is_zero()) break;
    sum += power;
  }
  return (ScalarExpr(1) / base) * sum;
}

GradedExpr to_graded(const ScalarExpr& e, const TablePtr& table) {
  switch (e.kind()) {
    case NodeKind::Constant: return GradedExpr(table, ScalarExpr(e.value()));
    case NodeKind::Variable: return GradedExpr::generator(table, e.name());
    case NodeKind::Sum: return to_graded(e.lhs(), table) + to_graded(e.rhs(), table);
    case NodeKind::Difference:
      return to_graded(e.lhs(), table) - to_graded(e.rhs(), table);
    case NodeKind::Product:
      return to_graded(e.lhs(), table) * to_graded(e.rhs(), table);
    case NodeKind::Quotient:
      return to_graded(e.lhs(), table) * inverse(to_graded(e.rhs(), table));
    case NodeKind::Power: {
      GradedExpr base = to_graded(e.lhs(), table);
      if (e.exponent() < 0) base = inverse(base);
      GradedExpr out(table, ScalarExpr(1));
      for (int k = 0; k < std::abs(e.exponent()); ++k) out = out * base;
      return out;
    }
    case NodeKind::Negation: return -to_graded(e.operand(), table);
    case NodeKind::Call: {
      const GradedExpr arg = to_graded(e.operand(), table);
      if (!(arg - GradedExpr(table, epsilon(arg))).is_zero()) {
        throw GradedError("function applied to a non-scalar argument");
      }
      return GradedExpr(table, apply(e.function(), epsilon(arg)));
    }
  }
  return GradedExpr(table);
}

}  // namespace

GradedExpr parse_graded(std::string_view text, const TablePtr& table) {
  return to_graded(parse_expr(text, table->names()), table);
}

}  // namespace supersasaki
