#include "supersasaki/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace supersasaki {

namespace {

int compare_atoms(const Atom& a, const Atom& b) {
  if (&a == &b) return 0;
  const int c = a.key.compare(b.key);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

AtomPtr make_variable_atom(const std::string& name) {
  auto atom = std::make_shared<Atom>();
  atom->key = name;
  atom->variables = {name};
  return atom;
}

AtomPtr make_function_atom(Function f, const ScalarExpr& arg) {
  auto atom = std::make_shared<Atom>();
  atom->key = std::string(function_name(f)) + "(" + arg.str() + ")";
  atom->function = f;
  atom->argument = arg;
  atom->variables = arg.free_variables();
  return atom;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const AtomPtr& atom, int exponent) {
  if (exponent > 0) {
    factors_.push_back({atom, exponent});
    degree_ = exponent;
  }
}

int Monomial::exponent_of(const Atom& atom) const {
  for (const auto& f : factors_) {
    if (compare_atoms(*f.atom, atom) == 0) return f.exponent;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.factors_.size() && j < b.factors_.size()) {
    const int c = compare_atoms(*a.factors_[i].atom, *b.factors_[j].atom);
    if (c < 0) {
      out.factors_.push_back(a.factors_[i++]);
    } else if (c > 0) {
      out.factors_.push_back(b.factors_[j++]);
    } else {
      out.factors_.push_back(
          {a.factors_[i].atom, a.factors_[i].exponent + b.factors_[j].exponent});
      ++i;
      ++j;
    }
  }
  for (; i < a.factors_.size(); ++i) out.factors_.push_back(a.factors_[i]);
  for (; j < b.factors_.size(); ++j) out.factors_.push_back(b.factors_[j]);
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  if (b.degree_ > a.degree_) return std::nullopt;
  Monomial out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (j < b.factors_.size()) {
    if (i == a.factors_.size()) return std::nullopt;
    const int c = compare_atoms(*a.factors_[i].atom, *b.factors_[j].atom);
    if (c < 0) {
      out.factors_.push_back(a.factors_[i++]);
    } else if (c > 0) {
      return std::nullopt;
    } else {
      const int e = a.factors_[i].exponent - b.factors_[j].exponent;
      if (e < 0) return std::nullopt;
      if (e > 0) out.factors_.push_back({a.factors_[i].atom, e});
      ++i;
      ++j;
    }
  }
  for (; i < a.factors_.size(); ++i) out.factors_.push_back(a.factors_[i]);
  out.degree_ = a.degree_ - b.degree_;
  return out;
}

Monomial Monomial::without(const Atom& atom) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (compare_atoms(*f.atom, atom) == 0) continue;
    out.factors_.push_back(f);
    out.degree_ += f.exponent;
  }
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ > b.degree_ ? 1 : -1;
  std::size_t i = 0;
  for (; i < a.factors_.size() && i < b.factors_.size(); ++i) {
    const int c = compare_atoms(*a.factors_[i].atom, *b.factors_[i].atom);
    if (c != 0) return c < 0 ? 1 : -1;
    if (a.factors_[i].exponent != b.factors_[i].exponent) {
      return a.factors_[i].exponent > b.factors_[i].exponent ? 1 : -1;
    }
  }
  if (i < a.factors_.size()) return 1;
  if (i < b.factors_.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  assert(!terms_.empty());
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  assert(!terms_.empty());
  return terms_.begin()->second;
}

std::vector<AtomPtr> Polynomial::atoms() const {
  std::vector<AtomPtr> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](const AtomPtr& a) {
        return compare_atoms(*a, *f.atom) == 0;
      });
      if (!seen) out.push_back(f.atom);
    }
  }
  std::sort(out.begin(), out.end(), [](const AtomPtr& a, const AtomPtr& b) {
    return compare_atoms(*a, *b) < 0;
  });
  return out;
}

bool Polynomial::contains(const Atom& atom) const {
  for (const auto& [m, c] : terms_) {
    if (m.exponent_of(atom) > 0) return true;
  }
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial out = *this;
  for (auto& [m, coeff] : out.terms_) coeff *= c;
  return out;
}

Polynomial Polynomial::pow(int exponent) const {
  assert(exponent >= 0);
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (compare(ia->first, ib->first) != 0 || ia->second != ib->second) {
      return false;
    }
  }
  return true;
}

std::optional<Polynomial> divide_exact(const Polynomial& a,
                                       const Polynomial& b) {
  if (b.is_zero()) throw SymbolicError("polynomial division by zero");
  Polynomial quotient;
  Polynomial rest = a;
  const Monomial& lead = b.leading_monomial();
  const Rational& lead_c = b.leading_coefficient();
  while (!rest.is_zero()) {
    auto m = divide(rest.leading_monomial(), lead);
    if (!m) return std::nullopt;
    const Rational c = rest.leading_coefficient() / lead_c;
    quotient.add_term(*m, c);
    for (const auto& [mb, cb] : b.terms_) rest.add_term(*m * mb, -c * cb);
  }
  return quotient;
}

std::map<int, Polynomial> Polynomial::coefficients_in(const Atom& atom) const {
  std::map<int, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    out[m.exponent_of(atom)].add_term(m.without(atom), c);
  }
  return out;
}

int Polynomial::degree_in(const Atom& atom) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(atom));
  return d;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  const Rational lc = leading_coefficient();
  if (lc == 1) return *this;
  return scaled(1 / lc);
}

// ---------------------------------------------------------------------------
// GCD: recursive primitive polynomial remainder sequences.

namespace {

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  assert(q.has_value());
  return *q;
}

Polynomial content_in(const Polynomial& p, const Atom& v) {
  Polynomial g;
  for (const auto& [k, coeff] : p.coefficients_in(v)) {
    g = gcd(g, coeff);
    if (g.is_constant()) return Polynomial(Rational(1));
  }
  return g;
}

// Scale to integer coefficients with gcd 1 so remainder sequences do not swell.
Polynomial numeric_primitive(const Polynomial& p) {
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& [m, c] : p.terms()) {
    den = lcm(den, mpz_class(c.get_den()));
    num = gcd(num, mpz_class(c.get_num()));
  }
  if (num == 0) return p;
  return p.scaled(Rational(den, num));
}

Polynomial primitive_part(const Polynomial& p, const Atom& v) {
  return numeric_primitive(exact(p, content_in(p, v)));
}

Polynomial leading_coefficient_in(const Polynomial& p, const Atom& v, int deg) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponent_of(v) == deg) out = out + Polynomial(m.without(v), c);
  }
  return out;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b,
                            const AtomPtr& v) {
  const int db = b.degree_in(*v);
  const Polynomial lcb = leading_coefficient_in(b, *v, db);
  Polynomial r = a;
  int dr = r.degree_in(*v);
  while (!r.is_zero() && dr >= db) {
    const Polynomial lcr = leading_coefficient_in(r, *v, dr);
    r = lcb * r - lcr * Polynomial(Monomial(v, dr - db)) * b;
    dr = r.is_zero() ? 0 : r.degree_in(*v);
  }
  return r;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(1));
  if (a == b) return a.monic();
  if (divide(a.leading_monomial(), b.leading_monomial())) {
    if (divide_exact(a, b)) return b.monic();
  }
  if (divide(b.leading_monomial(), a.leading_monomial())) {
    if (divide_exact(b, a)) return a.monic();
  }

  AtomPtr v;
  for (const auto& p : {&a, &b}) {
    for (const auto& atom : p->atoms()) {
      if (!v || compare_atoms(*atom, *v) < 0) v = atom;
      break;  // atoms() is sorted
    }
  }
  const bool in_a = a.contains(*v);
  const bool in_b = b.contains(*v);
  if (!in_a) return gcd(a, content_in(b, *v));
  if (!in_b) return gcd(content_in(a, *v), b);

  const Polynomial ca = content_in(a, *v);
  const Polynomial cb = content_in(b, *v);
  Polynomial pa = numeric_primitive(exact(a, ca));
  Polynomial pb = numeric_primitive(exact(b, cb));
  const Polynomial c = gcd(ca, cb);
  if (pa.degree_in(*v) < pb.degree_in(*v)) std::swap(pa, pb);

  Polynomial g;
  while (true) {
    const Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(*v) == 0) {
      g = Polynomial(Rational(1));
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, *v);
  }
  return (c * g).monic();
}

// ---------------------------------------------------------------------------
// RationalFunction

namespace {

bool needs_rewrite(const Polynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) {
      if (f.exponent < 2 || !f.atom->function) continue;
      if (*f.atom->function == Function::Sin) return true;
      if (*f.atom->function == Function::Sqrt &&
          f.atom->argument.canonical()->denominator().is_constant()) {
        return true;
      }
    }
  }
  return false;
}

Polynomial rewrite_once(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term(Monomial(), c);
    for (const auto& f : m.factors()) {
      const bool sin = f.atom->function && *f.atom->function == Function::Sin;
      const bool sqrt_poly =
          f.atom->function && *f.atom->function == Function::Sqrt &&
          f.atom->argument.canonical()->denominator().is_constant();
      if (f.exponent >= 2 && sin) {
        const auto cos_atom = make_function_atom(Function::Cos, f.atom->argument);
        const Polynomial one_minus_cos2 =
            Polynomial(Rational(1)) - Polynomial(Monomial(cos_atom, 2));
        term = term * Polynomial(Monomial(f.atom, f.exponent % 2)) *
               one_minus_cos2.pow(f.exponent / 2);
      } else if (f.exponent >= 2 && sqrt_poly) {
        const auto arg = f.atom->argument.canonical();
        const Polynomial u = arg->numerator().scaled(
            1 / arg->denominator().constant_term());
        term = term * Polynomial(Monomial(f.atom, f.exponent % 2)) *
               u.pow(f.exponent / 2);
      } else {
        term = term * Polynomial(Monomial(f.atom, f.exponent));
      }
    }
    out = out + term;
  }
  return out;
}

Polynomial rewrite(Polynomial p) {
  while (needs_rewrite(p)) p = rewrite_once(p);
  return p;
}

}  // namespace

RationalFunction::RationalFunction(const Rational& c)
    : num_(c), den_(Rational(1)) {}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Rational(1)) {
  normalize();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw SymbolicError("division by zero");
  normalize();
}

RationalFunction RationalFunction::variable(const std::string& name) {
  return RationalFunction(Polynomial(Monomial(make_variable_atom(name))),
                          Polynomial(Rational(1)), Reduced{});
}

void RationalFunction::normalize() {
  num_ = rewrite(std::move(num_));
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  den_ = rewrite(std::move(den_));
  if (den_.is_zero()) throw SymbolicError("division by zero");
  if (!den_.is_constant()) {
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  const Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw SymbolicError("expression is not constant");
  return num_.constant_term() / den_.constant_term();
}

std::set<std::string> RationalFunction::free_variables() const {
  std::set<std::string> out;
  for (const auto* p : {&num_, &den_}) {
    for (const auto& atom : p->atoms()) {
      out.insert(atom->variables.begin(), atom->variables.end());
    }
  }
  return out;
}

RationalFunction operator+(const RationalFunction& a,
                           const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_constant() && b.den_.is_constant()) {
    return RationalFunction(a.num_ + b.num_, Polynomial(Rational(1)),
                            RationalFunction::Reduced{});
  }
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  const Polynomial g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  const Polynomial ad = exact(a.den_, g);
  const Polynomial bd = exact(b.den_, g);
  return RationalFunction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

RationalFunction operator-(const RationalFunction& a) {
  return RationalFunction(-a.num_, a.den_, RationalFunction::Reduced{});
}

RationalFunction operator-(const RationalFunction& a,
                           const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a,
                           const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_constant() && b.den_.is_constant()) {
    return RationalFunction(a.num_ * b.num_);
  }
  const Polynomial g1 = gcd(a.num_, b.den_);
  const Polynomial g2 = gcd(b.num_, a.den_);
  Polynomial num = exact(a.num_, g1) * exact(b.num_, g2);
  Polynomial den = exact(a.den_, g2) * exact(b.den_, g1);
  if (needs_rewrite(num) || needs_rewrite(den)) {
    return RationalFunction(std::move(num), std::move(den));
  }
  const Rational lc = den.leading_coefficient();
  return RationalFunction(num.scaled(1 / lc), den.scaled(1 / lc),
                          RationalFunction::Reduced{});
}

RationalFunction operator/(const RationalFunction& a,
                           const RationalFunction& b) {
  if (b.is_zero()) throw SymbolicError("division by zero");
  const Rational lc = b.num_.leading_coefficient();
  const RationalFunction inverse(b.den_.scaled(1 / lc), b.num_.scaled(1 / lc),
                                 RationalFunction::Reduced{});
  return a * inverse;
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent < 0) return RationalFunction(Rational(1)) / pow(-exponent);
  RationalFunction result(Rational(1));
  RationalFunction base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

namespace {

RationalFunction function_derivative(Function f, const ScalarExpr& arg) {
  const RationalFunction& u = *arg.canonical();
  switch (f) {
    case Function::Sin:
      return apply_function(Function::Cos, u);
    case Function::Cos:
      return -apply_function(Function::Sin, u);
    case Function::Exp:
      return apply_function(Function::Exp, u);
    case Function::Sqrt:
      return RationalFunction(Rational(1)) /
             (RationalFunction(Rational(2)) * apply_function(Function::Sqrt, u));
    case Function::Ln:
      return RationalFunction(Rational(1)) / u;
  }
  return {};
}

RationalFunction polynomial_derivative(const Polynomial& p,
                                       const std::string& v) {
  Polynomial direct;
  std::vector<std::pair<AtomPtr, Polynomial>> by_function;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) {
      if (!f.atom->variables.count(v)) continue;
      const Monomial rest = m.without(*f.atom) * Monomial(f.atom, f.exponent - 1);
      const Polynomial piece(rest, c * f.exponent);
      if (!f.atom->function) {
        direct = direct + piece;
        continue;
      }
      auto it = std::find_if(by_function.begin(), by_function.end(),
                             [&](const auto& entry) {
                               return compare_atoms(*entry.first, *f.atom) == 0;
                             });
      if (it == by_function.end()) {
        by_function.emplace_back(f.atom, piece);
      } else {
        it->second = it->second + piece;
      }
    }
  }
  RationalFunction out(direct);
  for (const auto& [atom, coeff] : by_function) {
    const RationalFunction inner =
        atom->argument.canonical()->derivative(v);
    if (inner.is_zero()) continue;
    out = out + RationalFunction(coeff) *
                    function_derivative(*atom->function, atom->argument) * inner;
  }
  return out;
}

}  // namespace

RationalFunction RationalFunction::derivative(const std::string& v) const {
  const RationalFunction dn = polynomial_derivative(num_, v);
  if (den_.is_constant()) return dn;
  const RationalFunction dd = polynomial_derivative(den_, v);
  const RationalFunction den(den_, Polynomial(Rational(1)), Reduced{});
  if (dd.is_zero()) return dn / den;
  if (!dn.denominator().is_constant() || !dd.denominator().is_constant()) {
    const RationalFunction num(num_, Polynomial(Rational(1)), Reduced{});
    return (dn * den - num * dd) / (den * den);
  }
  // (n'd - nd')/d^2 with g = gcd(d, d') cancelled up front
  const Polynomial np = dn.numerator().scaled(1 / dn.denominator().constant_term());
  const Polynomial dp = dd.numerator().scaled(1 / dd.denominator().constant_term());
  const Polynomial g = gcd(den_, dp);
  const Polynomial d_g = exact(den_, g);
  Polynomial num = np * d_g - num_ * exact(dp, g);
  Polynomial q = den_ * d_g;
  if (num.is_zero()) return {};
  if (needs_rewrite(num) || needs_rewrite(q)) {
    return RationalFunction(std::move(num), std::move(q));
  }
  // any common factor of num and den divides den_, so cancel against it
  for (Polynomial h = gcd(num, den_); !h.is_constant(); h = gcd(num, den_)) {
    num = exact(num, h);
    q = exact(q, h);
  }
  const Rational lc = q.leading_coefficient();
  return RationalFunction(num.scaled(1 / lc), q.scaled(1 / lc), Reduced{});
}

RationalFunction RationalFunction::substitute(
    const std::map<std::string, RationalFunction>& images) const {
  std::vector<std::pair<AtomPtr, RationalFunction>> cache;
  auto image_of = [&](const AtomPtr& atom) -> const RationalFunction& {
    for (const auto& [a, img] : cache) {
      if (compare_atoms(*a, *atom) == 0) return img;
    }
    RationalFunction img;
    if (!atom->function) {
      auto it = images.find(atom->key);
      img = it != images.end() ? it->second
                               : RationalFunction(Polynomial(Monomial(atom)),
                                                  Polynomial(Rational(1)),
                                                  Reduced{});
    } else {
      img = apply_function(*atom->function,
                           atom->argument.canonical()->substitute(images));
    }
    cache.emplace_back(atom, std::move(img));
    return cache.back().second;
  };
  auto eval = [&](const Polynomial& p) {
    RationalFunction sum;
    for (const auto& [m, c] : p.terms()) {
      RationalFunction term(c);
      for (const auto& f : m.factors()) term = term * image_of(f.atom).pow(f.exponent);
      sum = sum + term;
    }
    return sum;
  };
  if (den_.is_constant()) return eval(num_) / RationalFunction(den_.constant_term());
  return eval(num_) / eval(den_);
}

RationalFunction apply_function(Function f, const RationalFunction& arg) {
  if (arg.is_constant()) {
    const Rational q = arg.constant_value();
    switch (f) {
      case Function::Sin:
        if (q == 0) return Rational(0);
        break;
      case Function::Cos:
      case Function::Exp:
        if (q == 0) return Rational(1);
        break;
      case Function::Ln:
        if (q == 1) return Rational(0);
        break;
      case Function::Sqrt:
        if (q >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) &&
            mpz_perfect_square_p(q.get_den_mpz_t())) {
          mpz_class n;
          mpz_class d;
          mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
          mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
          return Rational(n, d);
        }
        break;
    }
  }
  const AtomPtr atom = make_function_atom(f, ScalarExpr::from_canonical(arg));
  return RationalFunction(Polynomial(Monomial(atom)));
}

}  // namespace supersasaki
