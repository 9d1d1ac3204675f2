#include "supersasaki/symexpr.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <utility>

#include "supersasaki/polynomial.hpp"

namespace supersasaki {

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Ln: return "ln";
  }
  return "?";
}

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      offset_(offset) {}

// A node is either a tree node (kind + fields) or a canonical holder whose
// tree is materialized on first access.
struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  Rational value;
  std::string name;
  Function function = Function::Sin;
  int exponent = 0;
  // Null handles until assigned; a default ScalarExpr would recurse into
  // zero_node() during its own initialization.
  ScalarExpr a{std::shared_ptr<const ExprNode>()};
  ScalarExpr b{std::shared_ptr<const ExprNode>()};

  bool holder = false;
  std::shared_ptr<const RationalFunction> canon;
  mutable std::once_flag tree_once;
  mutable std::shared_ptr<const ExprNode> tree;
};

namespace {

std::shared_ptr<ExprNode> make_node(NodeKind kind) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  return n;
}

std::shared_ptr<const ExprNode> make_holder(RationalFunction value) {
  auto n = std::make_shared<ExprNode>();
  n->holder = true;
  n->canon = std::make_shared<const RationalFunction>(std::move(value));
  return n;
}

const std::shared_ptr<const ExprNode>& zero_node() {
  static const std::shared_ptr<const ExprNode> zero =
      make_holder(RationalFunction());
  return zero;
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonical value -> tree

namespace {

ScalarExpr atom_tree(const Atom& atom) {
  if (!atom.function) return ScalarExpr::variable(atom.key);
  return ScalarExpr::raw_call(*atom.function, atom.argument);
}

ScalarExpr monomial_tree(const Monomial& m, const Rational& coefficient = 1) {
  ScalarExpr out;
  bool first = true;
  if (coefficient != 1) {
    out = ScalarExpr::raw_constant(coefficient);
    first = false;
  }
  for (const auto& f : m.factors()) {
    ScalarExpr factor = atom_tree(*f.atom);
    if (f.exponent != 1) factor = ScalarExpr::raw_power(factor, f.exponent);
    out = first ? factor : ScalarExpr::raw_product(out, factor);
    first = false;
  }
  return out;
}

ScalarExpr polynomial_tree(const Polynomial& p) {
  if (p.is_zero()) return ScalarExpr::raw_constant(0);
  ScalarExpr out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const Rational magnitude = abs(c);
    ScalarExpr term;
    if (m.is_one()) {
      term = ScalarExpr::raw_constant(magnitude);
    } else if (magnitude == 1) {
      term = monomial_tree(m);
    } else {
      term = monomial_tree(m, magnitude);
    }
    if (first) {
      out = c < 0 ? ScalarExpr::raw_negation(term) : term;
      first = false;
    } else {
      out = c < 0 ? ScalarExpr::raw_difference(out, term)
                  : ScalarExpr::raw_sum(out, term);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarExpr

ScalarExpr::ScalarExpr() : node_(zero_node()) {}
ScalarExpr::ScalarExpr(int value) : ScalarExpr(Rational(value)) {}
ScalarExpr::ScalarExpr(const Rational& value)
    : node_(value == 0 ? zero_node() : make_holder(RationalFunction(value))) {}
ScalarExpr::ScalarExpr(std::shared_ptr<const ExprNode> node)
    : node_(std::move(node)) {}

ScalarExpr ScalarExpr::variable(const std::string& name) {
  if (name.empty()) throw SymbolicError("empty variable name");
  auto n = make_node(NodeKind::Variable);
  n->name = name;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_constant(const Rational& value) {
  auto n = make_node(NodeKind::Constant);
  n->value = value;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_sum(const ScalarExpr& a, const ScalarExpr& b) {
  auto n = make_node(NodeKind::Sum);
  n->a = a;
  n->b = b;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_difference(const ScalarExpr& a, const ScalarExpr& b) {
  auto n = make_node(NodeKind::Difference);
  n->a = a;
  n->b = b;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_product(const ScalarExpr& a, const ScalarExpr& b) {
  auto n = make_node(NodeKind::Product);
  n->a = a;
  n->b = b;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_quotient(const ScalarExpr& a, const ScalarExpr& b) {
  auto n = make_node(NodeKind::Quotient);
  n->a = a;
  n->b = b;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_power(const ScalarExpr& base, int exponent) {
  auto n = make_node(NodeKind::Power);
  n->a = base;
  n->exponent = exponent;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_negation(const ScalarExpr& a) {
  auto n = make_node(NodeKind::Negation);
  n->a = a;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::raw_call(Function f, const ScalarExpr& arg) {
  auto n = make_node(NodeKind::Call);
  n->function = f;
  n->a = arg;
  return ScalarExpr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ScalarExpr ScalarExpr::from_canonical(RationalFunction value) {
  if (value.is_zero()) return ScalarExpr();
  return ScalarExpr(make_holder(std::move(value)));
}

const ExprNode& ScalarExpr::tree() const {
  const ExprNode& n = *node_;
  if (!n.holder) return n;
  std::call_once(n.tree_once, [&n] {
    const RationalFunction& rf = *n.canon;
    ScalarExpr t;
    if (rf.is_constant()) {
      t = raw_constant(rf.constant_value());
    } else if (rf.denominator().is_constant()) {
      t = polynomial_tree(rf.numerator());
    } else {
      t = raw_quotient(polynomial_tree(rf.numerator()),
                       polynomial_tree(rf.denominator()));
    }
    n.tree = t.node_;
  });
  return *n.tree;
}

NodeKind ScalarExpr::kind() const { return tree().kind; }
const Rational& ScalarExpr::value() const { return tree().value; }
const std::string& ScalarExpr::name() const { return tree().name; }
Function ScalarExpr::function() const { return tree().function; }
int ScalarExpr::exponent() const { return tree().exponent; }
const ScalarExpr& ScalarExpr::lhs() const { return tree().a; }
const ScalarExpr& ScalarExpr::rhs() const { return tree().b; }
const ScalarExpr& ScalarExpr::operand() const { return tree().a; }

bool ScalarExpr::is_canonical() const { return node_->canon != nullptr; }

namespace {

RationalFunction to_canonical(const ScalarExpr& e) {
  if (e.is_canonical()) return *e.canonical();
  switch (e.kind()) {
    case NodeKind::Constant: return RationalFunction(e.value());
    case NodeKind::Variable: return RationalFunction::variable(e.name());
    case NodeKind::Sum: return to_canonical(e.lhs()) + to_canonical(e.rhs());
    case NodeKind::Difference:
      return to_canonical(e.lhs()) - to_canonical(e.rhs());
    case NodeKind::Product:
      return to_canonical(e.lhs()) * to_canonical(e.rhs());
    case NodeKind::Quotient:
      return to_canonical(e.lhs()) / to_canonical(e.rhs());
    case NodeKind::Power: return to_canonical(e.lhs()).pow(e.exponent());
    case NodeKind::Negation: return -to_canonical(e.operand());
    case NodeKind::Call:
      return apply_function(e.function(), to_canonical(e.operand()));
  }
  return {};
}

}  // namespace

std::shared_ptr<const RationalFunction> ScalarExpr::canonical() const {
  if (node_->canon) return node_->canon;
  return std::make_shared<const RationalFunction>(to_canonical(*this));
}

bool ScalarExpr::is_zero() const { return canonical()->is_zero(); }
bool ScalarExpr::is_constant() const { return canonical()->is_constant(); }
Rational ScalarExpr::constant_value() const {
  return canonical()->constant_value();
}

std::set<std::string> ScalarExpr::free_variables() const {
  if (is_canonical()) return node_->canon->free_variables();
  std::set<std::string> out;
  switch (kind()) {
    case NodeKind::Constant: break;
    case NodeKind::Variable: out.insert(name()); break;
    case NodeKind::Sum:
    case NodeKind::Difference:
    case NodeKind::Product:
    case NodeKind::Quotient: {
      out = lhs().free_variables();
      auto r = rhs().free_variables();
      out.insert(r.begin(), r.end());
      break;
    }
    case NodeKind::Power:
    case NodeKind::Negation:
    case NodeKind::Call: out = operand().free_variables(); break;
  }
  return out;
}

bool ScalarExpr::depends_on(const std::string& variable) const {
  return free_variables().count(variable) > 0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kSumLevel = 1;
constexpr int kProductLevel = 2;
constexpr int kNegationLevel = 3;
constexpr int kPowerLevel = 4;
constexpr int kAtomLevel = 5;

int level_of(const ScalarExpr& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
      if (e.value().get_den() != 1) return kProductLevel;
      return e.value() < 0 ? kNegationLevel : kAtomLevel;
    case NodeKind::Variable:
    case NodeKind::Call: return kAtomLevel;
    case NodeKind::Sum:
    case NodeKind::Difference: return kSumLevel;
    case NodeKind::Product:
    case NodeKind::Quotient: return kProductLevel;
    case NodeKind::Negation: return kNegationLevel;
    case NodeKind::Power: return kPowerLevel;
  }
  return kAtomLevel;
}

// "-x^2" reads as (-x)^2 under the grammar, so a negation whose leftmost
// factor is a power (or anything not starting with a plain base) is
// parenthesized.
bool safe_after_unary_minus(const ScalarExpr& e) {
  switch (e.kind()) {
    case NodeKind::Variable:
    case NodeKind::Call: return true;
    case NodeKind::Constant: return e.value() >= 0;
    case NodeKind::Product:
    case NodeKind::Quotient: return safe_after_unary_minus(e.lhs());
    default: return false;
  }
}

void print(std::ostream& os, const ScalarExpr& e, int min_level) {
  const bool parens = level_of(e) < min_level;
  if (parens) os << '(';
  switch (e.kind()) {
    case NodeKind::Constant: os << e.value().get_str(); break;
    case NodeKind::Variable: os << e.name(); break;
    case NodeKind::Sum:
      print(os, e.lhs(), kSumLevel);
      os << " + ";
      print(os, e.rhs(), kProductLevel);
      break;
    case NodeKind::Difference:
      print(os, e.lhs(), kSumLevel);
      os << " - ";
      print(os, e.rhs(), kProductLevel);
      break;
    case NodeKind::Product:
      print(os, e.lhs(), kProductLevel);
      os << '*';
      print(os, e.rhs(), kPowerLevel);
      break;
    case NodeKind::Quotient:
      print(os, e.lhs(), kProductLevel);
      os << '/';
      print(os, e.rhs(), kPowerLevel);
      break;
    case NodeKind::Negation:
      os << '-';
      if (safe_after_unary_minus(e.operand())) {
        print(os, e.operand(), kProductLevel);
      } else {
        os << '(';
        print(os, e.operand(), kSumLevel);
        os << ')';
      }
      break;
    case NodeKind::Power:
      print(os, e.lhs(), kAtomLevel);
      os << '^' << e.exponent();
      break;
    case NodeKind::Call:
      os << function_name(e.function()) << '(';
      print(os, e.operand(), kSumLevel);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

}  // namespace

std::string ScalarExpr::str() const {
  std::ostringstream os;
  print(os, *this, kSumLevel);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ScalarExpr& e) {
  return os << e.str();
}

// ---------------------------------------------------------------------------
// Canonical arithmetic

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_canonical(*a.canonical() + *b.canonical());
}
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_canonical(*a.canonical() - *b.canonical());
}
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_canonical(*a.canonical() * *b.canonical());
}
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_canonical(*a.canonical() / *b.canonical());
}
ScalarExpr operator-(const ScalarExpr& a) {
  return ScalarExpr::from_canonical(-*a.canonical());
}

bool canonical_equal(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.node_ == b.node_) return true;
  return *a.canonical() == *b.canonical();
}

ScalarExpr pow(const ScalarExpr& base, int exponent) {
  return ScalarExpr::from_canonical(base.canonical()->pow(exponent));
}

ScalarExpr apply(Function f, const ScalarExpr& arg) {
  return ScalarExpr::from_canonical(apply_function(f, *arg.canonical()));
}

ScalarExpr simplify(const ScalarExpr& e) {
  if (e.is_canonical()) return e;
  return ScalarExpr::from_canonical(*e.canonical());
}

ScalarExpr differentiate(const ScalarExpr& e, const std::string& variable) {
  return ScalarExpr::from_canonical(e.canonical()->derivative(variable));
}

ScalarExpr substitute(const ScalarExpr& e,
                      const std::map<std::string, ScalarExpr>& images) {
  std::map<std::string, RationalFunction> rf;
  for (const auto& [name, img] : images) rf.emplace(name, *img.canonical());
  return ScalarExpr::from_canonical(e.canonical()->substitute(rf));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>* vocabulary)
      : text_(text), vocabulary_(vocabulary) {}

  ScalarExpr parse() {
    ScalarExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarExpr expr() {
    ScalarExpr e = term();
    while (true) {
      if (accept('+')) {
        e = ScalarExpr::raw_sum(e, term());
      } else if (accept('-')) {
        e = ScalarExpr::raw_difference(e, term());
      } else {
        return e;
      }
    }
  }

  ScalarExpr term() {
    ScalarExpr e = factor();
    while (true) {
      if (accept('*')) {
        e = ScalarExpr::raw_product(e, factor());
      } else if (accept('/')) {
        e = ScalarExpr::raw_quotient(e, factor());
      } else {
        return e;
      }
    }
  }

  ScalarExpr factor() {
    ScalarExpr b = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
      }
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) {
        pos_ = start;
        fail("expected integer exponent");
      }
      const std::string s(text_.substr(digits, pos_ - digits));
      if (s.size() > 6) {
        pos_ = start;
        fail("exponent too large");
      }
      const int k = std::stoi(s);
      b = ScalarExpr::raw_power(b, negative ? -k : k);
    }
    return b;
  }

  ScalarExpr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return ScalarExpr::raw_negation(base());
    }
    if (c == '(') {
      ++pos_;
      ScalarExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ScalarExpr number() {
    const std::size_t start = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
    }
    std::string fraction;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fraction += text_[pos_++];
      }
    }
    if (digits.empty() && fraction.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    mpz_class num(digits.empty() ? std::string("0") : digits + fraction);
    mpz_class den = 1;
    for (std::size_t i = 0; i < fraction.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return ScalarExpr::raw_constant(q);
  }

  ScalarExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id(text_.substr(start, pos_ - start));
    static const std::map<std::string, Function> functions = {
        {"sin", Function::Sin}, {"cos", Function::Cos}, {"exp", Function::Exp},
        {"sqrt", Function::Sqrt}, {"ln", Function::Ln}};
    if (auto it = functions.find(id); it != functions.end()) {
      if (!accept('(')) fail("expected '(' after " + id);
      ScalarExpr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return ScalarExpr::raw_call(it->second, arg);
    }
    if (vocabulary_ && !vocabulary_->count(id)) {
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    return ScalarExpr::variable(id);
  }

  std::string_view text_;
  const std::set<std::string>* vocabulary_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse_expr(std::string_view text,
                      const std::set<std::string>& vocabulary) {
  return Parser(text, &vocabulary).parse();
}

ScalarExpr parse_expr(std::string_view text) {
  return Parser(text, nullptr).parse();
}

// ---------------------------------------------------------------------------
// Numeric evaluation and the equality oracle

namespace {

double eval(const ScalarExpr& e, const Assignment& at) {
  switch (e.kind()) {
    case NodeKind::Constant: return e.value().get_d();
    case NodeKind::Variable: {
      auto it = at.find(e.name());
      if (it == at.end()) throw EvaluationError("unbound variable '" + e.name() + "'");
      return it->second;
    }
    case NodeKind::Sum: return eval(e.lhs(), at) + eval(e.rhs(), at);
    case NodeKind::Difference: return eval(e.lhs(), at) - eval(e.rhs(), at);
    case NodeKind::Product: return eval(e.lhs(), at) * eval(e.rhs(), at);
    case NodeKind::Quotient: {
      const double num = eval(e.lhs(), at);
      const double den = eval(e.rhs(), at);
      if (den == 0.0) throw EvaluationError("division by zero");
      return num / den;
    }
    case NodeKind::Power: {
      const double b = eval(e.lhs(), at);
      if (e.exponent() < 0 && b == 0.0) throw EvaluationError("division by zero");
      return std::pow(b, e.exponent());
    }
    case NodeKind::Negation: return -eval(e.operand(), at);
    case NodeKind::Call: {
      const double x = eval(e.operand(), at);
      switch (e.function()) {
        case Function::Sin: return std::sin(x);
        case Function::Cos: return std::cos(x);
        case Function::Exp: return std::exp(x);
        case Function::Sqrt:
          if (x < 0.0) throw EvaluationError("sqrt of a negative value");
          return std::sqrt(x);
        case Function::Ln:
          if (x <= 0.0) throw EvaluationError("ln of a non-positive value");
          return std::log(x);
      }
    }
  }
  return 0.0;
}

}  // namespace

double eval_numeric(const ScalarExpr& e, const Assignment& at) {
  const double v = eval(e, at);
  if (!std::isfinite(v)) throw EvaluationError("non-finite value");
  return v;
}

Assignment draw_sample(const std::set<std::string>& variables,
                       const EqualityOptions& options, std::mt19937_64& rng) {
  Assignment at;
  for (const auto& v : variables) {
    auto it = options.domain.find(v);
    const Interval iv = it == options.domain.end() ? options.fallback : it->second;
    at[v] = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
  }
  return at;
}

bool expr_equal(const ScalarExpr& a, const ScalarExpr& b,
                const EqualityOptions& options) {
  if (options.samples < 1 || !(options.tol > 0)) {
    throw std::invalid_argument("expr_equal needs samples >= 1 and tol > 0");
  }
  if ((a - b).is_zero()) return true;

  std::set<std::string> vars = a.free_variables();
  for (const auto& v : b.free_variables()) vars.insert(v);

  std::mt19937_64 rng(options.seed);
  const std::size_t max_attempts = options.samples * 20 + 100;
  std::size_t valid = 0;
  std::size_t attempts = 0;
  while (valid < options.samples) {
    if (attempts++ >= max_attempts) {
      throw EvaluationError("sample domain exhausted: no valid evaluation point");
    }
    const Assignment at = draw_sample(vars, options, rng);
    double va = 0.0;
    double vb = 0.0;
    try {
      va = eval_numeric(a, at);
      vb = eval_numeric(b, at);
    } catch (const EvaluationError&) {
      continue;
    }
    const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
    if (std::abs(va - vb) > options.tol * scale) return false;
    ++valid;
  }
  return true;
}

bool expr_is_zero(const ScalarExpr& e, const EqualityOptions& options) {
  return expr_equal(e, ScalarExpr(0), options);
}

}  // namespace supersasaki
