#include "p4/expr.hpp"

#include <cmath>
#include <sstream>

namespace p4 {

std::string_view name(Var v) {
  switch (v) {
    case Var::x1: return "x1";
    case Var::x2: return "x2";
    case Var::x3: return "x3";
    case Var::y: return "y";
  }
  return "?";
}

std::string_view name(Fn f) {
  switch (f) {
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::exp: return "exp";
    case Fn::ln: return "ln";
    case Fn::sqrt: return "sqrt";
  }
  return "?";
}

ParseError::ParseError(const std::string& what, std::size_t offset)
    : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

struct Expr::Node {
  Kind kind = Kind::constant;
  Rational value;
  double approx = 0.0;
  Var var = Var::x1;
  Fn fn = Fn::sin;
  int exponent = 0;
  std::vector<Expr> args;
};

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr() {
  static const auto zero = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = 0;
    return std::shared_ptr<const Node>(n);
  }();
  node_ = zero;
}

Expr::Expr(int value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  n->approx = value;
  node_ = n;
}

Expr::Expr(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  n->approx = value.convert_to<double>();
  node_ = n;
}

Expr::Expr(Var v) {
  static const std::array<std::shared_ptr<const Node>, 4> vars = [] {
    std::array<std::shared_ptr<const Node>, 4> out;
    for (Var w : kAllVars) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::variable;
      n->var = w;
      out[index(w)] = n;
    }
    return out;
  }();
  node_ = vars[index(v)];
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::add;
  n->args = std::move(terms);
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::mul;
  n->args = std::move(factors);
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::quotient(Expr num, Expr den) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::div;
  n->args = {std::move(num), std::move(den)};
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->exponent = exponent;
  n->args = {std::move(base)};
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::negation(Expr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::neg;
  n->args = {std::move(inner)};
  return Expr(std::shared_ptr<const Node>(n));
}

Expr Expr::apply(Fn f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::function;
  n->fn = f;
  n->args = {std::move(arg)};
  return Expr(std::shared_ptr<const Node>(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
double Expr::approx() const { return node_->approx; }
Var Expr::variable() const { return node_->var; }
Fn Expr::function() const { return node_->fn; }
int Expr::exponent() const { return node_->exponent; }
std::span<const Expr> Expr::operands() const { return node_->args; }

bool Expr::is_zero() const { return kind() == Kind::constant && value() == 0; }
bool Expr::is_one() const { return kind() == Kind::constant && value() == 1; }

bool operator==(const Expr& a, const Expr& b) {
  return a.node_ == b.node_ || compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::constant:
      return a.value() < b.value() ? -1 : (b.value() < a.value() ? 1 : 0);
    case Expr::Kind::variable:
      return index(a.variable()) - index(b.variable());
    case Expr::Kind::function:
      if (a.function() != b.function()) return a.function() < b.function() ? -1 : 1;
      break;
    case Expr::Kind::pow:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      break;
    default:
      break;
  }
  auto xs = a.operands();
  auto ys = b.operands();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  }
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  return 0;
}

namespace {

void append_flat(std::vector<Expr>& out, const Expr& e, Expr::Kind kind) {
  if (e.kind() == kind) {
    for (const Expr& x : e.operands()) out.push_back(x);
  } else {
    out.push_back(e);
  }
}

Rational rational_power(const Rational& base, int n) {
  Rational out = 1;
  Rational b = n < 0 ? Rational(1) / base : base;
  for (int i = 0; i < std::abs(n); ++i) out *= b;
  return out;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr(Rational(a.value() + b.value()));
  std::vector<Expr> terms;
  append_flat(terms, a, Expr::Kind::add);
  append_flat(terms, b, Expr::Kind::add);
  return Expr::sum(std::move(terms));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(Rational(-a.value()));
  if (a.kind() == Expr::Kind::neg) return a.operand(0);
  return Expr::negation(a);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return Expr(Rational(a.value() * b.value()));
  std::vector<Expr> factors;
  append_flat(factors, a, Expr::Kind::mul);
  append_flat(factors, b, Expr::Kind::mul);
  return Expr::product(std::move(factors));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one()) return a;
  if (b.is_zero()) return Expr::quotient(a, b);
  if (a.is_zero()) return Expr();
  if (a.is_constant() && b.is_constant()) return Expr(Rational(a.value() / b.value()));
  return Expr::quotient(a, b);
}

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }
Expr& operator/=(Expr& a, const Expr& b) { return a = a / b; }

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.is_zero() && exponent < 0)) {
    return Expr(rational_power(base.value(), exponent));
  }
  return Expr::power(base, exponent);
}

Expr sin(const Expr& e) { return Expr::apply(Fn::sin, e); }
Expr cos(const Expr& e) { return Expr::apply(Fn::cos, e); }
Expr exp(const Expr& e) { return Expr::apply(Fn::exp, e); }
Expr ln(const Expr& e) { return Expr::apply(Fn::ln, e); }
Expr sqrt(const Expr& e) { return Expr::apply(Fn::sqrt, e); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

enum Prec { kSum = 1, kTerm = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      if (e.value() < 0) return kUnary;
      return denominator(e.value()) == 1 ? kAtom : kTerm;
    case Expr::Kind::variable:
    case Expr::Kind::function:
      return kAtom;
    case Expr::Kind::add:
      return kSum;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return kTerm;
    case Expr::Kind::neg:
      return kUnary;
    case Expr::Kind::pow:
      return kPower;
  }
  return kAtom;
}

void render_to(std::string& out, const Expr& e);

void render_wrapped(std::string& out, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    out += '(';
    render_to(out, e);
    out += ')';
  } else {
    render_to(out, e);
  }
}

// For a term inside a sum: returns the positive counterpart if the term
// reads as a negative quantity.
bool split_negative(const Expr& t, Expr& positive) {
  if (t.kind() == Expr::Kind::neg) {
    positive = t.operand(0);
    return true;
  }
  if (t.is_constant() && t.value() < 0) {
    positive = Expr(Rational(-t.value()));
    return true;
  }
  if (t.kind() == Expr::Kind::mul && t.operand(0).is_constant() && t.operand(0).value() < 0) {
    std::vector<Expr> rest(t.operands().begin(), t.operands().end());
    rest[0] = Expr(Rational(-rest[0].value()));
    if (rest[0].is_one()) rest.erase(rest.begin());
    positive = Expr::product(std::move(rest));
    return true;
  }
  return false;
}

void render_to(std::string& out, const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      out += rational_text(e.value());
      return;
    case Expr::Kind::variable:
      out += name(e.variable());
      return;
    case Expr::Kind::function:
      out += name(e.function());
      out += '(';
      render_to(out, e.operand(0));
      out += ')';
      return;
    case Expr::Kind::add: {
      bool first = true;
      for (const Expr& t : e.operands()) {
        Expr positive;
        if (first) {
          render_wrapped(out, t, kSum);
        } else if (split_negative(t, positive)) {
          out += " - ";
          render_wrapped(out, positive, kTerm);
        } else {
          out += " + ";
          render_wrapped(out, t, kTerm);
        }
        first = false;
      }
      return;
    }
    case Expr::Kind::mul: {
      bool first = true;
      for (const Expr& f : e.operands()) {
        if (!first) out += '*';
        // Later factors must not absorb a trailing division.
        render_wrapped(out, f, first ? kTerm : kUnary);
        first = false;
      }
      return;
    }
    case Expr::Kind::div:
      render_wrapped(out, e.operand(0), kTerm);
      out += '/';
      render_wrapped(out, e.operand(1), kUnary);
      return;
    case Expr::Kind::neg:
      out += '-';
      render_wrapped(out, e.operand(0), kTerm);
      return;
    case Expr::Kind::pow:
      render_wrapped(out, e.operand(0), kAtom);
      out += '^';
      out += std::to_string(e.exponent());
      return;
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_to(out, e);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr double kPoleTolerance = 1e-12;

[[noreturn]] void domain_error(const std::string& what, const Expr& e, const Point4& p) {
  std::ostringstream os;
  os << what << " in '" << render(e) << "' at (" << p[0] << ", " << p[1] << ", " << p[2] << ", "
     << p[3] << ")";
  throw DomainError(os.str());
}

double eval_node(const Expr& e, const Point4& p, double& scale) {
  double v = 0.0;
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e.approx();
    case Expr::Kind::variable:
      return p[index(e.variable())];
    case Expr::Kind::add:
      for (const Expr& t : e.operands()) {
        double tv = eval_node(t, p, scale);
        scale = std::max(scale, std::abs(tv));
        v += tv;
      }
      break;
    case Expr::Kind::mul:
      v = 1.0;
      for (const Expr& f : e.operands()) v *= eval_node(f, p, scale);
      break;
    case Expr::Kind::div: {
      double num = eval_node(e.operand(0), p, scale);
      double den = eval_node(e.operand(1), p, scale);
      if (std::abs(den) < kPoleTolerance) domain_error("division by zero", e, p);
      v = num / den;
      break;
    }
    case Expr::Kind::neg:
      return -eval_node(e.operand(0), p, scale);
    case Expr::Kind::pow: {
      double b = eval_node(e.operand(0), p, scale);
      if (e.exponent() < 0 && std::abs(b) < kPoleTolerance) domain_error("pole", e, p);
      v = std::pow(b, e.exponent());
      break;
    }
    case Expr::Kind::function: {
      double a = eval_node(e.operand(0), p, scale);
      switch (e.function()) {
        case Fn::sin: v = std::sin(a); break;
        case Fn::cos: v = std::cos(a); break;
        case Fn::exp: v = std::exp(a); break;
        case Fn::ln:
          if (a <= 0.0) domain_error("ln of non-positive value", e, p);
          v = std::log(a);
          break;
        case Fn::sqrt:
          if (a < 0.0) domain_error("sqrt of negative value", e, p);
          v = std::sqrt(a);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) domain_error("non-finite value", e, p);
  return v;
}

}  // namespace

ScaledValue eval_scaled(const Expr& e, const Point4& p) {
  ScaledValue out;
  out.value = eval_node(e, p, out.scale);
  return out;
}

double eval(const Expr& e, const Point4& p) { return eval_scaled(e, p).value; }

// ---------------------------------------------------------------------------
// Differentiation and substitution

namespace {

Expr raw_diff(const Expr& e, Var v) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return Expr();
    case Expr::Kind::variable:
      return e.variable() == v ? Expr(1) : Expr();
    case Expr::Kind::add: {
      Expr out;
      for (const Expr& t : e.operands()) out += raw_diff(t, v);
      return out;
    }
    case Expr::Kind::mul: {
      Expr out;
      auto fs = e.operands();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr d = raw_diff(fs[i], v);
        if (d.is_zero()) continue;
        Expr term = d;
        for (std::size_t j = 0; j < fs.size(); ++j) {
          if (j != i) term *= fs[j];
        }
        out += term;
      }
      return out;
    }
    case Expr::Kind::div: {
      const Expr& n = e.operand(0);
      const Expr& d = e.operand(1);
      Expr dn = raw_diff(n, v);
      Expr dd = raw_diff(d, v);
      return dn / d - n * dd / pow(d, 2);
    }
    case Expr::Kind::neg:
      return -raw_diff(e.operand(0), v);
    case Expr::Kind::pow: {
      const Expr& b = e.operand(0);
      int n = e.exponent();
      Expr db = raw_diff(b, v);
      if (db.is_zero()) return Expr();
      return Expr(n) * pow(b, n - 1) * db;
    }
    case Expr::Kind::function: {
      const Expr& a = e.operand(0);
      Expr da = raw_diff(a, v);
      if (da.is_zero()) return Expr();
      switch (e.function()) {
        case Fn::sin: return cos(a) * da;
        case Fn::cos: return -(sin(a) * da);
        case Fn::exp: return e * da;
        case Fn::ln: return da / a;
        case Fn::sqrt: return da / (Expr(2) * e);
      }
    }
  }
  return Expr();
}

}  // namespace

Expr diff(const Expr& e, Var v) { return simplify(raw_diff(e, v)); }

Expr substitute(const Expr& e, const std::array<Expr, 4>& values) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e;
    case Expr::Kind::variable:
      return values[index(e.variable())];
    case Expr::Kind::add: {
      Expr out;
      for (const Expr& t : e.operands()) out += substitute(t, values);
      return out;
    }
    case Expr::Kind::mul: {
      Expr out(1);
      for (const Expr& f : e.operands()) out *= substitute(f, values);
      return out;
    }
    case Expr::Kind::div:
      return substitute(e.operand(0), values) / substitute(e.operand(1), values);
    case Expr::Kind::neg:
      return -substitute(e.operand(0), values);
    case Expr::Kind::pow:
      return pow(substitute(e.operand(0), values), e.exponent());
    case Expr::Kind::function:
      return Expr::apply(e.function(), substitute(e.operand(0), values));
  }
  return e;
}

bool depends_on(const Expr& e, Var v) {
  if (e.kind() == Expr::Kind::variable) return e.variable() == v;
  for (const Expr& x : e.operands()) {
    if (depends_on(x, v)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rational approximation (continued fractions, best approximation with
// bounded denominator).

Rational nearest_rational(const Rational& r, std::int64_t max_den) {
  using boost::multiprecision::cpp_int;
  if (denominator(r) <= max_den) return r;
  const bool negative = r < 0;
  const Rational target = negative ? Rational(-r) : r;
  cpp_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  cpp_int n = numerator(target), d = denominator(target);
  while (true) {
    cpp_int a = n / d;
    cpp_int q2 = q0 + a * q1;
    if (q2 > max_den) break;
    cpp_int p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    cpp_int rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  cpp_int k = (cpp_int(max_den) - q0) / q1;
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  Rational e1 = bound1 - target;
  Rational e2 = bound2 - target;
  if (e1 < 0) e1 = -e1;
  if (e2 < 0) e2 = -e2;
  Rational best = e2 <= e1 ? bound2 : bound1;
  return negative ? Rational(-best) : best;
}

Rational nearest_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational approximation");
  return nearest_rational(Rational(x), max_den);
}

}  // namespace p4
