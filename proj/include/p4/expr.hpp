#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace p4 {

using Rational = boost::multiprecision::cpp_rational;

// A point (x1, x2, x3, y).
using Point4 = Eigen::Vector4d;

enum class Var : std::uint8_t { x1 = 0, x2 = 1, x3 = 2, y = 3 };

inline constexpr std::array<Var, 4> kAllVars{Var::x1, Var::x2, Var::x3, Var::y};
inline constexpr std::array<Var, 3> kSpaceVars{Var::x1, Var::x2, Var::x3};

std::string_view name(Var v);
inline int index(Var v) { return static_cast<int>(v); }

enum class Fn : std::uint8_t { sin, cos, exp, ln, sqrt };

std::string_view name(Fn f);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class Expr {
 public:
  enum class Kind : std::uint8_t { constant, variable, add, mul, div, pow, neg, function };

  Expr();
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(Var v);  // NOLINT(google-explicit-constructor)

  // Raw node constructors, no rewriting.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(Expr num, Expr den);
  static Expr power(Expr base, int exponent);
  static Expr negation(Expr inner);
  static Expr apply(Fn f, Expr arg);

  Kind kind() const;
  const Rational& value() const;
  double approx() const;
  Var variable() const;
  Fn function() const;
  int exponent() const;
  std::span<const Expr> operands() const;
  const Expr& operand(std::size_t i) const { return operands()[i]; }

  bool is_constant() const { return kind() == Kind::constant; }
  bool is_zero() const;
  bool is_one() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Structural total order: negative, zero or positive.
int compare(const Expr& a, const Expr& b);

// Arithmetic with light folding (constants, 0 and 1, double negation).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);
Expr& operator/=(Expr& a, const Expr& b);

Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sqrt(const Expr& e);

Expr parse(std::string_view text);
std::string render(const Expr& e);

double eval(const Expr& e, const Point4& p);

struct ScaledValue {
  double value = 0.0;
  // Largest absolute additive term met during evaluation.
  double scale = 0.0;
};
ScaledValue eval_scaled(const Expr& e, const Point4& p);

Expr diff(const Expr& e, Var v);
Expr simplify(const Expr& e);
Expr substitute(const Expr& e, const std::array<Expr, 4>& values);
bool depends_on(const Expr& e, Var v);

// Nearest rational with denominator at most max_den.
Rational nearest_rational(const Rational& r, std::int64_t max_den = 1000000);
Rational nearest_rational(double x, std::int64_t max_den = 1000000);

}  // namespace p4

namespace Eigen {
template <>
struct NumTraits<p4::Expr> : GenericNumTraits<p4::Expr> {
  using Real = p4::Expr;
  using NonInteger = p4::Expr;
  using Nested = p4::Expr;
  using Literal = p4::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
};
}  // namespace Eigen
