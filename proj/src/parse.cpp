#include <cctype>

#include "p4/expr.hpp"

namespace p4 {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr out = term();
    std::vector<Expr> terms{out};
    bool chained = false;
    while (true) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::negation(term()));
      } else {
        break;
      }
      chained = true;
    }
    return chained ? Expr::sum(std::move(terms)) : out;
  }

  Expr term() {
    Expr out = unary();
    while (true) {
      if (accept('*')) {
        Expr rhs = unary();
        out = Expr::product({out, rhs});
      } else if (accept('/')) {
        Expr rhs = unary();
        out = Expr::quotient(out, rhs);
      } else {
        return out;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negation(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::power(base, exponent());
    return base;
  }

  int exponent() {
    skip_space();
    bool wrapped = accept('(');
    skip_space();
    std::size_t start = pos_;
    bool negative = accept('-');
    skip_space();
    std::size_t digits_at = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_at) {
      pos_ = start;
      fail("non-integer exponent");
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      pos_ = start;
      fail("non-integer exponent");
    }
    long value = std::stol(std::string(text_.substr(digits_at, pos_ - digits_at)));
    if (value > 1000) {
      pos_ = start;
      fail("exponent too large");
    }
    if (wrapped && !accept(')')) fail("expected ')'");
    return negative ? -static_cast<int>(value) : static_cast<int>(value);
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      Expr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    Rational value = 0;
    bool any = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      any = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      Rational scale = 1;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        scale /= 10;
        value += scale * (text_[pos_] - '0');
        ++pos_;
        any = true;
      }
      value = nearest_rational(value);
    }
    if (!any) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr(value);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view id = text_.substr(start, pos_ - start);
    for (Var v : kAllVars) {
      if (id == name(v)) return Expr(v);
    }
    for (Fn f : {Fn::sin, Fn::cos, Fn::exp, Fn::ln, Fn::sqrt}) {
      if (id == name(f)) {
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        Expr arg = sum();
        if (!accept(')')) fail("expected ')'");
        return Expr::apply(f, arg);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(id) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace p4
