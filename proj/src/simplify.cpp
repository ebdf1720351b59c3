// Canonical form: expand into a sum of rational multiples of monomials over
// atoms. Atoms are variables, function applications with canonical
// arguments, and leading-coefficient-normalized sums raised to negative
// powers.

#include <map>

#include "p4/expr.hpp"

namespace p4 {

namespace {

struct Factor {
  Expr atom;
  int exp;
};

using Monomial = std::vector<Factor>;

int atom_order(const Expr& a, const Expr& b) {
  const bool av = a.kind() == Expr::Kind::variable;
  const bool bv = b.kind() == Expr::Kind::variable;
  if (av && bv) return index(a.variable()) - index(b.variable());
  if (av != bv) return av ? -1 : 1;
  return compare(a, b);
}

int degree(const Monomial& m) {
  int d = 0;
  for (const Factor& f : m) d += f.exp;
  return d;
}

// Higher total degree first, then lexicographic with earlier atoms and
// larger exponents first.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = degree(a);
    const int db = degree(b);
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (int c = atom_order(a[i].atom, b[i].atom); c != 0) return c < 0;
      if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp;
    }
    return a.size() < b.size();
  }
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

Poly constant_poly(const Rational& c) {
  Poly p;
  if (c != 0) p.emplace(Monomial{}, c);
  return p;
}

Poly atom_poly(const Expr& atom, int exp) {
  Poly p;
  p.emplace(Monomial{{atom, exp}}, Rational(1));
  return p;
}

void add_into(Poly& acc, const Monomial& m, const Rational& c) {
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_into(out, m, c);
  return out;
}

Poly scale(const Poly& a, const Rational& s) {
  Poly out;
  if (s == 0) return out;
  for (const auto& [m, c] : a) out.emplace(m, c * s);
  return out;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : (j == b.size() ? -1 : atom_order(a[i].atom, b[j].atom));
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].exp + b[j].exp;
      if (e != 0) out.push_back({a[i].atom, e});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_into(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

Poly power(const Poly& base, int n) {
  Poly out = constant_poly(1);
  for (int i = 0; i < n; ++i) out = multiply(out, base);
  return out;
}

Expr from_poly(const Poly& p);

Poly inverse(const Poly& p) {
  if (p.empty()) return atom_poly(Expr(), -1);
  if (p.size() == 1) {
    const auto& [m, c] = *p.begin();
    Monomial inv;
    for (const Factor& f : m) inv.push_back({f.atom, -f.exp});
    Poly out;
    out.emplace(std::move(inv), Rational(1) / c);
    return out;
  }
  const Rational lead = p.begin()->second;
  Poly normalized = scale(p, Rational(1) / lead);
  Poly out = atom_poly(from_poly(normalized), -1);
  return scale(out, Rational(1) / lead);
}

bool is_perfect_square(const boost::multiprecision::cpp_int& n, boost::multiprecision::cpp_int& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

// Exact values of function applications at rational arguments where they
// are rational.
bool fold_function(Fn f, const Expr& arg, Rational& out) {
  if (!arg.is_constant()) return false;
  const Rational& a = arg.value();
  switch (f) {
    case Fn::sin:
      if (a == 0) { out = 0; return true; }
      return false;
    case Fn::cos:
    case Fn::exp:
      if (a == 0) { out = 1; return true; }
      return false;
    case Fn::ln:
      if (a == 1) { out = 0; return true; }
      return false;
    case Fn::sqrt: {
      boost::multiprecision::cpp_int rn, rd;
      if (is_perfect_square(numerator(a), rn) && is_perfect_square(denominator(a), rd)) {
        out = Rational(rn, rd);
        return true;
      }
      return false;
    }
  }
  return false;
}

Poly to_poly(const Expr& e);

// Inverse that keeps the factor structure of the denominator as written, so
// (a + b)^2 in a denominator stays a square of one atom.
Poly inverse_of(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::pow: {
      const int n = e.exponent();
      if (n < 0) return power(to_poly(e.operand(0)), -n);
      return power(inverse_of(e.operand(0)), n);
    }
    case Expr::Kind::mul: {
      Poly out = constant_poly(1);
      for (const Expr& f : e.operands()) out = multiply(out, inverse_of(f));
      return out;
    }
    case Expr::Kind::neg:
      return scale(inverse_of(e.operand(0)), Rational(-1));
    case Expr::Kind::div:
      return multiply(to_poly(e.operand(1)), inverse_of(e.operand(0)));
    default:
      return inverse(to_poly(e));
  }
}

Poly to_poly(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return constant_poly(e.value());
    case Expr::Kind::variable:
      return atom_poly(e, 1);
    case Expr::Kind::add: {
      Poly out;
      for (const Expr& t : e.operands()) {
        for (const auto& [m, c] : to_poly(t)) add_into(out, m, c);
      }
      return out;
    }
    case Expr::Kind::mul: {
      Poly out = constant_poly(1);
      for (const Expr& f : e.operands()) {
        out = multiply(out, to_poly(f));
        if (out.empty()) break;
      }
      return out;
    }
    case Expr::Kind::div: {
      Poly num = to_poly(e.operand(0));
      if (num.empty()) return num;
      return multiply(num, inverse_of(e.operand(1)));
    }
    case Expr::Kind::neg:
      return scale(to_poly(e.operand(0)), Rational(-1));
    case Expr::Kind::pow: {
      const int n = e.exponent();
      if (n == 0) return constant_poly(1);
      if (n > 0) return power(to_poly(e.operand(0)), n);
      return power(inverse_of(e.operand(0)), -n);
    }
    case Expr::Kind::function: {
      Expr arg = from_poly(to_poly(e.operand(0)));
      Rational folded;
      if (fold_function(e.function(), arg, folded)) return constant_poly(folded);
      return atom_poly(Expr::apply(e.function(), arg), 1);
    }
  }
  return {};
}

Expr from_monomial(const Monomial& m, const Rational& c) {
  std::vector<Expr> factors;
  for (const Factor& f : m) factors.push_back(f.exp == 1 ? f.atom : Expr::power(f.atom, f.exp));
  if (factors.empty()) return Expr(c);
  if (c == -1) return Expr::negation(Expr::product(std::move(factors)));
  if (c != 1) factors.insert(factors.begin(), Expr(c));
  return Expr::product(std::move(factors));
}

Expr from_poly(const Poly& p) {
  if (p.empty()) return Expr();
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back(from_monomial(m, c));
  return Expr::sum(std::move(terms));
}

bool is_denominator_factor(const Factor& f) { return f.exp < 0 && f.atom.kind() == Expr::Kind::add; }

bool divides(const Monomial& d, const Monomial& m, Monomial& quotient) {
  quotient.clear();
  std::size_t j = 0;
  for (const Factor& f : m) {
    if (j < d.size() && atom_order(d[j].atom, f.atom) < 0) return false;
    if (j < d.size() && atom_order(d[j].atom, f.atom) == 0) {
      if (d[j].exp > f.exp) return false;
      if (f.exp > d[j].exp) quotient.push_back({f.atom, f.exp - d[j].exp});
      ++j;
    } else {
      quotient.push_back(f);
    }
  }
  return j == d.size();
}

bool has_negative_exponent(const Poly& p) {
  for (const auto& [m, c] : p) {
    for (const Factor& f : m) {
      if (f.exp < 0) return true;
    }
  }
  return false;
}

// Exact division n = q * d by leading terms in the graded order.
bool divide_exact(const Poly& n, const Poly& d, Poly& q) {
  q.clear();
  Poly r = n;
  const auto& [md, cd] = *d.begin();
  for (int guard = 0; !r.empty(); ++guard) {
    if (guard > 4096) return false;
    Monomial t;
    if (!divides(md, r.begin()->first, t)) return false;
    Rational c = r.begin()->second / cd;
    Poly step;
    step.emplace(t, c);
    q = add(q, step);
    r = add(r, scale(multiply(step, d), Rational(-1)));
  }
  return true;
}

// Cancels sum atoms in denominators against numerators divisible by them.
Poly cancel(const Poly& p) {
  std::map<Monomial, Poly, MonomialLess> groups;
  for (const auto& [m, c] : p) {
    Monomial den, num;
    for (const Factor& f : m) (is_denominator_factor(f) ? den : num).push_back(f);
    add_into(groups[den], num, c);
  }
  Poly out;
  for (auto& [den, num] : groups) {
    Monomial remaining;
    for (const Factor& f : den) {
      int k = -f.exp;
      Poly divisor = to_poly(f.atom);
      if (!has_negative_exponent(num) && !has_negative_exponent(divisor)) {
        Poly q;
        while (k > 0 && !num.empty() && divide_exact(num, divisor, q)) {
          num = q;
          --k;
        }
      }
      if (k > 0) remaining.push_back({f.atom, -k});
    }
    for (const auto& [m, c] : num) add_into(out, multiply(m, remaining), c);
  }
  return out;
}

}  // namespace

Expr simplify(const Expr& e) { return from_poly(cancel(to_poly(e))); }

}  // namespace p4
