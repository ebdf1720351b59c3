#include "p4/random.hpp"

namespace p4 {

int RandomExprs::integer(int lo, int hi) {
  return lo + static_cast<int>(rng_.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational RandomExprs::coefficient(int range) {
  int c = integer(1, range);
  return integer(0, 1) ? Rational(c) : Rational(-c);
}

Expr RandomExprs::monomial(int degree, std::span<const Var> vars) {
  Expr out(1);
  for (int i = 0; i < degree; ++i) out *= Expr(vars[integer(0, static_cast<int>(vars.size()) - 1)]);
  return out;
}

Expr RandomExprs::polynomial(int max_degree, int terms, std::span<const Var> vars) {
  Expr out;
  for (int t = 0; t < terms; ++t) out += Expr(coefficient()) * monomial(integer(0, max_degree), vars);
  return out;
}

Expr RandomExprs::homogeneous(int degree, int terms, std::span<const Var> vars) {
  Expr out;
  for (int t = 0; t < terms; ++t) out += Expr(coefficient()) * monomial(degree, vars);
  return out;
}

Expr RandomExprs::transcendental() {
  Expr inner = polynomial(2, 2);
  Expr factor;
  switch (integer(0, 4)) {
    case 0: factor = sin(inner); break;
    case 1: factor = cos(inner); break;
    case 2: factor = exp(Expr(Rational(1, 4)) * inner); break;
    case 3: factor = ln(Expr(1) + pow(inner, 2)); break;
    default: factor = sqrt(Expr(2) + pow(inner, 2)); break;
  }
  return polynomial(2, 2) + polynomial(1, 2) * factor;
}

Vec3Expr RandomExprs::vec3(int max_degree, int terms, std::span<const Var> vars) {
  Vec3Expr v;
  for (int i = 0; i < 3; ++i) v[i] = polynomial(max_degree, terms, vars);
  return v;
}

MV1 RandomExprs::mv1(int max_degree, int terms) {
  MV1 x;
  x.w = vec3(max_degree, terms);
  x.b = polynomial(max_degree, terms);
  return x;
}

MV2 RandomExprs::mv2(int max_degree, int terms) {
  MV2 l;
  l.psi = vec3(max_degree, terms);
  l.phi = vec3(max_degree, terms);
  return l;
}

MV3 RandomExprs::mv3(int max_degree, int terms) {
  MV3 a;
  a.g = polynomial(max_degree, terms);
  a.sigma = vec3(max_degree, terms);
  return a;
}

MV4 RandomExprs::mv4(int max_degree, int terms) { return {polynomial(max_degree, terms)}; }

}  // namespace p4
