#pragma once

#include <cstdint>
#include <span>

#include "p4/multivec.hpp"

namespace p4 {

// Deterministic generators of random test inputs.
class RandomExprs {
 public:
  explicit RandomExprs(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi);
  Rational coefficient(int range = 3);

  // Sum of `terms` monomials of total degree <= max_degree with nonzero
  // integer coefficients.
  Expr polynomial(int max_degree = 2, int terms = 4, std::span<const Var> vars = kAllVars);
  Expr homogeneous(int degree, int terms, std::span<const Var> vars = kAllVars);
  // Polynomial with sin, cos, exp, ln and sqrt factors, defined on the whole
  // sampling box.
  Expr transcendental();

  Vec3Expr vec3(int max_degree = 2, int terms = 3, std::span<const Var> vars = kAllVars);
  MV1 mv1(int max_degree = 2, int terms = 3);
  MV2 mv2(int max_degree = 2, int terms = 3);
  MV3 mv3(int max_degree = 2, int terms = 3);
  MV4 mv4(int max_degree = 2, int terms = 3);

 private:
  Expr monomial(int degree, std::span<const Var> vars);

  SplitMix64 rng_;
};

}  // namespace p4
