#pragma once

#include <array>
#include <span>
#include <vector>

#include "p4/veccalc.hpp"
#include "p4/verdict.hpp"

namespace p4 {

// W ∂x + b ∂y.
struct MV1 {
  Vec3Expr w = zero_vec3();
  Expr b;
};

// psi ∂x∧∂x + phi ∂x∧∂y, with psi = (Λ23, Λ31, Λ12) and phi_i = Λi4.
struct MV2 {
  Vec3Expr psi = zero_vec3();
  Vec3Expr phi = zero_vec3();
};

// g ∂1∧∂2∧∂3 + sigma ∂x∧∂x∧∂y, sigma = (A234, A314, A124).
struct MV3 {
  Expr g;
  Vec3Expr sigma = zero_vec3();
};

// f ∂1∧∂2∧∂3∧∂y.
struct MV4 {
  Expr f;
};

MV1 basis_field(Var v);
MV1 make_mv1(const Vec3Expr& w, const Expr& b);
MV2 make_mv2(const Vec3Expr& psi, const Vec3Expr& phi);

MV1 operator+(const MV1& a, const MV1& b);
MV2 operator+(const MV2& a, const MV2& b);
MV3 operator+(const MV3& a, const MV3& b);
MV4 operator+(const MV4& a, const MV4& b);
MV1 operator-(const MV1& a);
MV2 operator-(const MV2& a);
MV3 operator-(const MV3& a);
MV4 operator-(const MV4& a);
MV1 operator-(const MV1& a, const MV1& b);
MV2 operator-(const MV2& a, const MV2& b);
MV3 operator-(const MV3& a, const MV3& b);
MV4 operator-(const MV4& a, const MV4& b);
MV1 operator*(const Expr& s, const MV1& a);
MV2 operator*(const Expr& s, const MV2& a);
MV3 operator*(const Expr& s, const MV3& a);
MV4 operator*(const Expr& s, const MV4& a);

MV1 simplify(const MV1& a);
MV2 simplify(const MV2& a);
MV3 simplify(const MV3& a);
MV4 simplify(const MV4& a);

// Coefficients in a fixed order (w then b; psi then phi; g then sigma; f).
std::vector<Expr> coefficients(const MV1& a);
std::vector<Expr> coefficients(const MV2& a);
std::vector<Expr> coefficients(const MV3& a);
std::vector<Expr> coefficients(const MV4& a);
inline std::vector<Expr> coefficients(const Vec3Expr& v) { return {v[0], v[1], v[2]}; }

template <class MV>
ZeroVerdict zero_verdict(const MV& a, const SamplerConfig& cfg = {}) {
  auto cs = coefficients(a);
  return zero_verdict(std::span<const Expr>(cs), cfg);
}

template <class MV>
bool equal_verdict(const MV& a, const MV& b, const SamplerConfig& cfg = {}) {
  return zero_verdict(a - b, cfg).is_zero();
}

// Derivative of f along X.
Expr directional(const MV1& x, const Expr& f);

// ---------------------------------------------------------------------------
// Component form: antisymmetric tensor A^{i1..ik} on (x1, x2, x3, y), stored
// by the bit mask of its ascending index set.

class Components {
 public:
  explicit Components(int grade);

  int grade() const { return grade_; }
  const Expr& operator[](unsigned mask) const { return coeff_[mask]; }
  Expr& operator[](unsigned mask) { return coeff_[mask]; }
  // Value at indices in any order (0-based), sign from the permutation.
  Expr at(std::span<const int> indices) const;

  // Ascending-index masks of the given grade.
  static std::vector<unsigned> masks(int grade);

 private:
  int grade_;
  std::array<Expr, 16> coeff_;
};

Components to_components(const MV1& a);
Components to_components(const MV2& a);
Components to_components(const MV3& a);
Components to_components(const MV4& a);
MV1 to_mv1(const Components& c);
MV2 to_mv2(const Components& c);
MV3 to_mv3(const Components& c);
MV4 to_mv4(const Components& c);

Components simplify(const Components& c);
Components wedge(const Components& a, const Components& b);
// Contraction of the derivative into the last index.
Components trace(const Components& a);
Components lie_derivative(const MV1& x, const Components& a);
// Contraction of a 1-form (coefficients of dx1, dx2, dx3, dy) into the first index.
Components contract_first(const std::array<Expr, 4>& form, const Components& a);
Components scale(const Expr& s, const Components& a);

// Component bracket Λ^{ij} ∂i f ∂j g.
Expr component_bracket(const MV2& l, const Expr& f, const Expr& g);

// Numeric 4x4 component matrix.
Eigen::Matrix4d component_matrix(const MV2& l, const Point4& p);

// ---------------------------------------------------------------------------
// Reduced-coordinate operations.

MV2 wedge(const MV1& a, const MV1& b);
MV3 wedge(const MV1& a, const MV2& b);
MV3 wedge(const MV2& a, const MV1& b);
MV4 wedge(const MV1& a, const MV3& b);
MV4 wedge(const MV3& a, const MV1& b);
MV4 wedge(const MV2& a, const MV2& b);

Expr trace(const MV1& a);
MV1 trace(const MV2& a);
MV2 trace(const MV3& a);
MV3 trace(const MV4& a);

// (1/f) trace(f a); f must not vanish at any sample point.
Expr trace_rescaled(const MV1& a, const Expr& f, const SamplerConfig& cfg = {});
MV1 trace_rescaled(const MV2& a, const Expr& f, const SamplerConfig& cfg = {});
MV2 trace_rescaled(const MV3& a, const Expr& f, const SamplerConfig& cfg = {});
MV3 trace_rescaled(const MV4& a, const Expr& f, const SamplerConfig& cfg = {});

// [X, Y] = X(Y) - Y(X).
MV1 lie_bracket(const MV1& x, const MV1& y);
MV2 lie_derivative_mv2(const MV1& x, const MV2& l);

// Trivector with components jacobiator(x_a, x_b, x_c), via component brackets.
MV3 jacobiator_trivector(const MV2& l);
// [A, A] = kSchoutenSign * 2 * jacobiator trivector.
MV3 schouten_self(const MV2& a);
MV3 schouten_22(const MV2& a, const MV2& b);

// [f, A] = -i_{df} A, contraction into the first index.
Expr schouten_function(const Expr& f, const MV1& a);
MV1 schouten_function(const Expr& f, const MV2& a);
MV2 schouten_function(const Expr& f, const MV3& a);
MV3 schouten_function(const Expr& f, const MV4& a);

}  // namespace p4
