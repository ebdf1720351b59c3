#pragma once

#include <optional>
#include <utility>

#include "p4/poisson.hpp"

namespace p4 {

// F(x, y) = (S(x, y), h(x, y)).
struct Diffeo4 {
  Vec3Expr s = vec3(Var::x1, Var::x2, Var::x3);
  Expr h = Var::y;

  std::array<Expr, 4> components() const { return {s[0], s[1], s[2], h}; }
};

Expr jacobian_det(const Diffeo4& f);

// Target components composed with F, in source coordinates:
// (F_*Λ)^{ab}∘F = Σ ∂F^a/∂u^i ∂F^b/∂u^j Λ^{ij}.
MV2 pushforward_composed(const MV2& l, const Diffeo4& f);

// Λ(F(p)) as an expression in p.
MV2 compose(const MV2& l, const Diffeo4& f);

inline constexpr std::array<std::pair<Var, Var>, 6> kCoordinatePairs = {{{Var::x1, Var::x2},
                                                                         {Var::x1, Var::x3},
                                                                         {Var::x1, Var::y},
                                                                         {Var::x2, Var::x3},
                                                                         {Var::x2, Var::y},
                                                                         {Var::x3, Var::y}}};

struct PoissonMapReport {
  bool passes = false;
  // In kCoordinatePairs order.
  std::array<ZeroVerdict, 6> pairs{};
  std::optional<std::pair<Var, Var>> witness_pair;
  double composed = 0.0;
  double target = 0.0;
  ZeroVerdict determinant;
};

// dst = nullopt compares against src itself. Throws PreconditionError when
// det DF vanishes at a sample.
PoissonMapReport poisson_map_check(const MV2& src, const Diffeo4& f, const std::optional<MV2>& dst = std::nullopt,
                                   const SamplerConfig& cfg = {});

// Coordinate forms of the composed target, with the sign slots
// eps1, eps2 on the S_y terms.
Vec3Expr pushforward_psi_form(const MV2& l, const Diffeo4& f, int eps1);
Vec3Expr pushforward_phi_form(const MV2& l, const Diffeo4& f, int eps2);

// The two coordinate expressions for L_X Λ, as printed.
Vec3Expr vector_field_form_psi(const MV2& l, const MV1& x);
Vec3Expr vector_field_form_phi(const MV2& l, const MV1& x);

struct SymmetryReport {
  MV2 definitional;
  Vec3Expr form_psi = zero_vec3();
  Vec3Expr form_phi = zero_vec3();
  ZeroVerdict definitional_verdict;
  ZeroVerdict form_verdict;
  // L_X Λ = kVectorFieldForm * (form_psi, form_phi).
  ZeroVerdict form_matches;
  bool agree = false;
  bool passes = false;
};

SymmetryReport poisson_vf_check(const MV2& l, const MV1& x, const SamplerConfig& cfg = {});

struct TangentReport {
  MV1 field;
  Vec3Expr residual_psi = zero_vec3();
  Vec3Expr residual_phi = zero_vec3();
  // Single scalar condition used when Φ·Ψ vanishes identically.
  std::optional<Expr> rank2_residual;
  bool rank2 = false;
  ZeroVerdict conditions;
};

// W = (Ψ×α − gΦ)∂x + (α·Φ)∂y with the closure conditions.
TangentReport tangent_pvf(const MV2& l, const Vec3Expr& alpha, const Expr& g, const SamplerConfig& cfg = {});

struct NormalForm {
  Vec3Expr psi = zero_vec3();  // Ψ̃∘F
  Vec3Expr phi = zero_vec3();  // Φ̃∘F
  ZeroVerdict phi_verdict;
};

// Pushforward under F(x, y) = (x, k). Throws PreconditionError when k is not
// a Casimir or k_y vanishes identically.
NormalForm casimir_normal_form(const MV2& l, const Expr& k, const SamplerConfig& cfg = {});

}  // namespace p4
