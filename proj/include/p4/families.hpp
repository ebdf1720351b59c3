#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p4/poisson.hpp"

namespace p4 {

class NotAZero : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Ψ = Mx + p×x + yα, Φ = Nx + q×x + yβ with constant symmetric M, N.
struct LinearParams {
  Mat3Expr M = Mat3Expr::Constant(Expr());
  Mat3Expr N = Mat3Expr::Constant(Expr());
  Vec3Expr p = zero_vec3();
  Vec3Expr q = zero_vec3();
  Vec3Expr alpha = zero_vec3();
  Vec3Expr beta = zero_vec3();
};

MV2 linear_build(const LinearParams& params);

// The five displayed constraint residuals, with Λ∘v read as the hat map.
struct LinearConstraints {
  Vec3Expr c1;  // 2Mp − Nα + q×α
  Expr c2;      // 2α·p − α·β
  Mat3Expr c3;  // (2M − β^)(N + q^) + (N − q^)(2M + β^) + 2 Tr(N) M
  Vec3Expr c4;  // Tr(N)β − N(2p + β) − q×(2p + β)
  Vec3Expr c5;  // Tr(N)α − Mβ − p×β − Nα + q×α
};

LinearConstraints linear_constraints(const LinearParams& params);

// Each constraint against the matching coefficient block of the Jacobi
// residuals of the built tensor: c1 ~ ∇r0, c2 ~ ∂y r0, c3 ~ sym(∂x r),
// c4 ~ −axial(∂x r), c5 ~ ∂y r.
struct LinearAudit {
  LinearConstraints constraints;
  std::array<bool, 5> constraint_zero{};
  std::array<bool, 5> matches_residual{};
  bool jacobi_zero = false;
};

LinearAudit audit_linear(const LinearParams& params);

// Linear part at p, in coordinates centered at p.
MV2 linearize_at(const MV2& l, const Point4& p);

struct FamilyTensor {
  MV2 tensor;
  Expr residual;
};

// Λ = (f∇k + k_y A)∂x∧∂x + (A×∇k)∂x∧∂y with the scalar Jacobi condition.
FamilyTensor casimir_family(const Expr& k, const Vec3Expr& a, const Expr& f);
// Quadratic Casimir k = ½xᵀMx + (α·x)y + ½by² with constant A, c.
struct QuadraticCasimir {
  MV2 tensor;
  Expr k1;
  Expr k2;
};
QuadraticCasimir quadratic_casimir_family(const Mat3Expr& m, const Vec3Expr& alpha, const Expr& b,
                                          const Vec3Expr& a, const Expr& c);
MV2 two_casimir_family(const Expr& k1, const Expr& k2, const Expr& f);
// S(f,g) = (g_y∇f − f_y∇g)∂x∧∂x + (∇f×∇g)∂x∧∂y
MV2 s_tensor(const Expr& f, const Expr& g);

struct LiouvilleTensor {
  MV2 tensor;
  Expr c;                 // (∇f + Σ_y)·rot Σ, simplified
  bool c_constant = false;
  std::optional<double> c_value;
};

LiouvilleTensor liouville_family(const Expr& f, const Vec3Expr& sigma);

struct SymplecticReport {
  // Φ·Ψ nonvanishing on the samples and on the lattice {-2, -1, 0, 1, 2}^4.
  bool s1 = false;
  std::optional<Point4> s1_witness;
  std::optional<ZeroVerdict> s2;  // div(Φ/(Φ·Ψ))
  std::optional<ZeroVerdict> s3;  // ∂y(Φ/(Φ·Ψ)) + rot(Ψ/(Φ·Ψ))
  bool rank4 = false;
  bool passes = false;
  Vec3Expr normalized_phi = zero_vec3();
  Vec3Expr normalized_psi = zero_vec3();
};

SymplecticReport symplectic_check(const MV2& l, const SamplerConfig& cfg = {});

// Ω = −rot Ξ dx∧dx − (∇h − Ξ_y) dx∧dy
struct TwoForm {
  Vec3Expr xx = zero_vec3();
  Vec3Expr xy = zero_vec3();
};
TwoForm symplectic_form(const Vec3Expr& xi, const Expr& h);

struct Rank2Tensor {
  MV2 tensor;
  Vec3Expr residual = zero_vec3();
};

// Λ = (Φ×Σ)∂x∧∂x + Φ∂x∧∂y, residual Φ×([Σ,Φ] + Φ_y).
Rank2Tensor rank2_build(const Vec3Expr& phi, const Vec3Expr& sigma);
// Λ = Ψ∂x∧∂x, residual Ψ·rot Ψ.
FamilyTensor rank2_psi_build(const Vec3Expr& psi);

// Products of a rank-2 tensor built from (Φ, Σ); T = Σ∂x + ∂y.
MV1 rank2_hamiltonian(const Vec3Expr& phi, const Vec3Expr& sigma, const Expr& h);
MV1 rank2_modular(const Vec3Expr& phi, const Vec3Expr& sigma);
// Ω = (Φdx)∧(Σdx + dy) / (Φ² + (Φ×Σ)²), evaluated on a pair of fields.
Expr rank2_leaf_form(const Vec3Expr& phi, const Vec3Expr& sigma, const MV1& u, const MV1& v);
// (Φ·x)Λ − kRank2Wedge Λ#(x dx)∧Λ#(dy)
MV2 rank2_wedge_residual(const MV2& l);

// Δ = Λ − X_f∧X_g / {f,g}
MV2 dirac(const MV2& l, const Expr& f, const Expr& g, const SamplerConfig& cfg = {});

struct Decomposition {
  std::vector<std::pair<std::string, MV2>> parts;
  MV2 residual;
  ZeroVerdict verdict;
  std::vector<int> signs;
  std::vector<std::pair<std::string, ZeroVerdict>> checks;
};

// Λ = X_f∧X_g/{f,g} + ε (Ψ·Φ/{f,g}) S(f,g).
Decomposition decompose_fg(const MV2& l, const Expr& f, const Expr& g, const SamplerConfig& cfg = {});

struct ModularDecomposition {
  // (div Φ)Λ = ε1 Z∧Φ∂x + ε2 ∇(Φ·Ψ)∂x∧∂x
  Decomposition multiplied;
  // Λ = Z∧(Φ/div Φ)∂x + Λ0, when div Φ does not vanish on samples.
  std::optional<Decomposition> divided;
  // (div Φ)Λ = Z∧Φ∂x, when Φ·Ψ vanishes identically.
  std::optional<Decomposition> rank2;
};

ModularDecomposition decompose_modular(const MV2& l, const SamplerConfig& cfg = {});

struct TransversalReport {
  MV2 tensor;
  MV1 v1;
  MV1 v2;
  bool dual = false;
  Expr s1;  // −div V1 + L_V1 f / f
  Expr s2;
  std::array<ZeroVerdict, 2> preserves{};  // L_Vi Λ − kTransversal si Λ
  // Present when a 1-form dx-part α was supplied.
  std::optional<Expr> lambda;
  std::optional<Expr> lambda_quotient;
  std::optional<MV1> z;
  std::optional<ZeroVerdict> lambda_casimir;
  std::optional<ZeroVerdict> z_automorphism;
};

// Λ = f[(k2_y∇k1 − k1_y∇k2)∂x∧∂x + (∇k1×∇k2)∂x∧∂y]
TransversalReport transversal_fields(const Expr& k1, const Expr& k2, const Expr& f, const SamplerConfig& cfg = {});
// Λ = f∇k ∂x∧∂x, optionally with α for Z = λV1 + V2 + Λ#(α dx).
TransversalReport transversal_fields(const Expr& k, const Expr& f, const std::optional<Vec3Expr>& alpha,
                                     const SamplerConfig& cfg = {});

}  // namespace p4
