#pragma once

// Frozen sign table. Every entry is checked by the identity audit; see
// README.md for the list of identities and how each sign was resolved.

namespace p4::signs {

// [Λ, Λ] = kSchouten * 2 * (trivector of coordinate jacobiators).
inline constexpr int kSchouten = -1;

// (V∂x + a∂y) ∧ (W∂x + b∂y) has phi = kWedgePhi * (b V - a W).
inline constexpr int kWedgePhi = +1;

// {f, g} Λ = X_f ∧ X_g + kDecomposeFg * (Ψ·Φ) S_(f,g).
inline constexpr int kDecomposeFg = +1;

// (div Φ) Λ = kModularWedge * Z ∧ Φ∂x + kModularGradient * ∇(Φ·Ψ) ∂x∧∂x.
inline constexpr int kModularWedge = +1;
inline constexpr int kModularGradient = +1;

// Rank 2: (Φ·x) Λ = kRank2Wedge * Λ#(x dx) ∧ Λ#(dy).
inline constexpr int kRank2Wedge = +1;

// L_V Λ = kTransversal * (-div V + L_V f / f) Λ for the fields dual to the Casimirs.
inline constexpr int kTransversal = +1;

// Composed pushforward: Ψ̃∘F = cof(DxS)Ψ + kPushforwardPsi (DxS Φ)×S_y,
// Φ̃∘F = −DxS(Ψ×∇h) + h_y DxS Φ − kPushforwardPhi (Φ·∇h) S_y.
inline constexpr int kPushforwardPsi = +1;
inline constexpr int kPushforwardPhi = +1;

// L_X Λ = kVectorFieldForm * (coordinate forms of the automorphism equations).
inline constexpr int kVectorFieldForm = +1;

// L_W Λ = kTangentConditions * (closure residuals) for W = (Ψ×α − gΦ)∂x + (α·Φ)∂y.
inline constexpr int kTangentConditions = -1;

}  // namespace p4::signs
