#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "p4/multivec.hpp"

namespace p4 {

// a·dx + c·dy
struct OneForm {
  Vec3Expr a = zero_vec3();
  Expr c;
};

OneForm differential(const Expr& f);
OneForm operator*(const Expr& s, const OneForm& w);
OneForm operator+(const OneForm& u, const OneForm& v);
Expr pairing(const OneForm& w, const MV1& x);

// Ψ·(∇f×∇g) + Φ·(g_y∇f − f_y∇g)
Expr bracket(const MV2& l, const Expr& f, const Expr& g);
MV1 sharp(const MV2& l, const OneForm& w);
MV1 hamiltonian(const MV2& l, const Expr& h);
Expr jacobiator(const MV2& l, const Expr& f, const Expr& g, const Expr& h);

struct JacobiResiduals {
  Expr r0;
  Vec3Expr r = zero_vec3();
};

JacobiResiduals jacobi_residuals(const MV2& l);

// Jacobiators on (x1,x2,x3), (x2,x3,y), (x3,x1,y), (x1,x2,y).
std::array<Expr, 4> coordinate_jacobiators(const MV2& l);

// Combined verdict over r0 and r; throws InternalInconsistency when the
// coordinate jacobiators disagree.
ZeroVerdict is_poisson(const MV2& l, const SamplerConfig& cfg = {});
ZeroVerdict is_casimir(const MV2& l, const Expr& k, const SamplerConfig& cfg = {});

inline constexpr double kRankTolerance = 1e-12;

struct RankValue {
  int rank = 0;
  double norm_sq = 0.0;  // (Φ² + Ψ²)(p)
  double pairing = 0.0;  // (Φ·Ψ)(p)
};

enum class Region { positive, negative, boundary };

RankValue rank_at(const MV2& l, const Point4& p);
Region region_at(const MV2& l, const Point4& p);
std::string_view region_name(Region r);

// Z = (rot Ψ + Φ_y) ∂x − div Φ ∂y
MV1 modular(const MV2& l);

class PoissonCandidate {
 public:
  PoissonCandidate(std::string name, MV2 tensor) : name_(std::move(name)), tensor_(std::move(tensor)) {}

  const std::string& name() const { return name_; }
  const MV2& tensor() const { return tensor_; }
  // Residual verdict and coordinate-jacobiator verdict, computed once.
  const std::pair<ZeroVerdict, ZeroVerdict>& verdicts() const;
  bool is_poisson() const { return verdicts().first.is_zero(); }

 private:
  std::string name_;
  MV2 tensor_;
  mutable std::optional<std::pair<ZeroVerdict, ZeroVerdict>> cache_;
};

}  // namespace p4
