#include "p4/poisson.hpp"

#include <cmath>

namespace p4 {

OneForm differential(const Expr& f) { return {grad(f), d_dy(f)}; }

OneForm operator*(const Expr& s, const OneForm& w) { return {scale(s, w.a), s * w.c}; }

OneForm operator+(const OneForm& u, const OneForm& v) { return {Vec3Expr(u.a + v.a), u.c + v.c}; }

Expr pairing(const OneForm& w, const MV1& x) { return simplify(dot(w.a, x.w) + w.c * x.b); }

Expr bracket(const MV2& l, const Expr& f, const Expr& g) {
  Vec3Expr gf = grad(f), gg = grad(g);
  Expr fy = d_dy(f), gy = d_dy(g);
  Vec3Expr t = scale(gy, gf) - scale(fy, gg);
  return simplify(dot(l.psi, cross(gf, gg)) + dot(l.phi, t));
}

MV1 sharp(const MV2& l, const OneForm& w) {
  return simplify(make_mv1(Vec3Expr(cross(l.psi, w.a) - scale(w.c, l.phi)), dot(w.a, l.phi)));
}

MV1 hamiltonian(const MV2& l, const Expr& h) { return sharp(l, differential(h)); }

Expr jacobiator(const MV2& l, const Expr& f, const Expr& g, const Expr& h) {
  return simplify(bracket(l, f, bracket(l, g, h)) + bracket(l, h, bracket(l, f, g)) +
                  bracket(l, g, bracket(l, h, f)));
}

JacobiResiduals jacobi_residuals(const MV2& l) {
  Vec3Expr curl = rot(l.psi) + d_dy(l.phi);
  Expr pp = dot(l.psi, l.phi);
  JacobiResiduals out;
  out.r0 = simplify(dot(l.psi, curl) - d_dy(pp));
  out.r = simplify(Vec3Expr(cross(l.phi, curl) + scale(div(l.phi), l.psi) - grad(pp)));
  return out;
}

std::array<Expr, 4> coordinate_jacobiators(const MV2& l) {
  const Expr x1(Var::x1), x2(Var::x2), x3(Var::x3), y(Var::y);
  return {jacobiator(l, x1, x2, x3), jacobiator(l, x2, x3, y), jacobiator(l, x3, x1, y), jacobiator(l, x1, x2, y)};
}

namespace {

std::array<Expr, 4> residual_list(const JacobiResiduals& r) { return {r.r0, r.r[0], r.r[1], r.r[2]}; }

}  // namespace

ZeroVerdict is_poisson(const MV2& l, const SamplerConfig& cfg) {
  auto res = residual_list(jacobi_residuals(l));
  auto jac = coordinate_jacobiators(l);
  ZeroVerdict v = zero_verdict(std::span<const Expr>(res), cfg);
  ZeroVerdict w = zero_verdict(std::span<const Expr>(jac), cfg);
  if (v.is_zero() != w.is_zero()) {
    throw InternalInconsistency("jacobi residuals and coordinate jacobiators disagree");
  }
  return v;
}

ZeroVerdict is_casimir(const MV2& l, const Expr& k, const SamplerConfig& cfg) {
  return zero_verdict(hamiltonian(l, k), cfg);
}

RankValue rank_at(const MV2& l, const Point4& p) {
  Eigen::Vector3d psi = eval(l.psi, p), phi = eval(l.phi, p);
  RankValue out;
  out.norm_sq = psi.squaredNorm() + phi.squaredNorm();
  out.pairing = psi.dot(phi);
  if (std::abs(out.norm_sq) <= kRankTolerance) {
    out.rank = 0;
  } else if (std::abs(out.pairing) <= kRankTolerance) {
    out.rank = 2;
  } else {
    out.rank = 4;
  }
  return out;
}

Region region_at(const MV2& l, const Point4& p) {
  const double s = eval(l.psi, p).dot(eval(l.phi, p));
  if (s > kRankTolerance) return Region::positive;
  if (s < -kRankTolerance) return Region::negative;
  return Region::boundary;
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::positive:
      return "S+";
    case Region::negative:
      return "S-";
    case Region::boundary:
      return "dS";
  }
  return "";
}

MV1 modular(const MV2& l) { return trace(l); }

const std::pair<ZeroVerdict, ZeroVerdict>& PoissonCandidate::verdicts() const {
  if (!cache_) {
    auto res = residual_list(jacobi_residuals(tensor_));
    auto jac = coordinate_jacobiators(tensor_);
    cache_.emplace(zero_verdict(std::span<const Expr>(res)), zero_verdict(std::span<const Expr>(jac)));
  }
  return *cache_;
}

}  // namespace p4
