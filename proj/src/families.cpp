#include "p4/families.hpp"

#include <cmath>

#include "p4/signs.hpp"

namespace p4 {

namespace {

const Vec3Expr kX = vec3(Expr(Var::x1), Expr(Var::x2), Expr(Var::x3));
const Expr kY(Var::y);

Mat3Expr hat(const Vec3Expr& v) {
  Mat3Expr m = Mat3Expr::Constant(Expr());
  m(0, 1) = -v[2];
  m(0, 2) = v[1];
  m(1, 0) = v[2];
  m(1, 2) = -v[0];
  m(2, 0) = -v[1];
  m(2, 1) = v[0];
  return m;
}

Vec3Expr axial(const Mat3Expr& a) { return vec3(a(2, 1), a(0, 2), a(1, 0)); }

Expr matrix_trace(const Mat3Expr& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

bool constant_symmetric(const Mat3Expr& m) {
  Mat3Expr s = simplify(m);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!s(i, j).is_constant()) return false;
      if (!(s(i, j) == s(j, i))) return false;
    }
  }
  return true;
}

bool zero(const Expr& e) { return zero_verdict(e).is_zero(); }

bool zero(const Vec3Expr& v) {
  auto cs = std::array<Expr, 3>{v[0], v[1], v[2]};
  return zero_verdict(std::span<const Expr>(cs)).is_zero();
}

bool zero(const Mat3Expr& m) {
  std::vector<Expr> cs(m.data(), m.data() + 9);
  return zero_verdict(std::span<const Expr>(cs)).is_zero();
}

Vec3Expr divide(const Vec3Expr& v, const Expr& b) { return simplify(Vec3Expr(v.unaryExpr([&](const Expr& e) { return e / b; }))); }

MV2 divide(const MV2& l, const Expr& b) { return {divide(l.psi, b), divide(l.phi, b)}; }


Expr constant_at(const Expr& e, const Point4& p) { return Expr(nearest_rational(eval(e, p))); }

void require_nonzero(const Expr& e, const char* what, const SamplerConfig& cfg) {
  if (zero_verdict(e, cfg).is_zero()) throw PreconditionError(what);
}

// Divergence of a full field: div W + b_y.
Expr full_div(const MV1& x) { return trace(x); }

}  // namespace

MV2 linear_build(const LinearParams& params) {
  if (!constant_symmetric(params.M) || !constant_symmetric(params.N)) {
    throw PreconditionError("M and N must be constant symmetric matrices");
  }
  Vec3Expr psi = params.M * kX + cross(params.p, kX) + scale(kY, params.alpha);
  Vec3Expr phi = params.N * kX + cross(params.q, kX) + scale(kY, params.beta);
  return simplify(make_mv2(psi, phi));
}

LinearConstraints linear_constraints(const LinearParams& params) {
  const auto& [m, n, p, q, a, b] = params;
  const Expr trn = matrix_trace(n);
  LinearConstraints c;
  c.c1 = simplify(Vec3Expr(scale(Expr(2), m * p) - n * a + cross(q, a)));
  c.c2 = simplify(Expr(2) * dot(a, p) - dot(a, b));
  Mat3Expr two_m = m * Expr(2);
  Mat3Expr c3 = (two_m - hat(b)) * (n + hat(q)) + (n - hat(q)) * (two_m + hat(b)) + m * (Expr(2) * trn);
  c.c3 = simplify(c3);
  Vec3Expr tp = scale(Expr(2), p) + b;
  c.c4 = simplify(Vec3Expr(scale(trn, b) - n * tp - cross(q, tp)));
  c.c5 = simplify(Vec3Expr(scale(trn, a) - m * b - cross(p, b) - n * a + cross(q, a)));
  return c;
}

LinearAudit audit_linear(const LinearParams& params) {
  LinearAudit out;
  out.constraints = linear_constraints(params);
  MV2 l = linear_build(params);
  JacobiResiduals r = jacobi_residuals(l);
  out.jacobi_zero = zero(r.r0) && zero(r.r);
  Mat3Expr rx = jacobian_x(r.r);
  Mat3Expr sym = rx + rx.transpose();
  Mat3Expr anti = rx - rx.transpose();
  const auto& c = out.constraints;
  out.constraint_zero = {zero(c.c1), zero(c.c2), zero(c.c3), zero(c.c4), zero(c.c5)};
  out.matches_residual = {zero(Vec3Expr(c.c1 - grad(r.r0))), zero(c.c2 - d_dy(r.r0)), zero(Mat3Expr(c.c3 - sym)),
                          zero(Vec3Expr(c.c4 + axial(anti))), zero(Vec3Expr(c.c5 - d_dy(r.r)))};
  return out;
}

MV2 linearize_at(const MV2& l, const Point4& p) {
  Eigen::Vector3d psi = eval(l.psi, p), phi = eval(l.phi, p);
  if (psi.cwiseAbs().maxCoeff() > 1e-12 || phi.cwiseAbs().maxCoeff() > 1e-12) {
    throw NotAZero("tensor does not vanish at the linearization point");
  }
  auto linear = [&](const Vec3Expr& v) {
    Vec3Expr out = zero_vec3();
    for (int i = 0; i < 3; ++i) {
      for (Var var : kAllVars) out[i] = out[i] + constant_at(diff(v[i], var), p) * Expr(var);
    }
    return simplify(out);
  };
  return {linear(l.psi), linear(l.phi)};
}

FamilyTensor casimir_family(const Expr& k, const Vec3Expr& a, const Expr& f) {
  Vec3Expr gk = grad(k);
  Expr ky = d_dy(k);
  FamilyTensor out;
  out.tensor = simplify(make_mv2(Vec3Expr(scale(f, gk) + scale(ky, a)), cross(a, gk)));
  Vec3Expr u = cross(Vec3Expr(grad(f) + d_dy(a)), a) - scale(f, rot(a));
  out.residual = simplify(dot(u, gk) - ky * dot(a, rot(a)));
  return out;
}

QuadraticCasimir quadratic_casimir_family(const Mat3Expr& m, const Vec3Expr& alpha, const Expr& b,
                                          const Vec3Expr& a, const Expr& c) {
  QuadraticCasimir out;
  Vec3Expr mx = m * kX;
  out.k1 = simplify(Expr(Rational(1, 2)) * dot(kX, mx) + dot(alpha, kX) * kY + Expr(Rational(1, 2)) * b * kY * kY);
  out.k2 = simplify(dot(a, kX) - c * kY);
  Vec3Expr grad_k = mx + scale(kY, alpha);
  out.tensor = simplify(make_mv2(Vec3Expr(scale(c, grad_k) + scale(dot(alpha, kX) + b * kY, a)), cross(a, grad_k)));
  return out;
}

MV2 two_casimir_family(const Expr& k1, const Expr& k2, const Expr& f) {
  Vec3Expr g1 = grad(k1), g2 = grad(k2);
  Vec3Expr psi = scale(f, Vec3Expr(scale(d_dy(k2), g1) - scale(d_dy(k1), g2)));
  return simplify(make_mv2(psi, scale(f, cross(g1, g2))));
}

MV2 s_tensor(const Expr& f, const Expr& g) { return two_casimir_family(f, g, Expr(1)); }

LiouvilleTensor liouville_family(const Expr& f, const Vec3Expr& sigma) {
  LiouvilleTensor out;
  Vec3Expr psi = grad(f) + d_dy(sigma);
  Vec3Expr curl = rot(sigma);
  out.tensor = simplify(make_mv2(psi, scale(Expr(-1), curl)));
  out.c = simplify(dot(psi, curl));
  out.c_constant = zero(grad(out.c)) && zero(d_dy(out.c));
  if (out.c_constant) out.c_value = eval(out.c, sample_points({}, 1).front());
  return out;
}

SymplecticReport symplectic_check(const MV2& l, const SamplerConfig& cfg) {
  SymplecticReport out;
  Expr pp = simplify(dot(l.phi, l.psi));
  std::vector<Point4> points = sample_points(cfg, cfg.samples);
  for (double a : {-2, -1, 0, 1, 2}) {
    for (double b : {-2, -1, 0, 1, 2}) {
      for (double c : {-2, -1, 0, 1, 2}) {
        for (double d : {-2, -1, 0, 1, 2}) points.emplace_back(a, b, c, d);
      }
    }
  }
  out.s1 = true;
  for (const Point4& p : points) {
    double v = 0.0;
    try {
      v = eval(pp, p);
    } catch (const DomainError&) {
      continue;
    }
    if (std::abs(v) <= kRankTolerance) {
      out.s1 = false;
      out.s1_witness = p;
      break;
    }
  }
  if (!out.s1) return out;
  out.normalized_phi = divide(l.phi, pp);
  out.normalized_psi = divide(l.psi, pp);
  Expr s2 = div(out.normalized_phi);
  Vec3Expr s3 = d_dy(out.normalized_phi) + rot(out.normalized_psi);
  out.s2 = zero_verdict(s2, cfg);
  auto cs = std::array<Expr, 3>{s3[0], s3[1], s3[2]};
  out.s3 = zero_verdict(std::span<const Expr>(cs), cfg);
  out.rank4 = true;
  for (const Point4& p : sample_points(cfg, cfg.samples)) out.rank4 = out.rank4 && rank_at(l, p).rank == 4;
  out.passes = out.s2->is_zero() && out.s3->is_zero() && out.rank4;
  return out;
}

TwoForm symplectic_form(const Vec3Expr& xi, const Expr& h) {
  return {simplify(scale(Expr(-1), rot(xi))), simplify(Vec3Expr(d_dy(xi) - grad(h)))};
}

Rank2Tensor rank2_build(const Vec3Expr& phi, const Vec3Expr& sigma) {
  Rank2Tensor out;
  out.tensor = simplify(make_mv2(cross(phi, sigma), phi));
  Vec3Expr br = lie_bracket(make_mv1(sigma, Expr()), make_mv1(phi, Expr())).w;
  out.residual = simplify(cross(phi, Vec3Expr(br + d_dy(phi))));
  return out;
}

FamilyTensor rank2_psi_build(const Vec3Expr& psi) {
  return {simplify(make_mv2(psi, zero_vec3())), simplify(dot(psi, rot(psi)))};
}

MV1 rank2_hamiltonian(const Vec3Expr& phi, const Vec3Expr& sigma, const Expr& h) {
  MV1 t = make_mv1(sigma, Expr(1));
  MV1 p = make_mv1(phi, Expr());
  return simplify(directional(p, h) * t - directional(t, h) * p);
}

MV1 rank2_modular(const Vec3Expr& phi, const Vec3Expr& sigma) {
  MV1 t = make_mv1(sigma, Expr(1));
  MV1 p = make_mv1(phi, Expr());
  return simplify(lie_bracket(t, p) - div(phi) * t + div(sigma) * p);
}

Expr rank2_leaf_form(const Vec3Expr& phi, const Vec3Expr& sigma, const MV1& u, const MV1& v) {
  auto tform = [&](const MV1& x) { return dot(sigma, x.w) + x.b; };
  Expr num = dot(phi, u.w) * tform(v) - dot(phi, v.w) * tform(u);
  Vec3Expr ps = cross(phi, sigma);
  return simplify(num / (dot(phi, phi) + dot(ps, ps)));
}

MV2 rank2_wedge_residual(const MV2& l) {
  MV2 w = wedge(sharp(l, OneForm{kX, Expr()}), sharp(l, OneForm{zero_vec3(), Expr(1)}));
  return simplify(dot(l.phi, kX) * l - Expr(signs::kRank2Wedge) * w);
}

MV2 dirac(const MV2& l, const Expr& f, const Expr& g, const SamplerConfig& cfg) {
  Expr b = bracket(l, f, g);
  require_nonzero(b, "bracket of the pair vanishes", cfg);
  return simplify(l - divide(wedge(hamiltonian(l, f), hamiltonian(l, g)), b));
}

Decomposition decompose_fg(const MV2& l, const Expr& f, const Expr& g, const SamplerConfig& cfg) {
  Expr b = bracket(l, f, g);
  require_nonzero(b, "bracket of the pair vanishes", cfg);
  MV2 s = s_tensor(f, g);
  Decomposition out;
  out.signs = {signs::kDecomposeFg};
  out.parts.emplace_back("hamiltonian_wedge", divide(wedge(hamiltonian(l, f), hamiltonian(l, g)), b));
  out.parts.emplace_back("transversal", divide(Expr(signs::kDecomposeFg) * dot(l.psi, l.phi) * s, b));
  out.residual = simplify(l - out.parts[0].second - out.parts[1].second);
  out.verdict = zero_verdict(out.residual, cfg);
  out.checks.emplace_back("s_poisson", is_poisson(s));
  out.checks.emplace_back("s_annihilates_f", is_casimir(s, f));
  out.checks.emplace_back("s_annihilates_g", is_casimir(s, g));
  return out;
}

ModularDecomposition decompose_modular(const MV2& l, const SamplerConfig& cfg) {
  MV1 z = modular(l);
  Expr d = simplify(div(l.phi));
  MV1 phi_x = make_mv1(l.phi, Expr());
  MV2 zw = wedge(z, phi_x);
  MV2 gradient = make_mv2(grad(dot(l.phi, l.psi)), zero_vec3());
  ModularDecomposition out;
  Decomposition& m = out.multiplied;
  m.signs = {signs::kModularWedge, signs::kModularGradient};
  m.parts.emplace_back("modular_wedge", simplify(Expr(signs::kModularWedge) * zw));
  m.parts.emplace_back("gradient", simplify(Expr(signs::kModularGradient) * gradient));
  m.residual = simplify(d * l - m.parts[0].second - m.parts[1].second);
  m.verdict = zero_verdict(m.residual, cfg);
  if (!zero_verdict(d, cfg).is_zero()) {
    Decomposition dv;
    dv.signs = m.signs;
    dv.parts.emplace_back("modular_wedge", divide(m.parts[0].second, d));
    dv.parts.emplace_back("lambda0", divide(m.parts[1].second, d));
    dv.residual = simplify(l - dv.parts[0].second - dv.parts[1].second);
    dv.verdict = zero_verdict(dv.residual, cfg);
    out.divided = std::move(dv);
  }
  if (zero_verdict(dot(l.phi, l.psi), cfg).is_zero()) {
    Decomposition r;
    r.signs = {signs::kModularWedge};
    r.parts.emplace_back("modular_wedge", m.parts[0].second);
    r.residual = simplify(d * l - r.parts[0].second);
    r.verdict = zero_verdict(r.residual, cfg);
    out.rank2 = std::move(r);
  }
  return out;
}

namespace {

bool dual_on_samples(const std::array<Expr, 2>& ks, const std::array<MV1, 2>& vs, const SamplerConfig& cfg) {
  for (const Point4& p : sample_points(cfg, cfg.samples)) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double v = 0.0;
        try {
          v = eval(directional(vs[j], ks[i]), p);
        } catch (const DomainError&) {
          continue;
        }
        if (std::abs(v - (i == j ? 1.0 : 0.0)) > kZeroTolerance) return false;
      }
    }
  }
  return true;
}

Expr transversal_scalar(const MV1& v, const Expr& f) {
  return simplify(-full_div(v) + directional(v, f) / f);
}

void fill_preservation(TransversalReport& r, const Expr& f, const SamplerConfig& cfg) {
  if (!nonvanishing_on_samples(f, cfg)) throw PreconditionError("f vanishes on samples");
  r.s1 = transversal_scalar(r.v1, f);
  r.s2 = transversal_scalar(r.v2, f);
  const MV1* vs[2] = {&r.v1, &r.v2};
  const Expr* ss[2] = {&r.s1, &r.s2};
  for (int i = 0; i < 2; ++i) {
    MV2 res = lie_derivative_mv2(*vs[i], r.tensor) - Expr(signs::kTransversal) * *ss[i] * r.tensor;
    r.preserves[i] = zero_verdict(res, cfg);
  }
}

}  // namespace

TransversalReport transversal_fields(const Expr& k1, const Expr& k2, const Expr& f, const SamplerConfig& cfg) {
  Vec3Expr g1 = grad(k1), g2 = grad(k2);
  Vec3Expr n = cross(g1, g2);
  Expr nn = simplify(dot(n, n));
  if (!nonvanishing_on_samples(nn, cfg)) throw PreconditionError("Casimir gradients are dependent on samples");
  TransversalReport r;
  r.tensor = two_casimir_family(k1, k2, f);
  r.v1 = make_mv1(divide(cross(g2, n), nn), Expr());
  r.v2 = make_mv1(divide(scale(Expr(-1), cross(g1, n)), nn), Expr());
  r.dual = dual_on_samples({k1, k2}, {r.v1, r.v2}, cfg);
  fill_preservation(r, f, cfg);
  return r;
}

TransversalReport transversal_fields(const Expr& k, const Expr& f, const std::optional<Vec3Expr>& alpha,
                                     const SamplerConfig& cfg) {
  Vec3Expr gk = grad(k);
  Expr g2 = simplify(dot(gk, gk));
  if (!nonvanishing_on_samples(g2, cfg)) throw PreconditionError("gradient of k vanishes on samples");
  TransversalReport r;
  r.tensor = simplify(make_mv2(scale(f, gk), zero_vec3()));
  Vec3Expr unit = divide(gk, g2);
  r.v1 = make_mv1(unit, Expr());
  r.v2 = simplify(make_mv1(scale(-d_dy(k), unit), Expr(1)));
  r.dual = dual_on_samples({k, kY}, {r.v1, r.v2}, cfg);
  fill_preservation(r, f, cfg);
  if (alpha) {
    require_nonzero(r.s1, "transversal scalar of V1 vanishes", cfg);
    Expr flux = dot(gk, rot(*alpha));
    r.lambda = simplify(-(r.s2 + f * flux) / r.s1);
    r.lambda_quotient = simplify((flux - r.s2) / r.s1);
    r.z = simplify(*r.lambda * r.v1 + r.v2 + sharp(r.tensor, OneForm{*alpha, Expr()}));
    r.lambda_casimir = is_casimir(r.tensor, *r.lambda, cfg);
    r.z_automorphism = zero_verdict(lie_derivative_mv2(*r.z, r.tensor), cfg);
  }
  return r;
}

}  // namespace p4
