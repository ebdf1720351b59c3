#include "p4/maps.hpp"

#include <bit>

#include "p4/signs.hpp"

namespace p4 {

namespace {

Vec3Expr apply(const Mat3Expr& m, const Vec3Expr& v) {
  Vec3Expr out;
  for (int i = 0; i < 3; ++i) out[i] = simplify(m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2]);
  return out;
}

std::array<std::array<Expr, 4>, 4> jacobian(const Diffeo4& f) {
  std::array<std::array<Expr, 4>, 4> j;
  auto comps = f.components();
  for (int a = 0; a < 4; ++a) {
    for (Var v : kAllVars) j[a][index(v)] = diff(comps[a], v);
  }
  return j;
}

}  // namespace

Expr jacobian_det(const Diffeo4& f) {
  auto j = jacobian(f);
  Eigen::Matrix<Expr, 4, 4> m;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) m(a, b) = j[a][b];
  }
  // Laplace expansion along the last row.
  Expr out;
  for (int col = 0; col < 4; ++col) {
    Mat3Expr minor;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0, k = 0; c < 4; ++c) {
        if (c != col) minor(r, k++) = m(r, c);
      }
    }
    Expr term = m(3, col) * det(minor);
    out += (3 + col) % 2 ? -term : term;
  }
  return simplify(out);
}

MV2 pushforward_composed(const MV2& l, const Diffeo4& f) {
  const Components src = to_components(l);
  const auto j = jacobian(f);
  Components out(2);
  for (unsigned mask : Components::masks(2)) {
    const int a = std::countr_zero(mask);
    const int b = 31 - std::countl_zero(mask);
    Expr sum;
    for (int i = 0; i < 4; ++i) {
      for (int k = i + 1; k < 4; ++k) {
        const std::array<int, 2> ik = {i, k};
        const Expr& c = src.at(ik);
        if (c.is_zero()) continue;
        sum += (j[a][i] * j[b][k] - j[a][k] * j[b][i]) * c;
      }
    }
    out[mask] = simplify(sum);
  }
  return to_mv2(out);
}

MV2 compose(const MV2& l, const Diffeo4& f) {
  auto comps = f.components();
  return simplify(make_mv2(substitute(l.psi, comps), substitute(l.phi, comps)));
}

PoissonMapReport poisson_map_check(const MV2& src, const Diffeo4& f, const std::optional<MV2>& dst,
                                   const SamplerConfig& cfg) {
  const Expr jd = jacobian_det(f);
  if (!nonvanishing_on_samples(jd, cfg)) throw PreconditionError("map is degenerate: det DF vanishes on samples");
  const MV2 pushed = pushforward_composed(src, f);
  const MV2 target = compose(dst.value_or(src), f);
  const Components pc = to_components(pushed);
  const Components tc = to_components(target);

  PoissonMapReport report;
  report.passes = true;
  for (std::size_t k = 0; k < kCoordinatePairs.size(); ++k) {
    const std::array<int, 2> ab = {index(kCoordinatePairs[k].first), index(kCoordinatePairs[k].second)};
    const Expr composed = pc.at(ab);
    const Expr wanted = tc.at(ab);
    report.pairs[k] = zero_verdict(composed - wanted, cfg);
    if (!report.pairs[k].is_zero() && report.passes) {
      report.passes = false;
      report.witness_pair = kCoordinatePairs[k];
      report.composed = eval(composed, report.pairs[k].witness);
      report.target = eval(wanted, report.pairs[k].witness);
    }
  }
  report.determinant = zero_verdict(dot(pushed.psi, pushed.phi) - jd * dot(src.psi, src.phi), cfg);
  return report;
}

Vec3Expr pushforward_psi_form(const MV2& l, const Diffeo4& f, int eps1) {
  const Mat3Expr dxs = jacobian_x(f.s);
  return simplify(Vec3Expr(apply(cofactor(dxs), l.psi) + scale(Expr(eps1), cross(apply(dxs, l.phi), d_dy(f.s)))));
}

Vec3Expr pushforward_phi_form(const MV2& l, const Diffeo4& f, int eps2) {
  const Mat3Expr dxs = jacobian_x(f.s);
  Vec3Expr out = scale(Expr(-1), apply(dxs, cross(l.psi, grad(f.h)))) + scale(d_dy(f.h), apply(dxs, l.phi)) -
                 scale(Expr(eps2) * dot(l.phi, grad(f.h)), d_dy(f.s));
  return simplify(out);
}

Vec3Expr vector_field_form_psi(const MV2& l, const MV1& x) {
  const Vec3Expr& w = x.w;
  Vec3Expr out = grad(dot(l.psi, w)) - scale(div(w), l.psi) - cross(w, rot(l.psi)) + scale(x.b, d_dy(l.psi)) +
                 cross(d_dy(w), l.phi);
  return simplify(out);
}

Vec3Expr vector_field_form_phi(const MV2& l, const MV1& x) {
  const Vec3Expr& w = x.w;
  Vec3Expr out = rot(cross(l.phi, w)) - scale(div(w), l.phi) + scale(div(l.phi), w) + cross(l.psi, grad(x.b)) -
                 scale(d_dy(x.b), l.phi) + scale(x.b, d_dy(l.phi));
  return simplify(out);
}

SymmetryReport poisson_vf_check(const MV2& l, const MV1& x, const SamplerConfig& cfg) {
  SymmetryReport r;
  r.definitional = simplify(lie_derivative_mv2(x, l));
  r.form_psi = vector_field_form_psi(l, x);
  r.form_phi = vector_field_form_phi(l, x);
  const MV2 form = make_mv2(r.form_psi, r.form_phi);
  r.definitional_verdict = zero_verdict(r.definitional, cfg);
  r.form_verdict = zero_verdict(form, cfg);
  r.form_matches = zero_verdict(r.definitional - Expr(signs::kVectorFieldForm) * form, cfg);
  r.agree = r.definitional_verdict.is_zero() == r.form_verdict.is_zero();
  r.passes = r.definitional_verdict.is_zero();
  return r;
}

TangentReport tangent_pvf(const MV2& l, const Vec3Expr& alpha, const Expr& g, const SamplerConfig& cfg) {
  TangentReport r;
  r.field = simplify(make_mv1(Vec3Expr(cross(l.psi, alpha) - scale(g, l.phi)), dot(alpha, l.phi)));
  const Vec3Expr u = Vec3Expr(d_dy(alpha) - grad(g));
  const Expr s = simplify(dot(u, l.phi) - dot(l.psi, rot(alpha)));
  const Expr pairing = dot(l.phi, l.psi);
  r.residual_psi = simplify(Vec3Expr(scale(s, l.psi) - scale(pairing, u)));
  r.residual_phi = simplify(Vec3Expr(scale(s, l.phi) + scale(pairing, rot(alpha))));
  r.rank2 = zero_verdict(pairing, cfg).is_zero();
  if (r.rank2) {
    r.rank2_residual = s;
    r.conditions = zero_verdict(s, cfg);
  } else {
    r.conditions = zero_verdict(make_mv2(r.residual_psi, r.residual_phi), cfg);
  }
  return r;
}

NormalForm casimir_normal_form(const MV2& l, const Expr& k, const SamplerConfig& cfg) {
  if (!is_casimir(l, k, cfg).is_zero()) throw PreconditionError("k is not a Casimir function");
  if (zero_verdict(d_dy(k), cfg).is_zero()) throw PreconditionError("k_y vanishes identically");
  Diffeo4 f;
  f.h = k;
  const MV2 pushed = pushforward_composed(l, f);
  NormalForm out;
  out.psi = pushed.psi;
  out.phi = pushed.phi;
  out.phi_verdict = zero_verdict(pushed.phi, cfg);
  return out;
}

}  // namespace p4
