#include "p4/multivec.hpp"

#include <bit>

#include "p4/signs.hpp"

namespace p4 {

MV1 basis_field(Var v) {
  MV1 x;
  if (v == Var::y) {
    x.b = Expr(1);
  } else {
    x.w[index(v)] = Expr(1);
  }
  return x;
}

MV1 make_mv1(const Vec3Expr& w, const Expr& b) { return MV1{w, b}; }
MV2 make_mv2(const Vec3Expr& psi, const Vec3Expr& phi) { return MV2{psi, phi}; }

MV1 operator+(const MV1& a, const MV1& b) { return {a.w + b.w, a.b + b.b}; }
MV2 operator+(const MV2& a, const MV2& b) { return {a.psi + b.psi, a.phi + b.phi}; }
MV3 operator+(const MV3& a, const MV3& b) { return {a.g + b.g, a.sigma + b.sigma}; }
MV4 operator+(const MV4& a, const MV4& b) { return {a.f + b.f}; }
MV1 operator-(const MV1& a) { return {-a.w, -a.b}; }
MV2 operator-(const MV2& a) { return {-a.psi, -a.phi}; }
MV3 operator-(const MV3& a) { return {-a.g, -a.sigma}; }
MV4 operator-(const MV4& a) { return {-a.f}; }
MV1 operator-(const MV1& a, const MV1& b) { return {a.w - b.w, a.b - b.b}; }
MV2 operator-(const MV2& a, const MV2& b) { return {a.psi - b.psi, a.phi - b.phi}; }
MV3 operator-(const MV3& a, const MV3& b) { return {a.g - b.g, a.sigma - b.sigma}; }
MV4 operator-(const MV4& a, const MV4& b) { return {a.f - b.f}; }
MV1 operator*(const Expr& s, const MV1& a) { return {a.w * s, s * a.b}; }
MV2 operator*(const Expr& s, const MV2& a) { return {a.psi * s, a.phi * s}; }
MV3 operator*(const Expr& s, const MV3& a) { return {s * a.g, a.sigma * s}; }
MV4 operator*(const Expr& s, const MV4& a) { return {s * a.f}; }

MV1 simplify(const MV1& a) { return {simplify(a.w), simplify(a.b)}; }
MV2 simplify(const MV2& a) { return {simplify(a.psi), simplify(a.phi)}; }
MV3 simplify(const MV3& a) { return {simplify(a.g), simplify(a.sigma)}; }
MV4 simplify(const MV4& a) { return {simplify(a.f)}; }

std::vector<Expr> coefficients(const MV1& a) { return {a.w[0], a.w[1], a.w[2], a.b}; }
std::vector<Expr> coefficients(const MV2& a) {
  return {a.psi[0], a.psi[1], a.psi[2], a.phi[0], a.phi[1], a.phi[2]};
}
std::vector<Expr> coefficients(const MV3& a) { return {a.g, a.sigma[0], a.sigma[1], a.sigma[2]}; }
std::vector<Expr> coefficients(const MV4& a) { return {a.f}; }

Expr directional(const MV1& x, const Expr& f) {
  Expr out = x.b * diff(f, Var::y);
  for (int i = 0; i < 3; ++i) out += x.w[i] * diff(f, kSpaceVars[i]);
  return simplify(out);
}

// ---------------------------------------------------------------------------
// Components

namespace {

unsigned bit(int i) { return 1u << i; }

std::vector<int> indices_of(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i) {
    if (mask & bit(i)) out.push_back(i);
  }
  return out;
}

// Number of elements of mask greater than i.
int count_above(unsigned mask, int i) { return std::popcount(mask >> (i + 1)); }
int count_below(unsigned mask, int i) { return std::popcount(mask & (bit(i) - 1)); }

Expr signed_expr(int parity, const Expr& e) { return parity % 2 ? -e : e; }

Expr component_of(const MV1& x, int i) { return i < 3 ? x.w[i] : x.b; }

}  // namespace

Components::Components(int grade) : grade_(grade) {
  if (grade < 0 || grade > 4) throw PreconditionError("grade must be in 0..4");
}

Expr Components::at(std::span<const int> indices) const {
  std::vector<int> idx(indices.begin(), indices.end());
  int swaps = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return Expr();
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        ++swaps;
      }
    }
  }
  unsigned mask = 0;
  for (int i : idx) {
    if (mask & bit(i)) return Expr();
    mask |= bit(i);
  }
  return signed_expr(swaps, coeff_[mask]);
}

std::vector<unsigned> Components::masks(int grade) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < 16; ++m) {
    if (std::popcount(m) == grade) out.push_back(m);
  }
  return out;
}

Components to_components(const MV1& a) {
  Components c(1);
  for (int i = 0; i < 4; ++i) c[bit(i)] = component_of(a, i);
  return c;
}

Components to_components(const MV2& a) {
  Components c(2);
  c[bit(1) | bit(2)] = a.psi[0];
  c[bit(0) | bit(2)] = -a.psi[1];
  c[bit(0) | bit(1)] = a.psi[2];
  for (int i = 0; i < 3; ++i) c[bit(i) | bit(3)] = a.phi[i];
  return c;
}

Components to_components(const MV3& a) {
  Components c(3);
  c[bit(0) | bit(1) | bit(2)] = a.g;
  c[bit(1) | bit(2) | bit(3)] = a.sigma[0];
  c[bit(0) | bit(2) | bit(3)] = -a.sigma[1];
  c[bit(0) | bit(1) | bit(3)] = a.sigma[2];
  return c;
}

Components to_components(const MV4& a) {
  Components c(4);
  c[15] = a.f;
  return c;
}

namespace {

void require_grade(const Components& c, int grade) {
  if (c.grade() != grade) throw PreconditionError("unexpected multivector grade");
}

}  // namespace

MV1 to_mv1(const Components& c) {
  require_grade(c, 1);
  return {vec3(c[bit(0)], c[bit(1)], c[bit(2)]), c[bit(3)]};
}

MV2 to_mv2(const Components& c) {
  require_grade(c, 2);
  MV2 out;
  out.psi = vec3(c[bit(1) | bit(2)], -c[bit(0) | bit(2)], c[bit(0) | bit(1)]);
  out.phi = vec3(c[bit(0) | bit(3)], c[bit(1) | bit(3)], c[bit(2) | bit(3)]);
  return out;
}

MV3 to_mv3(const Components& c) {
  require_grade(c, 3);
  MV3 out;
  out.g = c[bit(0) | bit(1) | bit(2)];
  out.sigma = vec3(c[bit(1) | bit(2) | bit(3)], -c[bit(0) | bit(2) | bit(3)], c[bit(0) | bit(1) | bit(3)]);
  return out;
}

MV4 to_mv4(const Components& c) {
  require_grade(c, 4);
  return {c[15]};
}

Components simplify(const Components& c) {
  Components out(c.grade());
  for (unsigned m : Components::masks(c.grade())) out[m] = simplify(c[m]);
  return out;
}

Components scale(const Expr& s, const Components& a) {
  Components out(a.grade());
  for (unsigned m : Components::masks(a.grade())) out[m] = s * a[m];
  return out;
}

Components wedge(const Components& a, const Components& b) {
  const int grade = a.grade() + b.grade();
  if (grade > 4) throw PreconditionError("wedge product exceeds grade 4");
  Components out(grade);
  for (unsigned ma : Components::masks(a.grade())) {
    if (a[ma].is_zero()) continue;
    for (unsigned mb : Components::masks(b.grade())) {
      if ((ma & mb) != 0 || b[mb].is_zero()) continue;
      int inversions = 0;
      for (int j : indices_of(mb)) inversions += count_above(ma, j);
      out[ma | mb] += signed_expr(inversions, a[ma] * b[mb]);
    }
  }
  return simplify(out);
}

Components trace(const Components& a) {
  if (a.grade() == 0) throw PreconditionError("trace of a function is not defined");
  Components out(a.grade() - 1);
  for (unsigned m : Components::masks(a.grade() - 1)) {
    Expr sum;
    for (int j = 0; j < 4; ++j) {
      if (m & bit(j)) continue;
      sum += signed_expr(count_above(m, j), diff(a[m | bit(j)], kAllVars[j]));
    }
    out[m] = simplify(sum);
  }
  return out;
}

Components lie_derivative(const MV1& x, const Components& a) {
  Components out(a.grade());
  std::array<std::array<Expr, 4>, 4> dx;  // dx[m][i] = ∂_m X^i
  for (int m = 0; m < 4; ++m) {
    for (int i = 0; i < 4; ++i) dx[m][i] = diff(component_of(x, i), kAllVars[m]);
  }
  for (unsigned mask : Components::masks(a.grade())) {
    Expr value = directional(x, a[mask]);
    std::vector<int> idx = indices_of(mask);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (int m = 0; m < 4; ++m) {
        if (dx[m][idx[r]].is_zero()) continue;
        std::vector<int> replaced = idx;
        replaced[r] = m;
        value -= a.at(replaced) * dx[m][idx[r]];
      }
    }
    out[mask] = simplify(value);
  }
  return out;
}

Components contract_first(const std::array<Expr, 4>& form, const Components& a) {
  if (a.grade() == 0) throw PreconditionError("cannot contract a function");
  Components out(a.grade() - 1);
  for (unsigned m : Components::masks(a.grade() - 1)) {
    Expr sum;
    for (int i = 0; i < 4; ++i) {
      if (m & bit(i)) continue;
      sum += signed_expr(count_below(m, i), form[i] * a[m | bit(i)]);
    }
    out[m] = simplify(sum);
  }
  return out;
}

Expr component_bracket(const MV2& l, const Expr& f, const Expr& g) {
  Components c = to_components(l);
  std::array<Expr, 4> df, dg;
  for (int i = 0; i < 4; ++i) {
    df[i] = diff(f, kAllVars[i]);
    dg[i] = diff(g, kAllVars[i]);
  }
  Expr out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const int ij[2] = {i, j};
      out += c.at(ij) * df[i] * dg[j];
    }
  }
  return simplify(out);
}

Eigen::Matrix4d component_matrix(const MV2& l, const Point4& p) {
  Components c = to_components(l);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const int ij[2] = {i, j};
      m(i, j) = eval(c.at(ij), p);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Reduced coordinates

MV2 wedge(const MV1& a, const MV1& b) {
  MV2 out;
  out.psi = cross(a.w, b.w);
  out.phi = simplify(Vec3Expr((a.w * b.b - b.w * a.b) * Expr(signs::kWedgePhi)));
  return out;
}

MV3 wedge(const MV1& a, const MV2& b) {
  MV3 out;
  out.g = dot(a.w, b.psi);
  out.sigma = simplify(Vec3Expr(a.w.cross(b.phi) + b.psi * a.b));
  return out;
}

MV3 wedge(const MV2& a, const MV1& b) { return wedge(b, a); }

MV4 wedge(const MV1& a, const MV3& b) { return {simplify(a.w.dot(b.sigma) - a.b * b.g)}; }

MV4 wedge(const MV3& a, const MV1& b) { return {simplify(b.b * a.g - b.w.dot(a.sigma))}; }

MV4 wedge(const MV2& a, const MV2& b) { return {simplify(a.psi.dot(b.phi) + a.phi.dot(b.psi))}; }

Expr trace(const MV1& a) { return simplify(div(a.w) + d_dy(a.b)); }

MV1 trace(const MV2& a) { return {simplify(Vec3Expr(rot(a.psi) + d_dy(a.phi))), simplify(-div(a.phi))}; }

MV2 trace(const MV3& a) { return {simplify(Vec3Expr(grad(a.g) + d_dy(a.sigma))), simplify(Vec3Expr(-rot(a.sigma)))}; }

MV3 trace(const MV4& a) { return {d_dy(a.f), simplify(Vec3Expr(-grad(a.f)))}; }

namespace {

void require_nonvanishing(const Expr& f, const SamplerConfig& cfg) {
  if (!nonvanishing_on_samples(f, cfg)) {
    throw PreconditionError("rescaling function vanishes on the sampling box");
  }
}

Components rescaled(const Components& a, const Expr& f, const SamplerConfig& cfg) {
  require_nonvanishing(f, cfg);
  return simplify(scale(Expr(1) / f, trace(scale(f, a))));
}

}  // namespace

Expr trace_rescaled(const MV1& a, const Expr& f, const SamplerConfig& cfg) {
  return rescaled(to_components(a), f, cfg)[0];
}
MV1 trace_rescaled(const MV2& a, const Expr& f, const SamplerConfig& cfg) {
  return to_mv1(rescaled(to_components(a), f, cfg));
}
MV2 trace_rescaled(const MV3& a, const Expr& f, const SamplerConfig& cfg) {
  return to_mv2(rescaled(to_components(a), f, cfg));
}
MV3 trace_rescaled(const MV4& a, const Expr& f, const SamplerConfig& cfg) {
  return to_mv3(rescaled(to_components(a), f, cfg));
}

MV1 lie_bracket(const MV1& x, const MV1& y) {
  MV1 out;
  for (int i = 0; i < 3; ++i) out.w[i] = simplify(directional(x, y.w[i]) - directional(y, x.w[i]));
  out.b = simplify(directional(x, y.b) - directional(y, x.b));
  return out;
}

MV2 lie_derivative_mv2(const MV1& x, const MV2& l) { return to_mv2(lie_derivative(x, to_components(l))); }

MV3 jacobiator_trivector(const MV2& l) {
  auto jac = [&](Var a, Var b, Var c) {
    Expr f(a), g(b), h(c);
    return simplify(component_bracket(l, f, component_bracket(l, g, h)) +
                    component_bracket(l, h, component_bracket(l, f, g)) +
                    component_bracket(l, g, component_bracket(l, h, f)));
  };
  MV3 out;
  out.g = jac(Var::x1, Var::x2, Var::x3);
  out.sigma = vec3(jac(Var::x2, Var::x3, Var::y), jac(Var::x3, Var::x1, Var::y), jac(Var::x1, Var::x2, Var::y));
  return out;
}

MV3 schouten_self(const MV2& a) { return simplify(Expr(2 * signs::kSchouten) * jacobiator_trivector(a)); }

MV3 schouten_22(const MV2& a, const MV2& b) {
  MV3 sum = schouten_self(a + b) - schouten_self(a) - schouten_self(b);
  return simplify(Expr(Rational(1, 2)) * sum);
}

namespace {

Components bracket_with_function(const Expr& f, const Components& a) {
  std::array<Expr, 4> df;
  for (int i = 0; i < 4; ++i) df[i] = diff(f, kAllVars[i]);
  return simplify(scale(Expr(-1), contract_first(df, a)));
}

}  // namespace

Expr schouten_function(const Expr& f, const MV1& a) { return bracket_with_function(f, to_components(a))[0]; }
MV1 schouten_function(const Expr& f, const MV2& a) { return to_mv1(bracket_with_function(f, to_components(a))); }
MV2 schouten_function(const Expr& f, const MV3& a) { return to_mv2(bracket_with_function(f, to_components(a))); }
MV3 schouten_function(const Expr& f, const MV4& a) { return to_mv3(bracket_with_function(f, to_components(a))); }

}  // namespace p4
