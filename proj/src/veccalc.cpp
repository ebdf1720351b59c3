#include "p4/veccalc.hpp"

#include <string>

namespace p4 {

Vec3Expr vec3(const Expr& a, const Expr& b, const Expr& c) {
  Vec3Expr v;
  v << a, b, c;
  return v;
}

Vec3Expr parse_vec3(std::string_view a, std::string_view b, std::string_view c) {
  return vec3(parse(a), parse(b), parse(c));
}

Vec3Expr parse_vec3(std::string_view csv) {
  std::array<std::string_view, 3> parts;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t comma = csv.find(',', start);
    if ((i < 2) != (comma != std::string_view::npos)) {
      throw ParseError("expected three comma-separated expressions", comma == std::string_view::npos ? csv.size() : comma);
    }
    parts[i] = csv.substr(start, i < 2 ? comma - start : std::string_view::npos);
    start = comma + 1;
  }
  return parse_vec3(parts[0], parts[1], parts[2]);
}

Vec3Expr zero_vec3() { return vec3(Expr(), Expr(), Expr()); }

Vec3Expr unit_vec3(int i) {
  Vec3Expr v = zero_vec3();
  v[i] = Expr(1);
  return v;
}

std::array<std::string, 3> render(const Vec3Expr& v) { return {render(v[0]), render(v[1]), render(v[2])}; }

Vec3Expr simplify(const Vec3Expr& v) { return vec3(simplify(v[0]), simplify(v[1]), simplify(v[2])); }

Mat3Expr simplify(const Mat3Expr& m) {
  Mat3Expr out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = simplify(m(i, j));
  }
  return out;
}

Expr dot(const Vec3Expr& a, const Vec3Expr& b) { return simplify(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]); }

Vec3Expr cross(const Vec3Expr& a, const Vec3Expr& b) { return simplify(Vec3Expr(a.cross(b))); }

Vec3Expr scale(const Expr& s, const Vec3Expr& v) { return simplify(Vec3Expr(v * s)); }

Vec3Expr grad(const Expr& f) { return vec3(diff(f, Var::x1), diff(f, Var::x2), diff(f, Var::x3)); }

Expr div(const Vec3Expr& v) {
  return simplify(diff(v[0], Var::x1) + diff(v[1], Var::x2) + diff(v[2], Var::x3));
}

Vec3Expr rot(const Vec3Expr& v) {
  return simplify(vec3(diff(v[2], Var::x2) - diff(v[1], Var::x3), diff(v[0], Var::x3) - diff(v[2], Var::x1),
                       diff(v[1], Var::x1) - diff(v[0], Var::x2)));
}

Expr d_dy(const Expr& f) { return diff(f, Var::y); }

Vec3Expr d_dy(const Vec3Expr& v) { return diff(v, Var::y); }

Vec3Expr diff(const Vec3Expr& v, Var var) { return vec3(diff(v[0], var), diff(v[1], var), diff(v[2], var)); }

Mat3Expr jacobian_x(const Vec3Expr& s) {
  Mat3Expr m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = diff(s[i], kSpaceVars[j]);
  }
  return m;
}

Expr det(const Mat3Expr& m) { return simplify(m.col(0).dot(m.col(1).cross(m.col(2)))); }

Mat3Expr cofactor(const Mat3Expr& m) {
  Mat3Expr c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = simplify(m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1));
    }
  }
  return c;
}

Eigen::Vector3d eval(const Vec3Expr& v, const Point4& p) {
  return Eigen::Vector3d(eval(v[0], p), eval(v[1], p), eval(v[2], p));
}

Eigen::Matrix3d eval(const Mat3Expr& m, const Point4& p) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = eval(m(i, j), p);
  }
  return out;
}

Vec3Expr substitute(const Vec3Expr& v, const std::array<Expr, 4>& values) {
  return vec3(substitute(v[0], values), substitute(v[1], values), substitute(v[2], values));
}

bool is_constant(const Vec3Expr& v) {
  for (int i = 0; i < 3; ++i) {
    Expr c = simplify(v[i]);
    for (Var var : kAllVars) {
      if (depends_on(c, var)) return false;
    }
  }
  return true;
}

}  // namespace p4
