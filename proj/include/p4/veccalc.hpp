#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "p4/expr.hpp"

namespace p4 {

using Vec3Expr = Eigen::Matrix<Expr, 3, 1>;
using Mat3Expr = Eigen::Matrix<Expr, 3, 3>;

Vec3Expr vec3(const Expr& a, const Expr& b, const Expr& c);
Vec3Expr parse_vec3(std::string_view a, std::string_view b, std::string_view c);
// Comma-separated triple, e.g. "x1, 0, y^2".
Vec3Expr parse_vec3(std::string_view csv);
Vec3Expr zero_vec3();
Vec3Expr unit_vec3(int i);
std::array<std::string, 3> render(const Vec3Expr& v);

Vec3Expr simplify(const Vec3Expr& v);
Mat3Expr simplify(const Mat3Expr& m);

// Simplified products; Eigen's own dot/cross give raw trees.
Expr dot(const Vec3Expr& a, const Vec3Expr& b);
Vec3Expr cross(const Vec3Expr& a, const Vec3Expr& b);
Vec3Expr scale(const Expr& s, const Vec3Expr& v);

Vec3Expr grad(const Expr& f);
Expr div(const Vec3Expr& v);
Vec3Expr rot(const Vec3Expr& v);
Expr d_dy(const Expr& f);
Vec3Expr d_dy(const Vec3Expr& v);
Vec3Expr diff(const Vec3Expr& v, Var var);
Mat3Expr jacobian_x(const Vec3Expr& s);

Expr det(const Mat3Expr& m);
// Transposed adjugate: cofactor(m) = det(m) * m^{-T}.
Mat3Expr cofactor(const Mat3Expr& m);

Eigen::Vector3d eval(const Vec3Expr& v, const Point4& p);
Eigen::Matrix3d eval(const Mat3Expr& m, const Point4& p);

Vec3Expr substitute(const Vec3Expr& v, const std::array<Expr, 4>& values);
bool is_constant(const Vec3Expr& v);

}  // namespace p4
