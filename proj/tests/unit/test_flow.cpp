#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "p4/families.hpp"
#include "p4/flow.hpp"
#include "p4/random.hpp"

namespace p4 {
namespace {

const Expr x1(Var::x1), y(Var::y);
const Expr kG = parse("(x1^2 + x2^2 + x3^2)/2");

MV2 gradient_tensor() { return make_mv2(grad(kG), zero_vec3()); }
MV2 example2() { return make_mv2(parse_vec3("2*x1", "0", "0"), parse_vec3("x1/2", "x2/4", "x3/4")); }

TEST(Integrate, ConstantField) {
  Trajectory t = integrate(basis_field(Var::y), Point4::Zero(), 1.0, 0.1);
  EXPECT_EQ(t.points.size(), 11u);
  EXPECT_EQ(t.times.size(), t.points.size());
  EXPECT_LE((t.points.back() - Point4(0, 0, 0, 1)).norm(), 1e-15);
}

TEST(Integrate, CircularOrbitCloses) {
  MV1 x = hamiltonian(gradient_tensor(), x1);
  Point4 p0(0, 1, 0, 0);
  Trajectory t = integrate(x, p0, 2 * std::numbers::pi, 1e-3);
  EXPECT_LE((t.points.back() - p0).norm(), 1e-8);
}

TEST(Integrate, ModularFieldOfExampleTwo) {
  Trajectory t = integrate(modular(example2()), Point4(1, 1, 1, 1), 1.0, 0.01);
  EXPECT_LE((t.points.back() - Point4(1, 1, 1, 0)).norm(), 1e-12);
}

TEST(Integrate, UniformGrid) {
  Trajectory t = integrate(basis_field(Var::x1), Point4::Zero(), 1.0, 0.3);
  ASSERT_EQ(t.times.size(), 4u);
  for (std::size_t i = 1; i < t.times.size(); ++i) EXPECT_NEAR(t.times[i] - t.times[i - 1], 1.0 / 3, 1e-15);
}

TEST(Integrate, Errors) {
  EXPECT_THROW(integrate(basis_field(Var::y), Point4::Zero(), 1.0, 0.0), PreconditionError);
  EXPECT_THROW(integrate(basis_field(Var::y), Point4::Zero(), 0.01, 0.1), PreconditionError);
  MV1 pole = make_mv1(vec3(parse("ln(1 - y)"), Expr(), Expr()), Expr(1));
  EXPECT_THROW(integrate(pole, Point4::Zero(), 2.0, 0.5), DomainError);
}

TEST(Integrate, FourthOrderConvergence) {
  MV1 x = hamiltonian(gradient_tensor(), x1);
  Point4 p0(0, 1, 0, 0);
  const double t_end = 10.0;
  Point4 exact(0, std::cos(t_end), std::sin(t_end), 0);
  if ((integrate(x, p0, 0.1, 0.1).points.back() - Point4(0, std::cos(0.1), std::sin(0.1), 0)).norm() > 1e-3) {
    exact = Point4(0, std::cos(t_end), -std::sin(t_end), 0);
  }
  double e1 = (integrate(x, p0, t_end, 1e-2).points.back() - exact).norm();
  double e2 = (integrate(x, p0, t_end, 5e-3).points.back() - exact).norm();
  EXPECT_GE(e1 / e2, 12.0);
}

TEST(Conservation, CasimirsAlongGradientRotation) {
  MV2 l = gradient_tensor();
  Trajectory t = integrate(hamiltonian(l, x1), Point4(0.2, 0.6, 0.77, 0.1), 10.0, 1e-2);
  std::vector<Expr> inv = {kG, y};
  ConservationReport r = conservation_report(l, x1, inv, t);
  ASSERT_EQ(r.invariants.size(), 2u);
  for (const Drift& d : r.invariants) EXPECT_LE(d.max_drift, 1e-8) << d.name;
}

TEST(Conservation, LiouvilleVolumeIsPreserved) {
  MV2 l = liouville_family(parse("-x2"), vec3(Expr(), Expr(), x1)).tensor;
  RandomExprs gen(121);
  for (int i = 0; i < 5; ++i) {
    Expr h = gen.polynomial(2, 3);
    EXPECT_EQ(simplify(trace(hamiltonian(l, h))), Expr());
  }
  Expr h = parse("x1*x3 + y^2");
  ConservationReport r = conservation_report(l, h, {}, integrate(hamiltonian(l, h), Point4(0.1, 0.2, 0.3, 0.4), 1.0, 0.01));
  EXPECT_EQ(r.volume_verdict.kind, ZeroVerdict::Kind::symbolic_zero);
  EXPECT_EQ(r.max_volume_rate, 0.0);
}

TEST(Conservation, PairingDriftForModularFirstIntegral) {
  MV2 l = example2();
  Expr h = parse("x2");
  ConservationReport r = conservation_report(l, h, {}, integrate(hamiltonian(l, h), Point4(0.5, 0.5, 0.5, 0.5), 1.0, 0.01));
  EXPECT_TRUE(r.modular_first_integral);
  ASSERT_TRUE(r.pairing_drift.has_value());
  EXPECT_LE(*r.pairing_drift, 1e-8);
  ConservationReport s = conservation_report(l, y, {}, integrate(hamiltonian(l, y), Point4(0.5, 0.5, 0.5, 0.5), 0.1, 0.01));
  EXPECT_FALSE(s.modular_first_integral);
  EXPECT_FALSE(s.pairing_drift.has_value());
}

TEST(Conservation, CasimirDriftOnFamilyTensors) {
  RandomExprs gen(122);
  const Var space[3] = {Var::x1, Var::x2, Var::x3};
  for (int i = 0; i < 3; ++i) {
    Expr k1 = gen.polynomial(2, 2, space), k2 = y;
    MV2 l = two_casimir_family(k1, k2, Expr(1));
    Expr h = gen.polynomial(2, 2);
    Trajectory t;
    try {
      t = integrate(hamiltonian(l, h), Point4(0.1, -0.2, 0.15, 0.05), 1.0, 1e-2);
    } catch (const DomainError&) {
      continue;
    }
    bool inside = true;
    for (const Point4& p : t.points) inside = inside && p.cwiseAbs().maxCoeff() <= 2.0;
    if (!inside) continue;
    std::vector<Expr> inv = {k1, k2};
    for (const Drift& d : conservation_report(l, h, inv, t).invariants) EXPECT_LE(d.max_drift, 1e-6) << d.name;
  }
}

TEST(Conservation, NonzeroModularHasCoordinateWitness) {
  MV2 l = example2();
  bool found = false;
  for (Var v : kAllVars) found = found || !zero_verdict(trace(hamiltonian(l, Expr(v)))).is_zero();
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace p4
