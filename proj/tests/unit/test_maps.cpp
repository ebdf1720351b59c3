#include <gtest/gtest.h>

#include "p4/families.hpp"
#include "p4/maps.hpp"
#include "p4/random.hpp"
#include "p4/signs.hpp"

namespace p4 {
namespace {

const Expr x1(Var::x1), x2(Var::x2), x3(Var::x3), y(Var::y);

MV2 example2() { return make_mv2(parse_vec3("2*x1", "0", "0"), parse_vec3("x1/2", "x2/4", "x3/4")); }
MV2 canonical() { return make_mv2(parse_vec3("0", "0", "1"), parse_vec3("0", "0", "1")); }
MV2 plane12() { return make_mv2(parse_vec3("0", "0", "1"), zero_vec3()); }

template <class MV>
bool zero(const MV& a) {
  return zero_verdict(a).is_zero();
}

Diffeo4 random_diffeo(RandomExprs& gen) {
  Diffeo4 f;
  f.s = Vec3Expr(vec3(x1, x2, x3) + gen.vec3(2, 2));
  f.h = y + gen.polynomial(2, 2);
  return f;
}

TEST(PoissonMap, IdentityPasses) {
  RandomExprs gen(101);
  EXPECT_TRUE(poisson_map_check(example2(), Diffeo4{}).passes);
  EXPECT_TRUE(poisson_map_check(gen.mv2(), Diffeo4{}).passes);
}

TEST(PoissonMap, ScalingFailsWithWitnessPair) {
  Diffeo4 f{parse_vec3("2*x1", "2*x2", "2*x3"), y};
  PoissonMapReport r = poisson_map_check(canonical(), f);
  EXPECT_FALSE(r.passes);
  ASSERT_TRUE(r.witness_pair.has_value());
  EXPECT_EQ(r.witness_pair->first, Var::x1);
  EXPECT_EQ(r.witness_pair->second, Var::x2);
  EXPECT_DOUBLE_EQ(r.composed, 4.0);
  EXPECT_DOUBLE_EQ(r.target, 1.0);
}

TEST(PoissonMap, ShearInYPreservesPlaneTensor) {
  Diffeo4 f{vec3(x1, x2, x3), parse("x3 + y")};
  EXPECT_TRUE(poisson_map_check(plane12(), f).passes);
}

TEST(PoissonMap, DegenerateMapThrows) {
  Diffeo4 f{vec3(x1, x1, x3), y};
  EXPECT_THROW(poisson_map_check(canonical(), f), PreconditionError);
}

TEST(PoissonMap, ExplicitTargetAndDeterminantRelation) {
  Diffeo4 f{parse_vec3("2*x1", "x2", "x3"), y};
  MV2 target = make_mv2(parse_vec3("0", "0", "2"), parse_vec3("0", "0", "1"));
  PoissonMapReport r = poisson_map_check(canonical(), f, target);
  EXPECT_TRUE(r.passes);
  EXPECT_TRUE(r.determinant.is_zero());
}

TEST(PoissonMap, PolynomialFlowsOfHamiltonianFieldsArePoissonMaps) {
  // X_{x1²/2} = x1 ∂2 and X_{-x2²/2} = x2 ∂1 have exact flows.
  for (const Expr& t : {Expr(Rational(1, 2)), Expr(-3), Expr(Rational(7, 5))}) {
    EXPECT_TRUE(poisson_map_check(canonical(), Diffeo4{vec3(x1, x2 + t * x1, x3), y}).passes);
    EXPECT_TRUE(poisson_map_check(canonical(), Diffeo4{vec3(x1 + t * x2, x2, x3), y}).passes);
  }
  EXPECT_TRUE(zero(hamiltonian(canonical(), parse("x1^2/2")) - make_mv1(vec3(Expr(), x1, Expr()), Expr())));
}

TEST(Pushforward, CoordinateFormsMatchComposedComponents) {
  RandomExprs gen(102);
  for (int i = 0; i < 5; ++i) {
    MV2 l = gen.mv2(1, 2);
    Diffeo4 f = random_diffeo(gen);
    MV2 pushed = pushforward_composed(l, f);
    EXPECT_TRUE(zero(make_mv1(Vec3Expr(pushed.psi - pushforward_psi_form(l, f, signs::kPushforwardPsi)), Expr())));
    EXPECT_TRUE(zero(make_mv1(Vec3Expr(pushed.phi - pushforward_phi_form(l, f, signs::kPushforwardPhi)), Expr())));
  }
}

TEST(Pushforward, PhiRowIsMinusPushedHamiltonianField) {
  RandomExprs gen(103);
  for (int i = 0; i < 5; ++i) {
    MV2 l = gen.mv2(1, 2);
    Diffeo4 f = random_diffeo(gen);
    MV1 xh = hamiltonian(l, f.h);
    Vec3Expr pushed_field;
    for (int a = 0; a < 3; ++a) pushed_field[a] = directional(xh, f.s[a]);
    Vec3Expr diffv = pushforward_composed(l, f).phi + pushed_field;
    EXPECT_TRUE(zero(make_mv1(diffv, Expr())));
  }
}

TEST(Pushforward, PfaffianScalesByDeterminant) {
  RandomExprs gen(104);
  for (int i = 0; i < 5; ++i) {
    MV2 l = gen.mv2(1, 2);
    Diffeo4 f = random_diffeo(gen);
    MV2 p = pushforward_composed(l, f);
    EXPECT_TRUE(zero_verdict(dot(p.psi, p.phi) - jacobian_det(f) * dot(l.psi, l.phi)).is_zero());
  }
}

TEST(PoissonVf, Examples) {
  SymmetryReport a = poisson_vf_check(example2(), basis_field(Var::y));
  EXPECT_TRUE(a.passes);
  EXPECT_TRUE(a.agree);
  SymmetryReport b = poisson_vf_check(example2(), modular(example2()));
  EXPECT_TRUE(b.passes);
  SymmetryReport c = poisson_vf_check(canonical(), make_mv1(vec3(x2, Expr(), Expr()), Expr()));
  EXPECT_TRUE(c.passes);
  EXPECT_TRUE(zero(hamiltonian(canonical(), parse("-x2^2/2")) - make_mv1(vec3(x2, Expr(), Expr()), Expr())));
  SymmetryReport d = poisson_vf_check(canonical(), make_mv1(vec3(x1, Expr(), Expr()), Expr()));
  EXPECT_FALSE(d.passes);
  EXPECT_TRUE(d.agree);
}

TEST(PoissonVf, CoordinateFormsEqualLieDerivative) {
  RandomExprs gen(105);
  for (int i = 0; i < 10; ++i) {
    SymmetryReport r = poisson_vf_check(gen.mv2(1, 2), gen.mv1(2, 2));
    EXPECT_TRUE(r.form_matches.is_zero());
    EXPECT_TRUE(r.agree);
  }
}

TEST(PoissonVf, HamiltonianFieldsOfPoissonTensorsPass) {
  RandomExprs gen(106);
  std::vector<MV2> tensors = {example2(), canonical(), two_casimir_family(gen.polynomial(2, 2), gen.polynomial(2, 2), Expr(1))};
  for (const MV2& l : tensors) {
    for (int i = 0; i < 10; ++i) {
      SymmetryReport r = poisson_vf_check(l, hamiltonian(l, gen.polynomial(2, 3)));
      EXPECT_TRUE(r.passes);
      EXPECT_TRUE(r.agree);
    }
  }
}

TEST(TangentPvf, TrivialFormGivesPhi) {
  TangentReport r = tangent_pvf(example2(), zero_vec3(), Expr(-1));
  EXPECT_TRUE(zero(r.field - make_mv1(example2().phi, Expr())));
  EXPECT_TRUE(zero(r.field - hamiltonian(example2(), -y)));
  EXPECT_EQ(r.conditions.kind, ZeroVerdict::Kind::symbolic_zero);
  EXPECT_TRUE(poisson_vf_check(example2(), r.field).passes);
}

TEST(TangentPvf, ExactFormsGiveHamiltonianFields) {
  RandomExprs gen(107);
  std::vector<MV2> tensors = {example2(), canonical(), rank2_psi_build(grad(parse("(x1^2 + x2^2 + x3^2)/2"))).tensor};
  for (const MV2& l : tensors) {
    for (int i = 0; i < 5; ++i) {
      Expr u = gen.polynomial(2, 3);
      TangentReport r = tangent_pvf(l, grad(u), d_dy(u));
      EXPECT_TRUE(zero(r.field - hamiltonian(l, u)));
      EXPECT_TRUE(r.conditions.is_zero());
      EXPECT_TRUE(poisson_vf_check(l, r.field).passes);
    }
  }
}

TEST(TangentPvf, GenericFormsFail) {
  TangentReport r = tangent_pvf(canonical(), parse_vec3("x2*y", "x3^2", "x1"), parse("x1*x2"));
  EXPECT_FALSE(r.conditions.is_zero());
  EXPECT_FALSE(poisson_vf_check(canonical(), r.field).passes);
}

TEST(TangentPvf, LieDerivativeIsSignedClosureResidual) {
  RandomExprs gen(108);
  std::vector<MV2> tensors = {example2(), canonical()};
  for (const MV2& l : tensors) {
    for (int i = 0; i < 5; ++i) {
      TangentReport r = tangent_pvf(l, gen.vec3(1, 2), gen.polynomial(2, 2));
      MV2 lie = lie_derivative_mv2(r.field, l);
      MV2 res = make_mv2(r.residual_psi, r.residual_phi);
      EXPECT_TRUE(zero(lie - Expr(signs::kTangentConditions) * res));
    }
  }
}

TEST(TangentPvf, RankTwoUsesScalarCondition) {
  MV2 l = rank2_psi_build(grad(parse("(x1^2 + x2^2 + x3^2)/2"))).tensor;
  TangentReport r = tangent_pvf(l, parse_vec3("x2", "0", "0"), Expr());
  EXPECT_TRUE(r.rank2);
  ASSERT_TRUE(r.rank2_residual.has_value());
  EXPECT_EQ(r.conditions.is_zero(), zero_verdict(*r.rank2_residual).is_zero());
}

TEST(CasimirNormalForm, Examples) {
  NormalForm a = casimir_normal_form(plane12(), parse("x3 + y"));
  EXPECT_TRUE(zero(make_mv1(Vec3Expr(a.psi - unit_vec3(2)), Expr())));
  EXPECT_EQ(a.phi_verdict.kind, ZeroVerdict::Kind::symbolic_zero);

  Expr g = parse("x1^2*x2 + x3");
  MV2 l = two_casimir_family(y, g, Expr(1));
  NormalForm b = casimir_normal_form(l, y);
  EXPECT_TRUE(zero(make_mv1(Vec3Expr(b.psi - l.psi), Expr())));
  EXPECT_TRUE(b.phi_verdict.is_zero());
}

TEST(CasimirNormalForm, CasimirWithVaryingYDerivative) {
  SamplerConfig box;
  box.filter = [](const Point4& p) { return p[2] > -1.0; };
  RandomExprs gen(109);
  Expr k = parse("x3*y + y");
  for (int i = 0; i < 3; ++i) {
    FamilyTensor t = casimir_family(k, zero_vec3(), gen.polynomial(1, 2));
    ASSERT_EQ(t.residual, Expr());
    NormalForm n = casimir_normal_form(t.tensor, k, box);
    EXPECT_TRUE(n.phi_verdict.is_zero());
  }
}

TEST(CasimirNormalForm, Preconditions) {
  EXPECT_THROW(casimir_normal_form(canonical(), x1), PreconditionError);
  EXPECT_THROW(casimir_normal_form(plane12(), x3), PreconditionError);
}

}  // namespace
}  // namespace p4
