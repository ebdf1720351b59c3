#include <gtest/gtest.h>

#include "p4/poisson.hpp"
#include "p4/random.hpp"

namespace p4 {
namespace {

MV2 example2() { return make_mv2(parse_vec3("2*x1", "0", "0"), parse_vec3("x1/2", "x2/4", "x3/4")); }
MV2 canonical() { return make_mv2(parse_vec3("0", "0", "1"), parse_vec3("0", "0", "1")); }
MV2 quadratic_k() { return make_mv2(parse_vec3("-x1*x2", "x1*x3", "0"), parse_vec3("-y*x1", "-y*x2", "y*x3")); }
MV2 s_tensor(const Expr& f, const Expr& g) {
  return make_mv2(Vec3Expr(scale(d_dy(g), grad(f)) - scale(d_dy(f), grad(g))), cross(grad(f), grad(g)));
}

const Expr x1(Var::x1), x2(Var::x2), x3(Var::x3), y(Var::y);

bool symbolic_zero(const MV1& a) { return zero_verdict(a).kind == ZeroVerdict::Kind::symbolic_zero; }

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket(example2(), x2, x3), simplify(parse("2*x1")));
  EXPECT_EQ(bracket(canonical(), x1, x2), Expr(1));
  EXPECT_EQ(bracket(example2(), x1, y), simplify(parse("x1/2")));
}

TEST(Bracket, MatchesComponentFormAndSharp) {
  RandomExprs gen(51);
  for (int i = 0; i < 10; ++i) {
    MV2 l = gen.mv2();
    Expr f = gen.polynomial(2, 3), g = gen.polynomial(2, 3);
    EXPECT_EQ(bracket(l, f, g), component_bracket(l, f, g));
    EXPECT_EQ(bracket(l, f, g), pairing(differential(g), hamiltonian(l, f)));
    EXPECT_EQ(bracket(l, f, g), directional(hamiltonian(l, f), g));
  }
}

TEST(Bracket, AntisymmetricBiderivation) {
  RandomExprs gen(52);
  for (int i = 0; i < 10; ++i) {
    MV2 l = gen.mv2();
    Expr f = gen.polynomial(2, 3), g = gen.polynomial(2, 3), h = gen.polynomial(2, 3);
    EXPECT_TRUE(zero_verdict(bracket(l, f, g) + bracket(l, g, f)).is_zero());
    EXPECT_TRUE(zero_verdict(bracket(l, f, g * h) - g * bracket(l, f, h) - h * bracket(l, f, g)).is_zero());
  }
}

TEST(Sharp, Examples) {
  MV1 a = sharp(canonical(), OneForm{zero_vec3(), Expr(1)});
  EXPECT_TRUE(symbolic_zero(a - make_mv1(parse_vec3("0", "0", "-1"), Expr())));
  MV1 b = sharp(example2(), differential(parse("x1^2")));
  EXPECT_TRUE(symbolic_zero(b - make_mv1(zero_vec3(), parse("x1^2"))));
}

TEST(Hamiltonian, Examples) {
  RandomExprs gen(53);
  MV2 l = gen.mv2();
  EXPECT_TRUE(symbolic_zero(hamiltonian(l, -y) - make_mv1(l.phi, Expr())));
  EXPECT_TRUE(symbolic_zero(hamiltonian(canonical(), x1) - basis_field(Var::x2)));
  EXPECT_TRUE(symbolic_zero(hamiltonian(example2(), y) - make_mv1(parse_vec3("-x1/2", "-x2/4", "-x3/4"), Expr())));
}

TEST(Jacobiator, Examples) {
  EXPECT_EQ(jacobiator(example2(), x2, x3, y), Expr());
  EXPECT_EQ(jacobiator(canonical(), x1, x2, x3), Expr());
  Expr j = jacobiator(quadratic_k(), x2, x3, y);
  EXPECT_EQ(j, simplify(parse("-2*x1*x2*y")));
  EXPECT_EQ(jacobiator(quadratic_k(), x1, x2, x3), simplify(parse("-x1^2*x2")));
}

TEST(JacobiResiduals, Examples) {
  JacobiResiduals e = jacobi_residuals(example2());
  EXPECT_EQ(e.r0, Expr());
  EXPECT_TRUE(symbolic_zero(make_mv1(e.r, Expr())));
  JacobiResiduals q = jacobi_residuals(quadratic_k());
  EXPECT_EQ(q.r0, simplify(parse("x1^2*x2")));
  EXPECT_EQ(simplify(q.r), simplify(parse_vec3("-2*x1*x2*y", "0", "0")));
}

TEST(JacobiResiduals, EqualCoordinateJacobiatorsUpToSign) {
  RandomExprs gen(54);
  for (int i = 0; i < 10; ++i) {
    MV2 l = gen.mv2();
    JacobiResiduals r = jacobi_residuals(l);
    auto j = coordinate_jacobiators(l);
    EXPECT_EQ(simplify(j[0] + r.r0), Expr());
    for (int k = 0; k < 3; ++k) EXPECT_EQ(simplify(j[k + 1] - r.r[k]), Expr());
  }
}

TEST(JacobiResiduals, MatchSchoutenSelfBracket) {
  RandomExprs gen(55);
  for (int i = 0; i < 5; ++i) {
    MV2 l = gen.mv2();
    JacobiResiduals r = jacobi_residuals(l);
    MV3 s = schouten_self(l);
    EXPECT_EQ(simplify(s.g - Expr(2) * r.r0), Expr());
    MV3 from_residuals{Expr(2) * r.r0, scale(Expr(-2), r.r)};
    EXPECT_TRUE(zero_verdict(s - from_residuals).is_zero());
  }
}

TEST(IsPoisson, Examples) {
  EXPECT_EQ(is_poisson(example2()).kind, ZeroVerdict::Kind::symbolic_zero);
  ZeroVerdict q = is_poisson(quadratic_k());
  ASSERT_EQ(q.kind, ZeroVerdict::Kind::nonzero);
  EXPECT_NE(eval(parse("x1^2*x2"), q.witness), 0.0);
  EXPECT_TRUE(is_poisson(s_tensor(parse("x1 + y"), x2)).is_zero());
}

TEST(IsPoisson, STensorsOfRandomPairs) {
  RandomExprs gen(56);
  for (int i = 0; i < 5; ++i) {
    Expr f = gen.polynomial(2, 3), g = gen.polynomial(2, 3);
    MV2 s = s_tensor(f, g);
    EXPECT_TRUE(is_poisson(s).is_zero());
    EXPECT_TRUE(is_casimir(s, f).is_zero());
    EXPECT_TRUE(is_casimir(s, g).is_zero());
  }
}

TEST(IsCasimir, Examples) {
  RandomExprs gen(57);
  MV2 l = make_mv2(gen.vec3(), zero_vec3());
  EXPECT_EQ(is_casimir(l, y).kind, ZeroVerdict::Kind::symbolic_zero);
  EXPECT_FALSE(is_casimir(canonical(), x1).is_zero());
}

TEST(Rank, ExampleTwoLeaves) {
  EXPECT_EQ(rank_at(example2(), Point4(1, 0, 0, 0)).rank, 4);
  EXPECT_EQ(rank_at(example2(), Point4(-1, 0, 0, 0)).rank, 4);
  EXPECT_DOUBLE_EQ(rank_at(example2(), Point4(1, 0, 0, 0)).pairing, 1.0);
  EXPECT_EQ(rank_at(example2(), Point4(0, 1, 0, 0)).rank, 2);
  EXPECT_EQ(rank_at(example2(), Point4(0, 0, 1, 0)).rank, 2);
  EXPECT_EQ(rank_at(example2(), Point4(0, 0, 0, 7)).rank, 0);
}

TEST(Rank, MatchesComponentMatrixRank) {
  RandomExprs gen(58);
  MV2 l = gen.mv2();
  for (const Point4& p : sample_points({}, 20)) {
    Eigen::FullPivLU<Eigen::Matrix4d> lu(component_matrix(l, p));
    lu.setThreshold(1e-10);
    EXPECT_EQ(rank_at(l, p).rank, lu.rank());
  }
  for (const Point4& p : {Point4(0, 1, 0, 0), Point4(0, 0, 0, 3), Point4(2, 1, 0, 1)}) {
    Eigen::FullPivLU<Eigen::Matrix4d> lu(component_matrix(example2(), p));
    lu.setThreshold(1e-10);
    EXPECT_EQ(rank_at(example2(), p).rank, lu.rank());
  }
}

TEST(Region, Examples) {
  EXPECT_EQ(region_at(example2(), Point4(1, 0, 0, 0)), Region::positive);
  EXPECT_EQ(region_at(example2(), Point4(0, 1, 2, 3)), Region::boundary);
  MV2 neg = make_mv2(parse_vec3("0", "0", "1"), parse_vec3("0", "0", "-1"));
  for (const Point4& p : sample_points({}, 5)) EXPECT_EQ(region_at(neg, p), Region::negative);
}

TEST(Region, FullRankExactlyOffBoundary) {
  RandomExprs gen(59);
  MV2 l = gen.mv2();
  for (const Point4& p : sample_points({}, 20)) {
    EXPECT_EQ(rank_at(l, p).rank == 4, region_at(l, p) != Region::boundary);
  }
}

TEST(Modular, Examples) {
  EXPECT_TRUE(symbolic_zero(modular(example2()) - make_mv1(zero_vec3(), Expr(-1))));
  EXPECT_TRUE(symbolic_zero(modular(canonical())));
  EXPECT_TRUE(symbolic_zero(modular(quadratic_k()) - make_mv1(parse_vec3("-2*x1", "-x2", "x1 + 2*x3"), y)));
}

TEST(Modular, AutomorphismWithZeroTraceTangentToPairing) {
  RandomExprs gen(60);
  std::vector<MV2> poisson = {example2(), canonical()};
  for (int i = 0; i < 3; ++i) poisson.push_back(s_tensor(gen.polynomial(2, 3), gen.polynomial(2, 3)));
  for (const MV2& l : poisson) {
    MV1 z = modular(l);
    EXPECT_TRUE(zero_verdict(lie_derivative_mv2(z, l)).is_zero());
    EXPECT_EQ(trace(z), Expr());
    EXPECT_TRUE(zero_verdict(directional(z, dot(l.psi, l.phi))).is_zero());
  }
}

TEST(Hamiltonian, HomomorphismOnPoissonTensors) {
  RandomExprs gen(61);
  std::vector<MV2> poisson = {example2(), s_tensor(gen.polynomial(2, 3), gen.polynomial(2, 3))};
  for (const MV2& l : poisson) {
    for (int i = 0; i < 3; ++i) {
      Expr f = gen.polynomial(2, 3), g = gen.polynomial(2, 3);
      MV1 lhs = lie_bracket(hamiltonian(l, f), hamiltonian(l, g));
      EXPECT_TRUE(zero_verdict(lhs - hamiltonian(l, bracket(l, f, g))).is_zero());
    }
  }
}

TEST(PoissonCandidate, CachesVerdicts) {
  PoissonCandidate c("example2", example2());
  EXPECT_TRUE(c.is_poisson());
  EXPECT_EQ(c.verdicts().first.kind, is_poisson(example2()).kind);
  PoissonCandidate q("quadratic", quadratic_k());
  EXPECT_FALSE(q.is_poisson());
  EXPECT_FALSE(q.verdicts().second.is_zero());
}

}  // namespace
}  // namespace p4
