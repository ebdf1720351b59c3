#include <chrono>

#include <gtest/gtest.h>

#include "p4/audit.hpp"
#include "p4/signs.hpp"

namespace p4 {
namespace {

const AuditCorpus& corpus() {
  static const AuditCorpus c = default_corpus();
  return c;
}

const AuditReport& report() {
  static const AuditReport r = identity_audit(corpus());
  return r;
}

TEST(Audit, CorpusHasCatalogAndTenRandomPoissonTensors) {
  int random = 0;
  for (const PoissonCandidate& t : corpus().tensors) {
    if (t.name().rfind("random-", 0) == 0) {
      ++random;
      EXPECT_TRUE(t.is_poisson()) << t.name();
    }
  }
  EXPECT_EQ(random, 10);
  EXPECT_GE(corpus().tensors.size(), 19u);
}

TEST(Audit, EveryIdentityHolds) {
  for (const IdentityResult& r : report().results) {
    EXPECT_TRUE(r.holds()) << r.id << " " << resolution_name(r.resolution)
                           << (r.failures.empty() ? "" : " " + r.failures.front());
    EXPECT_GT(r.corpus_size, 0) << r.id;
  }
  EXPECT_EQ(report().results.size(), 17u);
  EXPECT_NO_THROW(require_all_hold(report()));
}

TEST(Audit, ResolvedSignTable) {
  const std::vector<std::pair<std::string, std::vector<int>>> expected = {
      {"A1", {1}},  {"A2", {1}},  {"A3", {1}},  {"A6", {1}},      {"A7", {1}},       {"A8", {1}},      {"A9", {-1}},
      {"A10", {1}}, {"A11", {1, 1}}, {"A12", {1}}, {"A13", {1}}, {"A14", {1}}, {"A15", {1, 1, 1}}, {"A16", {1, 1}},
      {"A17", {-1}}};
  for (const auto& [id, signs] : expected) {
    const IdentityResult& r = report().at(id);
    EXPECT_EQ(r.resolution, Resolution::resolved) << id;
    EXPECT_EQ(r.signs, signs) << id;
  }
  EXPECT_EQ(report().at("A4").resolution, Resolution::independent);
  EXPECT_EQ(report().at("A5").resolution, Resolution::independent);
  EXPECT_EQ(report().at("A4").verdict.kind, ZeroVerdict::Kind::symbolic_zero);
}

TEST(Audit, FrozenConstantsAgreeWithAudit) {
  EXPECT_EQ(report().at("A10").signs, std::vector<int>{signs::kDecomposeFg});
  EXPECT_EQ(report().at("A11").signs, (std::vector<int>{signs::kModularWedge, signs::kModularGradient}));
  EXPECT_EQ(report().at("A15").signs[0], signs::kPushforwardPsi);
  EXPECT_EQ(report().at("A15").signs[1], signs::kPushforwardPhi);
  EXPECT_EQ(report().at("A16").signs, (std::vector<int>{signs::kVectorFieldForm, signs::kVectorFieldForm}));
}

TEST(Audit, PrintedSignsDisagreeWhereRecorded) {
  for (const char* id : {"A6", "A8", "A9", "A10", "A17"}) EXPECT_FALSE(report().at(id).matches_print()) << id;
  for (const char* id : {"A1", "A2", "A3", "A7", "A11", "A12", "A13", "A14", "A15", "A16"}) {
    EXPECT_TRUE(report().at(id).matches_print()) << id;
  }
}

TEST(Audit, ExampleTwoAloneResolvesModularSigns) {
  AuditCorpus c;
  c.tensors.emplace_back("example2", make_mv2(parse_vec3("2*x1", "0", "0"), parse_vec3("x1/2", "x2/4", "x3/4")));
  c.functions = {Expr(Var::y)};
  std::vector<std::string> ids = {"A6", "A9"};
  AuditReport r = identity_audit(c, ids);
  EXPECT_EQ(r.at("A6").signs, std::vector<int>{1});
  EXPECT_EQ(r.at("A9").signs, std::vector<int>{-1});
}

TEST(Audit, NonPoissonTensorsOnlyEnterAlgebraicIdentities) {
  AuditCorpus c;
  c.tensors.emplace_back("quadratic", make_mv2(parse_vec3("-x1*x2", "x1*x3", "0"), parse_vec3("-y*x1", "-y*x2", "y*x3")));
  std::vector<std::string> ids = {"A1"};
  AuditReport r = identity_audit(c, ids);
  EXPECT_EQ(r.at("A1").corpus_size, 0);
  EXPECT_EQ(r.at("A1").resolution, Resolution::independent);

  AuditCorpus d;
  d.functions = {Expr(Var::x1), Expr(Var::y)};
  d.tensors.emplace_back("q", c.tensors.front().tensor());
  std::vector<std::string> a10 = {"A10"};
  EXPECT_TRUE(identity_audit(d, a10).at("A10").holds());
}

TEST(Audit, UnknownIdentityRejected) {
  std::vector<std::string> ids = {"A99"};
  EXPECT_THROW(identity_audit(AuditCorpus{}, ids), PreconditionError);
}

TEST(Audit, RequireAllHoldThrowsOnFailure) {
  AuditReport r;
  r.results.push_back(IdentityResult{});
  r.results.back().id = "A0";
  EXPECT_THROW(require_all_hold(r), AuditFailure);
}

}  // namespace
}  // namespace p4
