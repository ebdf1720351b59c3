#include <filesystem>

#include <gtest/gtest.h>

#include "p4/catalog.hpp"
#include "p4/families.hpp"
#include "p4/random.hpp"

namespace p4 {
namespace {

TEST(TensorFile, CanonicalText) {
  TensorFile f{"example2", {"2*x1", "0", "0"}, {"x1/2", "x2/4", "x3/4"}, std::nullopt, std::nullopt};
  EXPECT_EQ(to_json_text(f),
            "{\n"
            "  \"name\": \"example2\",\n"
            "  \"psi\": [\n    \"2*x1\",\n    \"0\",\n    \"0\"\n  ],\n"
            "  \"phi\": [\n    \"x1/2\",\n    \"x2/4\",\n    \"x3/4\"\n  ]\n"
            "}\n");
}

TEST(TensorFile, RoundTripsBitIdentically) {
  for (const CatalogEntry& e : catalog()) {
    const std::string text = to_json_text(e.file);
    EXPECT_EQ(tensor_file_from_json(text), e.file);
    EXPECT_EQ(to_json_text(tensor_file_from_json(text)), text);
  }
  auto path = std::filesystem::temp_directory_path() / "p4_tensor_file_test.json";
  const TensorFile& f = catalog_entry("quadratic-k").file;
  save_tensor_file(path, f);
  EXPECT_EQ(load_tensor_file(path), f);
  std::filesystem::remove(path);
}

TEST(TensorFile, RandomTensorsRoundTrip) {
  RandomExprs gen(131);
  for (int i = 0; i < 20; ++i) {
    MV2 l = gen.mv2();
    TensorFile f = TensorFile::from_tensor("t" + std::to_string(i), l);
    TensorFile back = tensor_file_from_json(to_json_text(f));
    EXPECT_EQ(back, f);
    EXPECT_TRUE(zero_verdict(back.tensor() - l).is_zero());
  }
}

TEST(TensorFile, RejectsMalformedInput) {
  EXPECT_THROW(tensor_file_from_json("{"), FileFormatError);
  EXPECT_THROW(tensor_file_from_json(R"({"name":"a","psi":["0","0"],"phi":["0","0","0"]})"), FileFormatError);
  EXPECT_THROW(tensor_file_from_json(R"({"name":"a","psi":["0","0","x9"],"phi":["0","0","0"]})"), FileFormatError);
  EXPECT_THROW(tensor_file_from_json(R"({"name":"a","psi":["0","0","0"],"phi":["0","0","0"],"extra":1})"), FileFormatError);
  EXPECT_THROW(tensor_file_from_json(R"({"name":"a","psi":["0","0","0"],"phi":["0","0","0"],"notes":3})"), FileFormatError);
  EXPECT_THROW(load_tensor_file("/nonexistent/p4.json"), FileFormatError);
}

TEST(Catalog, ShipsNamedEntries) {
  EXPECT_GE(catalog().size(), 8u);
  for (const char* name : {"example2-linear", "quadratic-k", "canonical-symplectic", "liouville-symplectic",
                           "rank2-gradient", "casimir-quadratic", "dirac-canonical", "s-tensor-sample"}) {
    EXPECT_NO_THROW(catalog_entry(name)) << name;
  }
  EXPECT_THROW(catalog_entry("nope"), PreconditionError);
}

TEST(Catalog, EveryEntryReproduces) {
  for (const CatalogEntry& e : catalog()) {
    EntryRun run = run_entry(e);
    EXPECT_TRUE(run.pass) << e.file.name;
    for (const CheckResult& c : run.checks) EXPECT_TRUE(c.pass) << e.file.name << " " << c.name << ": " << c.actual;
  }
}

TEST(Catalog, EntriesMatchTheirConstructors) {
  const Expr x1(Var::x1), x2(Var::x2), y(Var::y);
  LiouvilleTensor lt = liouville_family(-x2, vec3(Expr(), Expr(), x1));
  EXPECT_TRUE(zero_verdict(catalog_entry("liouville-symplectic").file.tensor() - lt.tensor).is_zero());
  MV2 canonical = catalog_entry("canonical-symplectic").file.tensor();
  EXPECT_TRUE(zero_verdict(catalog_entry("dirac-canonical").file.tensor() - dirac(canonical, x1, x2)).is_zero());
  EXPECT_TRUE(zero_verdict(catalog_entry("s-tensor-sample").file.tensor() - s_tensor(x1 + y, x2)).is_zero());
  Mat3Expr m = Mat3Expr::Constant(Expr());
  m(0, 0) = m(1, 1) = Expr(1);
  QuadraticCasimir q = quadratic_casimir_family(m, unit_vec3(2), Expr(), unit_vec3(0), Expr(1));
  EXPECT_TRUE(zero_verdict(catalog_entry("casimir-quadratic").file.tensor() - q.tensor).is_zero());
  Rank2Tensor r = rank2_build(scale(x1 + y, unit_vec3(2)), unit_vec3(0));
  EXPECT_TRUE(zero_verdict(catalog_entry("rank2-linear").file.tensor() - r.tensor).is_zero());
}

TEST(Catalog, QuadraticEntryFlagsDiscrepancy) {
  const CatalogEntry& e = catalog_entry("quadratic-k");
  ASSERT_TRUE(e.file.paper_discrepancy.has_value());
  EXPECT_TRUE(*e.file.paper_discrepancy);
  EntryRun run = run_entry(e);
  bool saw = false;
  for (const CheckResult& c : run.checks) saw = saw || (c.name == "residual_r0" && c.actual == "x1^2*x2");
  EXPECT_TRUE(saw);
}

TEST(ParsePoint, Examples) {
  EXPECT_EQ(parse_point("0,0,0,5"), Point4(0, 0, 0, 5));
  EXPECT_EQ(parse_point("1, -2.5, 3e-1, 0"), Point4(1, -2.5, 0.3, 0));
  EXPECT_THROW(parse_point("1,2,3"), ParseError);
  EXPECT_THROW(parse_point("1,2,3,4,5"), ParseError);
  EXPECT_THROW(parse_point("1,a,3,4"), ParseError);
}

}  // namespace
}  // namespace p4
