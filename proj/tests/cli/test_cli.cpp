#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "p4/catalog.hpp"
#include "p4/tensor_file.hpp"

namespace {

using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(P4_BINARY) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(P4_DATA_DIR) + "/" + name + ".json"; }

TEST(Cli, CheckExample2IsSymbolicZero) {
  Result r = run("check " + data("example2-linear"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["is_poisson"], "symbolic_zero");
  EXPECT_EQ(j["jacobiators"], json({"0", "0", "0", "0"}));
}

TEST(Cli, CheckNonPoissonExitsOne) {
  Result r = run("check quadratic-k");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["is_poisson"], "nonzero");
}

TEST(Cli, ModularQuadraticKFlagsDiscrepancy) {
  Result r = run("modular " + data("quadratic-k"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["paper_discrepancy"], true);
  EXPECT_EQ(j["modular"]["w"], json({"-2*x1", "-x2", "x1 + 2*x3"}));
  EXPECT_EQ(j["modular"]["b"], "y");
}

TEST(Cli, RankOnTheYAxisIsZero) {
  Result r = run("rank " + data("example2-linear") + " -p 0,0,0,5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["rank"], 0);
}

TEST(Cli, CatalogListHasTheShippedEntries) {
  Result r = run("catalog list");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  std::set<std::string> names;
  for (const auto& e : j["entries"]) names.insert(e["name"].get<std::string>());
  for (const char* n : {"example2-linear", "quadratic-k", "canonical-symplectic", "liouville-symplectic",
                        "rank2-gradient", "casimir-quadratic", "dirac-canonical", "s-tensor-sample"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
  EXPECT_GE(names.size(), 8u);
}

TEST(Cli, CatalogRunPasses) {
  for (const char* n : {"example2-linear", "quadratic-k"}) {
    Result r = run(std::string("catalog run ") + n);
    EXPECT_EQ(r.code, 0) << n;
    EXPECT_EQ(json::parse(r.out)["pass"], true) << n;
  }
  Result q = run("catalog run quadratic-k");
  bool saw_residual = false;
  json qj = json::parse(q.out);
  for (const auto& c : qj["checks"]) {
    if (c["name"] == "residual_r0") {
      saw_residual = true;
      EXPECT_EQ(c["actual"], "x1^2*x2");
    }
  }
  EXPECT_TRUE(saw_residual);
}

TEST(Cli, CatalogRunAllIsDeterministic) {
  Result a = run("catalog run --all");
  Result b = run("catalog run --all");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputKeysAreSorted) {
  Result r = run("casimir rank2-gradient -k y");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(r.out, j.dump(2) + "\n");
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("check no-such-entry").code, 2);
  EXPECT_EQ(run("bracket example2-linear -f 'x1+' -g x2").code, 2);
  EXPECT_EQ(run("rank example2-linear -p 1,2").code, 2);
  EXPECT_EQ(run("decompose example2-linear --method fg").code, 2);
}

TEST(Cli, ShippedFilesMatchTheCatalog) {
  for (const p4::CatalogEntry& e : p4::catalog()) {
    std::ifstream in(data(e.file.name), std::ios::binary);
    ASSERT_TRUE(in) << e.file.name;
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), p4::to_json_text(e.file)) << e.file.name;
  }
}

TEST(Cli, BracketAndHamiltonian) {
  json b = json::parse(run("bracket canonical-symplectic -f x3 -g y").out);
  EXPECT_NE(b["bracket"], "0");
  Result h = run("ham example2-linear -H y");
  ASSERT_EQ(h.code, 0);
  EXPECT_TRUE(json::parse(h.out)["field"].contains("w"));
}

TEST(Cli, DecomposeCanonical) {
  Result r = run("decompose canonical-symplectic --f x1 --g x2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["decomposition"]["signs"], json({1}));
  EXPECT_EQ(run("decompose example2-linear --method modular").code, 0);
}

TEST(Cli, MapScalingFailsWithWitness) {
  Result r = run("map canonical-symplectic --S '2*x1,x2,x3' --h y");
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_EQ(j["passes"], false);
  EXPECT_TRUE(j.contains("witness_pair"));
  EXPECT_EQ(run("map canonical-symplectic --S 'x1,x2,x3' --h y").code, 0);
}

TEST(Cli, VectorFieldsAndFamilies) {
  EXPECT_EQ(run("pvf canonical-symplectic --W 0,0,1 --b 0").code, 0);
  EXPECT_EQ(run("tangent-pvf rank2-gradient --alpha 0,0,0 --g x1").code, 0);
  Result l = run("family liouville --f=-x2 --sigma 0,0,x1");
  ASSERT_EQ(l.code, 0);
  json j = json::parse(l.out);
  EXPECT_EQ(j["c"], "1");
  EXPECT_EQ(j["symplectic"], true);
  EXPECT_EQ(run("family two-casimir --k1 x1 --k2 'x2*y'").code, 0);
  EXPECT_EQ(run("family casimir").code, 2);
}

TEST(Cli, FlowConservesCasimirs) {
  Result r = run("flow rank2-gradient -H x1 -p 0,1,0,0 -t 10 --dt 0.01 --check '(x1^2+x2^2+x3^2)/2,y'");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  for (const auto& d : j["invariants"]) EXPECT_LE(d["max_drift"].get<double>(), 1e-6);
}

TEST(Cli, SeedOverrideIsDeterministic) {
  Result a = run("check quadratic-k");
  Result b = run("check quadratic-k");
  EXPECT_EQ(a.out, b.out);
  std::string env = "P4_SEED=7 P4_SAMPLES=16 ";
  std::string cmd = env + std::string(P4_BINARY) + " check quadratic-k";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  EXPECT_EQ(json::parse(out)["is_poisson"], "nonzero");
}

TEST(Cli, PrettyIsNotJson) {
  Result r = run("--pretty rank example2-linear -p 1,0,0,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank: 4"), std::string::npos);
}

}  // namespace
