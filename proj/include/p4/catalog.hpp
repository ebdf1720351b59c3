#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p4/tensor_file.hpp"

namespace p4 {

struct RankExpectation {
  std::string point;  // "x1,x2,x3,y"
  int rank = 0;
};

struct CatalogEntry {
  TensorFile file;
  std::string source;      // where the example comes from, in words
  std::string is_poisson;  // expected verdict kind name
  std::array<std::string, 4> modular;
  std::vector<RankExpectation> ranks;
  std::vector<std::string> casimirs;
  // Jacobi residuals, listed for tensors that fail.
  std::optional<std::string> residual_r0;
  std::optional<std::array<std::string, 3>> residual_r;
  // A printed modular field that the computation does not reproduce.
  std::optional<std::array<std::string, 4>> claimed_modular;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(std::string_view name);  // throws PreconditionError

struct CheckResult {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct EntryRun {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass = false;
};

EntryRun run_entry(const CatalogEntry& entry, const SamplerConfig& cfg = {});

Point4 parse_point(std::string_view csv);

}  // namespace p4
