#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "p4/maps.hpp"
#include "p4/poisson.hpp"

namespace p4 {

class AuditFailure : public Error {
 public:
  using Error::Error;
};

struct AuditCorpus {
  std::vector<PoissonCandidate> tensors;  // catalog and family-built tensors
  std::vector<Expr> functions;
  std::vector<MV1> fields;
  std::vector<MV2> bivectors;
  std::vector<MV3> trivectors;
  std::vector<MV4> fourvectors;
  std::vector<Diffeo4> maps;
};

// Catalog tensors plus `random_tensors` Poisson tensors from the family
// constructors, and random auxiliary data.
AuditCorpus default_corpus(int random_tensors = 10, std::uint64_t seed = 2024);

enum class Resolution { resolved, independent, ambiguous, fails };

std::string_view resolution_name(Resolution r);

struct IdentityResult {
  std::string id;
  std::string statement;  // with the sign slots written as e1, e2
  Resolution resolution = Resolution::fails;
  std::vector<int> signs;    // resolved signs; empty unless resolved
  std::vector<int> printed;  // signs as printed; empty when there is nothing to compare
  ZeroVerdict verdict;       // combined over the corpus under the resolved signs
  int corpus_size = 0;
  std::vector<std::string> failures;  // one line per sign choice that failed, with the first failing case

  bool holds() const { return resolution == Resolution::resolved || resolution == Resolution::independent; }
  bool matches_print() const { return printed.empty() || signs.empty() || signs == printed; }
};

struct AuditReport {
  std::vector<IdentityResult> results;
  bool all_hold() const;
  const IdentityResult& at(std::string_view id) const;
};

std::vector<std::string> identity_ids();  // A1 ... A17

// Empty ids audits everything. Throws PreconditionError on unknown ids.
AuditReport identity_audit(const AuditCorpus& corpus, std::span<const std::string> ids = {},
                           const SamplerConfig& cfg = {});

// Throws AuditFailure naming identities that hold under no sign choice.
void require_all_hold(const AuditReport& report);

}  // namespace p4
