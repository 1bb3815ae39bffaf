#pragma once

// Exhaustive checks of the structural statements about f-expressions, one
// registry entry per statement, each over a bounded instance space.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mil {

enum class Verdict { Pass, Fail, Infeasible };
const char* to_string(Verdict v);

// What the numeric bound of a claim counts.
enum class BoundKind { Leaves, Degree, Index };

struct ClaimInfo {
  std::string id;
  std::string statement;
  BoundKind kind = BoundKind::Leaves;
  std::uint64_t default_bound = 0;
  std::uint64_t max_bound = 0;  // larger bounds report Infeasible
  // True when the hypothesis needs an e-equivalent partner; such claims are
  // vacuous when no partner other than the term itself exists.
  bool partner_quantified = false;
};

inline constexpr std::size_t kMaxRecordedFailures = 20;

struct ClaimReport {
  std::string claim_id;
  std::string bound;             // e.g. "leaves<=12", "degree<=54"
  std::uint64_t checked = 0;     // hypothesis instances examined
  std::uint64_t nontrivial = 0;  // instances whose conclusion is not immediate
  bool vacuous = false;
  Verdict verdict = Verdict::Pass;
  std::uint64_t failure_count = 0;
  std::vector<nlohmann::json> failures;  // first kMaxRecordedFailures, with the terms involved
  std::string note;
};

class UnknownClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<ClaimInfo>& claim_registry();
// Throws UnknownClaim.
const ClaimInfo& claim_info(const std::string& id);

ClaimReport verify_claim(const std::string& id, std::optional<std::uint64_t> bound = std::nullopt);
// Every registered claim at its default bound, in registry order.
std::vector<ClaimReport> verify_all(unsigned workers = 1);

nlohmann::json to_json(const ClaimReport& report);
std::string to_text(const ClaimReport& report);

}  // namespace mil
