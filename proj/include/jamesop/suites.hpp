#ifndef JAMESOP_SUITES_HPP_
#define JAMESOP_SUITES_HPP_

// Verification suites: core (criteria 1, 2, 5), blocks (3, 4, 11) and
// lifted (6 through 10). Every case is deterministic under RunConfig::seed.

#include <cstdint>
#include <string>
#include <vector>

#include "jamesop/error.hpp"

namespace jamesop {

struct RunConfig {
  std::uint64_t seed = 1;
  double norm_tol = 1e-13;    // power iteration
  double solver_tol = 1e-6;   // subspace distance gap
  double cert_tol = 1e-9;     // certificate re-evaluation
  std::size_t oracle_cap = Limits::kDefaultOracleCap;
  std::size_t walsh_cap = Limits::kDefaultWalshCap;

  void validate() const;
};

// One judged quantity: pass iff the comparison stated in `what` holds for
// `value` against `bound` (with `tolerance` already folded into bound).
struct Assertion {
  std::string what;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<Assertion> assertions;
  std::string note;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when the criterion states none
};

struct SuiteReport {
  std::string suite;
  RunConfig config;
  std::vector<CriterionResult> criteria;
  double seconds = 0.0;

  bool pass() const;
};

// Criterion ids in a suite; throws kInvalidArgument for unknown names.
std::vector<int> suite_criteria(const std::string& name);

CriterionResult run_criterion(int id, const RunConfig& config);

SuiteReport run_suite(const std::string& name, const RunConfig& config);

// JSON text of a report; timing fields are dropped when include_timing is
// false, which makes equal seeds give equal bytes.
std::string report_json(const SuiteReport& report, bool include_timing = true);

}  // namespace jamesop

#endif  // JAMESOP_SUITES_HPP_
