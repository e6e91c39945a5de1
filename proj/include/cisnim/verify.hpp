// Named verification suites composing the scan kernels and analysis
// checkers into pass/fail line reports, shared by the CLI `verify`
// subcommand and the acceptance harness.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cisnim/oracle.hpp"
#include "cisnim/pair_table.hpp"

namespace cisnim {

struct SuiteLine {
  std::string name;
  bool pass = false;
  std::string detail;  // counts, first offender, timing notes
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteLine> lines;
  bool pass() const {
    for (const auto& l : lines) {
      if (!l.pass) return false;
    }
    return true;
  }
};

// Exhaustive agreement between the sieve-backed table and the boxed
// backward-induction solver on every canonical position with all
// coordinates below max_coord.
SuiteResult run_oracle_suite(const ForbiddenSet& f, uint32_t max_coord);

// Third-value structure: the pairwise sum bound, the tail sum bound, the
// vanishing diagonal beyond the pair threshold, cross-row consistency, and
// lookup symmetry.
SuiteResult run_third_bounds_suite(const PairTable& t);

// Row/column count structure: the diagonal identity r + 2b + 1 = x and the
// below-versus-right inequality at points outside S, beyond the structure
// threshold.
SuiteResult run_count_structure_suite(const PairTable& t);

// The sixfold counting identity at each requested m.
SuiteResult run_identity_suite(const PairTable& t,
                               const std::vector<uint32_t>& ms);

// Renders one "pass:"/"FAIL:" line per check plus a suite summary line.
std::string format_suite(const SuiteResult& result);

}  // namespace cisnim
