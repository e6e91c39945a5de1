#include "cisnim/verify.hpp"

#include <sstream>

#include "cisnim/analysis.hpp"
#include "cisnim/table_scan.hpp"

namespace cisnim {

namespace {

std::string pair_text(const std::optional<PairCoord>& p) {
  if (!p) return "none";
  std::ostringstream os;
  os << "(" << p->first << "," << p->second << ")";
  return os.str();
}

}  // namespace

SuiteResult run_oracle_suite(const ForbiddenSet& f, uint32_t max_coord) {
  SuiteResult out;
  out.suite = "oracle";

  BoxSolution box = solve_box(max_coord, f);
  PairTable t = solve(max_coord, f);

  uint64_t positions = 0;
  uint64_t mismatches = 0;
  std::optional<Position> first;
  for (uint32_t a = 0; a < max_coord; ++a) {
    for (uint32_t b = 0; b <= a; ++b) {
      for (uint32_t c = 0; c <= b; ++c) {
        Position p{a, b, c};
        ++positions;
        Status want = box.status(p);
        Status got = t.classify(p);
        if (want != got) {
          ++mismatches;
          if (!first) first = p;
        }
      }
    }
  }

  SuiteLine line;
  line.name = "table-matches-boxed-solver";
  line.pass = mismatches == 0;
  std::ostringstream detail;
  detail << "positions=" << positions << " mismatches=" << mismatches;
  if (first) {
    detail << " first=(" << first->a << "," << first->b << "," << first->c
           << ")";
  }
  line.detail = detail.str();
  out.lines.push_back(line);
  return out;
}

SuiteResult run_third_bounds_suite(const PairTable& t) {
  SuiteResult out;
  out.suite = "third-bounds";
  InvariantReport rep = scan_invariants(t);

  auto add = [&](const std::string& name, uint64_t violations) {
    SuiteLine line;
    line.name = name;
    line.pass = violations == 0;
    std::ostringstream detail;
    detail << "violations=" << violations;
    if (violations > 0) detail << " first=" << pair_text(rep.first_offender);
    line.detail = detail.str();
    out.lines.push_back(line);
  };

  add("third-sum-bound", rep.z_sum_bound_violations);
  add("third-tail-sum", rep.tail_sum_violations);
  add("diagonal-zero-tail", rep.diag_zero_violations);
  add("cross-row-consistency", rep.consistency_violations);
  add("lookup-symmetry", rep.symmetry_violations);
  return out;
}

SuiteResult run_count_structure_suite(const PairTable& t) {
  SuiteResult out;
  out.suite = "count-structure";
  CountStructureReport rep = scan_count_structure(t, t.n());

  SuiteLine diag;
  diag.name = "diagonal-count-identity";
  diag.pass = rep.diag_identity_violations == 0;
  {
    std::ostringstream detail;
    detail << "violations=" << rep.diag_identity_violations;
    if (rep.first_diag_offender) detail << " first=x:" << *rep.first_diag_offender;
    diag.detail = detail.str();
  }
  out.lines.push_back(diag);

  SuiteLine br;
  br.name = "below-at-least-right-off-s";
  br.pass = rep.below_right_violations == 0;
  {
    std::ostringstream detail;
    detail << "violations=" << rep.below_right_violations;
    if (rep.first_pair_offender) {
      detail << " first=" << pair_text(rep.first_pair_offender);
    }
    br.detail = detail.str();
  }
  out.lines.push_back(br);
  return out;
}

SuiteResult run_identity_suite(const PairTable& t,
                               const std::vector<uint32_t>& ms) {
  SuiteResult out;
  out.suite = "identity";
  for (uint32_t m : ms) {
    IdentityReport rep = identity_check(t, m, 2ull * (m > 0 ? m - 1 : 0));
    SuiteLine line;
    line.name = "sixfold-count-identity-m" + std::to_string(m);
    line.pass = rep.ok();
    std::ostringstream detail;
    detail << "lhs=" << rep.lhs.get_str() << " rhs=" << rep.rhs.get_str()
           << " diff=" << rep.diff.get_str();
    line.detail = detail.str();
    out.lines.push_back(line);
  }
  return out;
}

std::string format_suite(const SuiteResult& result) {
  std::ostringstream os;
  for (const auto& line : result.lines) {
    os << (line.pass ? "pass: " : "FAIL: ") << result.suite << "/" << line.name
       << " " << line.detail << "\n";
  }
  os << "suite " << result.suite << ": " << (result.pass() ? "PASS" : "FAIL")
     << "\n";
  return os.str();
}

}  // namespace cisnim
