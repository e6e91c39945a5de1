#include <doctest.h>

#include <sstream>
#include <vector>

#include "cisnim/analysis.hpp"
#include "cisnim/pair_table.hpp"
#include "cisnim/position.hpp"
#include "cisnim/table_scan.hpp"

using namespace cisnim;

namespace {

ForbiddenSet parse_text(const std::string& text) {
  std::istringstream in(text);
  return ForbiddenSet::parse(in);
}

}  // namespace

TEST_CASE("parallel multiset counts match the serial twin and pi_counts") {
  PairTable t = solve(200, parse_text("1 1 0\n"));
  for (uint32_t m : {1u, 2u, 17u, 128u, 200u}) {
    PiCounts a = count_p_multisets(t, m);
    PiCounts b = count_p_multisets_serial(t, m);
    PiCounts c = t.pi_counts(m);
    CHECK(a.pi == b.pi);
    CHECK(a.pi1 == b.pi1);
    CHECK(a.pi2 == b.pi2);
    CHECK(a.pi3 == b.pi3);
    CHECK(a.pi == c.pi);
    CHECK(a.pi1 == c.pi1);
    CHECK(a.pi2 == c.pi2);
    CHECK(a.pi3 == c.pi3);
    CHECK(a.pi == a.pi1 + a.pi2 + a.pi3);
  }
}

TEST_CASE("histogram prefix sums reproduce counts at every bound") {
  PairTable t = solve(300, ForbiddenSet());
  std::vector<uint64_t> hist = p_multiset_histogram(t);
  CHECK(hist == p_multiset_histogram_serial(t));
  std::vector<uint64_t> pref = pi_prefix(hist, 300);
  REQUIRE(pref.size() == 301);
  CHECK(pref[0] == 0);
  for (uint32_t m : {1u, 2u, 3u, 64u, 123u, 300u}) {
    CHECK(pref[m] == t.pi_counts(m).pi);
  }
}

TEST_CASE("structure scan finds no violations on solved tables") {
  for (const char* text : {"", "1 1 0\n", "2 1 0\n3 3 3\n"}) {
    PairTable t = solve(300, parse_text(text));
    InvariantReport rep = scan_invariants(t);
    InvariantReport ser = scan_invariants_serial(t);
    CHECK(rep.ok());
    CHECK(rep.checked_pairs == ser.checked_pairs);
    CHECK(rep.total_violations() == ser.total_violations());
    CHECK(!rep.first_offender.has_value());
  }
  PairTable tm = solve(300, ForbiddenSet::misere());
  CHECK(scan_invariants(tm).ok());
}

TEST_CASE("structure scan flags a doctored table") {
  PairTable t = solve(64, ForbiddenSet());
  std::vector<uint32_t> thirds = t.thirds();
  // Break cross-row consistency at pair (10,8) while staying within the
  // storage bound.
  thirds[static_cast<size_t>(10) * 11 / 2 + 8] = 50;
  PairTable doctored(64, ForbiddenSet(), std::move(thirds));
  InvariantReport rep = scan_invariants(doctored);
  CHECK(!rep.ok());
  CHECK(rep.consistency_violations > 0);
  REQUIRE(rep.first_offender.has_value());
  CHECK(rep.first_offender->first <= 10);
}

TEST_CASE("diagonal statistics agree with the pointwise counters") {
  PairTable t = solve(128, parse_text("1 1 0\n"));
  DiagStats d = diag_stats(t, 128);
  DiagStats s = diag_stats_serial(t, 128);
  CHECK(d.right == s.right);
  CHECK(d.below == s.below);
  REQUIRE(d.right.size() == 128);
  for (uint32_t x : {1u, 5u, 9u, 64u, 127u}) {
    auto [r, b] = rb_diag(t, x);
    CHECK(d.right[x] == r);
    CHECK(d.below[x] == b);
  }
}

TEST_CASE("diagonal and off-diagonal counting laws hold beyond the threshold") {
  PairTable t = solve(1000, parse_text("1 1 0\n"));
  CountStructureReport rep = scan_count_structure(t, 1000);
  CountStructureReport ser = scan_count_structure_serial(t, 1000);
  CHECK(rep.ok());
  CHECK(rep.threshold == 7);
  CHECK(ser.ok());
  CHECK(rep.bound == ser.bound);
  CHECK(!rep.first_diag_offender.has_value());
  CHECK(!rep.first_pair_offender.has_value());
}
