#include <doctest.h>

#include <sstream>
#include <vector>

#include "cisnim/errors.hpp"
#include "cisnim/pair_table.hpp"
#include "cisnim/position.hpp"

using namespace cisnim;

namespace {

ForbiddenSet parse_text(const std::string& text) {
  std::istringstream in(text);
  return ForbiddenSet::parse(in);
}

const ForbiddenSet f110 = parse_text("1 1 0\n");

}  // namespace

TEST_CASE("sieve thirds on the unrestricted game follow xor") {
  PairTable t = solve(4, ForbiddenSet());
  CHECK(t.third_of(3, 2) == 1);
  CHECK(t.third_of(2, 1) == 3);
  CHECK(t.third_of(3, 3) == 0);
  CHECK(t.third_of(0, 0) == 0);

  PairTable big = solve(16, ForbiddenSet());
  CHECK(big.third_of(5, 3) == 6);
  for (uint32_t x = 0; x < 16; ++x)
    for (uint32_t y = 0; y <= x; ++y) CHECK(big.third_of(x, y) == (x ^ y));
}

TEST_CASE("sieve thirds with a forbidden pair position") {
  PairTable t = solve(4, f110);
  CHECK(t.third_of(1, 0) == 2);
  CHECK(t.third_of(1, 1) == 1);
  CHECK(t.third_of(2, 1) == 0);
  CHECK(t.third_of(3, 0) == 3);

  PairTable t5 = solve(5, f110);
  CHECK(t5.third_of(4, 4) == 0);
}

TEST_CASE("third lookup is symmetric and range checked") {
  PairTable t = solve(8, f110);
  for (uint32_t x = 0; x < 8; ++x)
    for (uint32_t y = 0; y < 8; ++y) CHECK(t.third_of(x, y) == t.third_of(y, x));
  CHECK_THROWS_AS(t.third_of(8, 0), std::out_of_range);
  CHECK_THROWS_AS(t.third_of(0, 8), std::out_of_range);
}

TEST_CASE("stored thirds never exceed the pair bound") {
  ForbiddenSet f2 = parse_text("2 1 0\n3 3 3\n");
  PairTable t = solve(64, f2);
  for (uint32_t z : t.thirds()) CHECK(z <= t.zbound());
}

TEST_CASE("classification from the table") {
  PairTable tn = solve(8, ForbiddenSet());
  PairTable t = solve(8, f110);
  CHECK(tn.classify(Position{3, 2, 1}) == Status::P);
  CHECK(t.classify(Position{1, 1, 0}) == Status::Forbidden);
  CHECK(t.classify(Position{2, 2, 0}) == Status::N);
  CHECK(t.classify(Position{2, 1, 0}) == Status::P);

  // The largest heap may exceed the pair bound; the second-largest may not.
  CHECK(t.classify(Position{100, 2, 1}) == Status::N);
  CHECK_THROWS_AS(t.classify(Position{100, 50, 1}), std::out_of_range);
}

TEST_CASE("multiset counts by shape") {
  PairTable t = solve(8, ForbiddenSet());
  PiCounts p2 = t.pi_counts(2);
  CHECK(p2.pi == 2);
  CHECK(p2.pi1 == 1);
  CHECK(p2.pi2 == 1);
  CHECK(p2.pi3 == 0);

  PiCounts p4 = t.pi_counts(4);
  CHECK(p4.pi == 5);
  CHECK(p4.pi1 == 1);
  CHECK(p4.pi2 == 3);
  CHECK(p4.pi3 == 1);
  CHECK(p4.pi == p4.pi1 + p4.pi2 + p4.pi3);
  CHECK(p4.pi == (3 * 16 - 6 * 4 * 4 + 4 * 16 + 3 * 4 + 2) / 6);

  CHECK_THROWS_AS(t.pi_counts(9), std::out_of_range);
}

TEST_CASE("cache round trip is exact") {
  PairTable t = solve(16, ForbiddenSet());
  std::ostringstream s1;
  t.save(s1);
  std::istringstream in(s1.str());
  PairTable back = PairTable::load(in);
  CHECK(back == t);

  std::ostringstream s2;
  back.save(s2);
  CHECK(s1.str() == s2.str());

  std::ostringstream s3;
  t.save(s3);
  CHECK(s1.str() == s3.str());
}

TEST_CASE("cache validation rejects damaged streams") {
  PairTable t = solve(12, f110);
  std::ostringstream os;
  t.save(os);
  std::string bytes = os.str();

  SUBCASE("wrong magic") {
    std::string bad = bytes;
    bad[0] = 'X';
    std::istringstream in(bad);
    CHECK_THROWS_AS(PairTable::load(in), format_error);
  }
  SUBCASE("truncated stream") {
    std::istringstream in(bytes.substr(0, bytes.size() - 5));
    CHECK_THROWS_AS(PairTable::load(in), format_error);
  }
  SUBCASE("corrupted payload fails the checksum") {
    std::string bad = bytes;
    bad[bytes.size() / 2] = static_cast<char>(bad[bytes.size() / 2] + 1);
    std::istringstream in(bad);
    CHECK_THROWS_AS(PairTable::load(in), format_error);
  }
}

TEST_CASE("assembling a table validates shape and bound") {
  PairTable t = solve(6, ForbiddenSet());
  std::vector<uint32_t> thirds = t.thirds();
  CHECK_THROWS_AS(PairTable(7, ForbiddenSet(), thirds), format_error);
  std::vector<uint32_t> high = thirds;
  high[0] = t.zbound() + 1;
  CHECK_THROWS_AS(PairTable(6, ForbiddenSet(), std::move(high)), format_error);
}

TEST_CASE("solver guards") {
  CHECK_THROWS_AS(solve(0, ForbiddenSet()), std::domain_error);
  CHECK_THROWS_AS(solve(100000, ForbiddenSet(), 1 << 16), resource_error);
}
