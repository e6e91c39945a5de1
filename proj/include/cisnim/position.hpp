#pragma once

// Game rules for three-heap Nim with a finite set of forbidden positions.
//
// A position is an unordered multiset of three heap sizes.  Forbidden
// positions are removed from the game outright: they can never be moved
// to and are never legal states.  A move lowers exactly one heap; the
// player unable to move loses, so a position with no children is a loss
// for the player to move (a P-position).  Misere play over a forbidden
// set F is normal play over F plus the all-empty position.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cisnim {

// Heap triple in canonical order a >= b >= c.
struct Position {
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t c = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

// Sorts three heap sizes into canonical descending order.
Position canonicalize(uint32_t x, uint32_t y, uint32_t z);

// Immutable set of forbidden positions.  Members are kept canonical,
// deduplicated, and sorted ascending lexicographically so that iteration
// and serialization are deterministic.
class ForbiddenSet {
 public:
  ForbiddenSet() = default;
  explicit ForbiddenSet(std::vector<Position> members);

  // Reads one position per line: three whitespace-separated non-negative
  // integers interpreted as a multiset.  Blank lines and lines starting
  // with '#' are ignored.  Duplicates collapse.  Throws parse_error
  // naming the 1-based line on malformed input.
  static ForbiddenSet parse(std::istream& in);

  // The single forbidden position of misere play: the all-empty triple.
  static ForbiddenSet misere();

  // Set union.
  ForbiddenSet merged(const ForbiddenSet& other) const;

  bool contains(const Position& p) const;
  const std::vector<Position>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  // Largest heap size appearing in any member (0 if empty).
  uint32_t fmax() const { return fmax_; }

  // Beyond this value the third heap of a winning-partition triple never
  // exceeds the sum of the other two, and {k,k,0} is always a P-position:
  // 2*fmax + |F|.
  uint64_t z_bound_threshold() const { return 2ull * fmax_ + members_.size(); }

  // Beyond this value the row/column counting identities hold:
  // 4*fmax + 3*|F|.
  uint64_t structure_threshold() const {
    return 4ull * fmax_ + 3ull * members_.size();
  }

  friend bool operator==(const ForbiddenSet&, const ForbiddenSet&) = default;

 private:
  std::vector<Position> members_;
  uint32_t fmax_ = 0;
};

// All legal successors of p under f: lower exactly one heap, skip members
// of f, canonicalize, deduplicate.  Returned sorted ascending.
// Throws std::domain_error if p itself is forbidden.
std::vector<Position> children(const Position& p, const ForbiddenSet& f);

}  // namespace cisnim
