#pragma once

// Fast solver.  For every unordered heap pair {x,y} there is exactly one
// third heap z making {x,y,z} a P-position; the table stores that z for
// all pairs with x,y < n.  It is built by a greedy exclusion sieve over
// pairs in ascending (max, then min) order:
//
//   third(x,y) = least z such that {x,y,z} is not forbidden and
//                z differs from third(x',y) for all x' < x and from
//                third(x,y') for all y' < y,
//
// tracked with one occupancy bit array per heap value.  Any z chosen this
// way satisfies z <= x + y + |F|, which bounds the bit arrays.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cisnim/oracle.hpp"
#include "cisnim/position.hpp"

namespace cisnim {

constexpr std::size_t kDefaultEngineCeilingBytes = std::size_t(1) << 30;

struct PiCounts {
  uint64_t pi = 0;   // P-position multisets with all heaps < m
  uint64_t pi1 = 0;  // of shape {a,a,a}
  uint64_t pi2 = 0;  // of shape {a,a,b}, a != b
  uint64_t pi3 = 0;  // three distinct heaps
};

class PairTable {
 public:
  // Assembles a table from parts (used by load() and by tests that need a
  // doctored table).  Throws format_error if the vector size does not
  // match n or any stored third exceeds zbound().
  PairTable(uint32_t n, ForbiddenSet f, std::vector<uint32_t> thirds);

  uint32_t n() const { return n_; }
  const ForbiddenSet& forbidden() const { return f_; }

  // Upper bound on any stored third: 2(n-1) + |F|.
  uint32_t zbound() const {
    return 2 * (n_ - 1) + static_cast<uint32_t>(f_.size());
  }

  // Symmetric in x and y.  Throws std::out_of_range (suggesting a larger
  // re-solve) if max(x,y) >= n.
  uint32_t third_of(uint32_t x, uint32_t y) const;

  // Status of an arbitrary position: Forbidden if in f, else P exactly
  // when the third of its two smallest heaps equals its largest.  Needs
  // the second-largest heap < n; throws std::out_of_range otherwise.
  Status classify(const Position& p) const;

  // Counts P-position multisets with all heaps < m, split by shape.
  // Throws std::out_of_range if m > n.
  PiCounts pi_counts(uint32_t m) const;

  // Serialization: magic "CISNIM1\n"; little-endian u32 version, n, |F|;
  // each forbidden member as three u32 (descending within the triple,
  // triples ascending); thirds for x = 0..n-1, y = 0..x; u64 checksum =
  // byte sum of everything before it, mod 2^64.  Byte deterministic.
  void save(std::ostream& out) const;
  static PairTable load(std::istream& in,
                        std::size_t ceiling_bytes = kDefaultEngineCeilingBytes);

  const std::vector<uint32_t>& thirds() const { return thirds_; }

  friend bool operator==(const PairTable&, const PairTable&) = default;

 private:
  std::size_t pair_index(uint32_t x, uint32_t y) const {  // wants y <= x
    return std::size_t(x) * (x + 1) / 2 + y;
  }

  uint32_t n_;
  ForbiddenSet f_;
  std::vector<uint32_t> thirds_;
};

// Runs the sieve for all pairs below n.  Throws std::domain_error for
// n == 0 and resource_error when the table plus occupancy arrays would
// exceed ceiling_bytes.
PairTable solve(uint32_t n, const ForbiddenSet& f,
                std::size_t ceiling_bytes = kDefaultEngineCeilingBytes);

}  // namespace cisnim
