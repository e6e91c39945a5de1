#pragma once

// Whole-table scan kernels over an immutable PairTable.  Each kernel is
// OpenMP-parallel across rows or columns and has a `_serial` twin with
// identical output used as the reference in tests and benchmarks.  All
// results are integer aggregates, so parallel and serial runs agree
// exactly; "first offender" fields always report the smallest offending
// coordinates regardless of thread schedule.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cisnim/pair_table.hpp"

namespace cisnim {

using PairCoord = std::pair<uint32_t, uint32_t>;

// P-multiset counts below m, split by shape (see PiCounts).  Each multiset
// is counted at its unique pair (mid, min), recognizable by third >= mid.
PiCounts count_p_multisets(const PairTable& t, uint32_t m);
PiCounts count_p_multisets_serial(const PairTable& t, uint32_t m);

// hist[a] = number of P multisets whose largest heap is exactly a, for
// a <= zbound; prefix sums give the count below any m <= n in one pass.
std::vector<uint64_t> p_multiset_histogram(const PairTable& t);
std::vector<uint64_t> p_multiset_histogram_serial(const PairTable& t);

// pi[m] = number of P multisets with all heaps < m, for 0 <= m <= limit.
std::vector<uint64_t> pi_prefix(const std::vector<uint64_t>& hist,
                                uint32_t limit);

struct InvariantReport {
  uint64_t checked_pairs = 0;
  uint64_t z_sum_bound_violations = 0;   // third(x,y) <= x + y + |F|
  uint64_t tail_sum_violations = 0;      // third > 2*fmax+|F| => third <= x+y
  uint64_t diag_zero_violations = 0;     // third(k,k) == 0 beyond 2*fmax+|F|
  uint64_t consistency_violations = 0;   // third(x,y)=z, z<n =>
                                         //   third(x,z)=y and third(y,z)=x
  uint64_t symmetry_violations = 0;      // third_of(x,y) == third_of(y,x)
  std::optional<PairCoord> first_offender;

  uint64_t total_violations() const {
    return z_sum_bound_violations + tail_sum_violations +
           diag_zero_violations + consistency_violations +
           symmetry_violations;
  }
  bool ok() const { return total_violations() == 0; }
};

InvariantReport scan_invariants(const PairTable& t);
InvariantReport scan_invariants_serial(const PairTable& t);

// Diagonal row/column statistics for every x < bound:
//   right[x] = #{ z < x : third(x,z) > x }   (P-positions {x', x, z}, x' > x)
//   below[x] = #{ y < x : third(x,y) < y }   (P-positions {x, y, z}, z < y < x)
struct DiagStats {
  std::vector<uint32_t> right;
  std::vector<uint32_t> below;
};

DiagStats diag_stats(const PairTable& t, uint32_t bound);
DiagStats diag_stats_serial(const PairTable& t, uint32_t bound);

// Checks the two counting laws that hold beyond 4*fmax + 3*|F|:
//   diagonal identity: right(x,x) + 2*below(x,x) + 1 == x,
//   off-diagonal:      pairs (x,y) outside S have below >= right.
struct CountStructureReport {
  uint32_t bound = 0;
  uint64_t threshold = 0;
  uint64_t diag_identity_violations = 0;
  uint64_t below_right_violations = 0;
  std::optional<uint32_t> first_diag_offender;
  std::optional<PairCoord> first_pair_offender;

  bool ok() const {
    return diag_identity_violations == 0 && below_right_violations == 0;
  }
};

CountStructureReport scan_count_structure(const PairTable& t, uint32_t bound);
CountStructureReport scan_count_structure_serial(const PairTable& t, uint32_t bound);

}  // namespace cisnim
