// Derived combinatorial objects over a solved PairTable.
//
// S is the set of ordered pairs (x, y) with x > y such that the third heap
// completing a P-multiset with x and y is strictly below y.  The counting
// functions r and b measure column and row densities of S.  From those we
// build hole-free approximation point sets (build_U / build_Ubar / build_Sn),
// slice counters (h_value, g_value), structural checkers (phi_step_check,
// halve_check, identity_check, well_behaved_scan), and exact-rational scale
// series.  Everything here is a pure read over an immutable table.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cisnim/pair_table.hpp"

namespace cisnim {

// --- Pair-level queries -----------------------------------------------------

// True iff x > y and the third completing (x, y) lies strictly below y.
bool s_contains(const PairTable& t, uint32_t x, uint32_t y);

// Number of S elements (x', y) with x' >= x, for x > y: counts z < y whose
// completing third meets or exceeds x.
uint64_t r_count(const PairTable& t, uint32_t x, uint32_t y);

// Diagonal counts (r(x,x), b(x,x)).  On the diagonal an S element (x', x)
// requires x' > x strictly, and b(x,x) counts S elements in row x.
std::pair<uint64_t, uint64_t> rb_diag(const PairTable& t, uint32_t x);

// Number of S elements (x, y') with y' <= y.
uint64_t b_count(const PairTable& t, uint32_t x, uint32_t y);

// A point above an S element of its row that is itself outside S.
bool is_hole(const PairTable& t, uint32_t x, uint32_t y);

// --- Point sets ---------------------------------------------------------------

// Finite set of ordered pairs (x', y') exact for all x' <= xmax().
// Membership queries beyond the truncation bound throw instead of
// answering false, so truncated sets can never silently undercount.
class PointSet {
 public:
  explicit PointSet(uint64_t xmax) : xmax_(xmax) {}

  uint64_t xmax() const { return xmax_; }
  uint64_t size() const { return pts_.size(); }

  bool contains(uint64_t x, uint64_t y) const;

  // Mutators keep the x' <= xmax invariant; insert beyond it throws.
  void insert(uint64_t x, uint64_t y);
  void erase(uint64_t x, uint64_t y);

  // Lexicographically sorted (x, y) listing, for diffs and reports.
  std::vector<std::pair<uint64_t, uint64_t>> sorted_points() const;

  bool operator==(const PointSet& other) const {
    return xmax_ == other.xmax_ && pts_ == other.pts_;
  }

 private:
  static uint64_t key(uint64_t x, uint64_t y);

  uint64_t xmax_ = 0;
  std::unordered_set<uint64_t> pts_;
};

// Union of the four finite regions determined by (x, y): the diagonal-run
// region (rows x' <= x filled upward from x' - b(x',x')), the row-x run
// below y, and the two column-extension regions driven by r counts at x
// and x + 1.  The returned set's truncation bound is the largest generated
// first coordinate (at least x).
PointSet build_U(const PairTable& t, uint32_t x, uint32_t y);

// Extension of build_U: second coordinates below x are copied verbatim;
// points (x', y') with y' >= x are decided in ascending x' order by the
// band rule "member iff y' < x' <= 2y' and the reflected point
// (y', floor(x'/2)) is absent".  Exact for all x' <= xmax.
PointSet build_Ubar(const PairTable& t, uint32_t x, uint32_t y, uint64_t xmax);

// The n-th approximation set: build_Ubar(t, n, 0, xmax).
PointSet build_Sn(const PairTable& t, uint32_t n, uint64_t xmax);

// --- Slice counters -----------------------------------------------------------

// Number of points of `s` in the band slice {(x, y) : y < n <= x <= 2y}.
// Throws if the slice is not fully covered by the set's truncation bound.
uint64_t slice_count(const PointSet& s, uint64_t n);

// h(m, n) = number of points of the m-th approximation set in the band
// slice at n.  Requires xmax >= 2(n-1) so the count is exact.
uint64_t h_value(const PairTable& t, uint32_t m, uint64_t n, uint64_t xmax);

// Independent route to h(m, m): counts P-multisets {x, y, z} with
// x >= m > y > z directly from the table.
uint64_t h_direct(const PairTable& t, uint32_t m);

// Linear weight n + 2x - 3y + 2; positive on every below-diagonal point
// of the half-plane 2y - x <= n.
int64_t f_weight(int64_t x, int64_t y, int64_t n);

// Sum of f_weight over points of the m-th approximation set lying in the
// half-plane 2y - x <= n, truncated at first coordinate <= xmax.  The
// untruncated sum is infinite (the band edge (2y', y') recurs forever),
// so the result always carries its truncation bound.
struct GValue {
  int64_t sum = 0;
  uint64_t truncation = 0;
};
GValue g_value(const PairTable& t, uint32_t m, uint64_t n, uint64_t xmax);

// --- Structural checkers ------------------------------------------------------

// Compares the finite sets at (x, y) and (x, y+1).  They must be equal
// when (x, y) is in S or b(x, y) = 0, and otherwise differ exactly by
// removing (x, y - b) and adding (x + r, y).  A reported swap must move
// weakly down-right: x1 - y1 >= x2 - y2 and x1 - 2y1 >= x2 - 2y2.
struct PhiStepReport {
  bool identity_expected = false;
  bool identity_actual = false;
  bool swap_shape_ok = false;      // diff is exactly the predicted single swap
  bool displacement_ok = false;    // both inequalities hold (identity: vacuous)
  std::optional<std::pair<uint64_t, uint64_t>> removed;
  std::optional<std::pair<uint64_t, uint64_t>> added;
  std::vector<std::pair<uint64_t, uint64_t>> unexpected_removed;
  std::vector<std::pair<uint64_t, uint64_t>> unexpected_added;
  bool ok() const {
    return identity_expected == identity_actual && swap_shape_ok &&
           displacement_ok && unexpected_removed.empty() &&
           unexpected_added.empty();
  }
};
PhiStepReport phi_step_check(const PairTable& t, uint32_t x, uint32_t y);

// Checks whether halving coordinates sends the band slice at n*2^k of a
// point set onto the band slice at n*2^(k-1) exactly four-to-one.  The
// report carries the slice sizes, the preimage-multiplicity range over
// hit members, strays (big points whose image leaves the small slice),
// hits onto non-members, and the first offending point of each kind.
struct HalveReport {
  uint64_t big_count = 0;
  uint64_t small_count = 0;
  uint64_t stray_points = 0;       // image outside the small slice
  uint64_t nonmember_hits = 0;     // image in the slice but not in the set
  uint64_t min_multiplicity = 0;   // over small-slice members (0 if unhit)
  uint64_t max_multiplicity = 0;
  bool exact_four_to_one = false;
  std::optional<std::pair<uint64_t, uint64_t>> first_stray;
  std::optional<std::pair<uint64_t, uint64_t>> first_nonmember_hit;
  std::optional<std::pair<uint64_t, uint64_t>> first_multiplicity_offender;
};
HalveReport halve_check_set(const PointSet& s, uint64_t n, uint32_t k);
HalveReport halve_check(const PairTable& t, uint32_t n, uint32_t k,
                        uint64_t xmax);

// Bounded scan for diagonal saturation r(x,x) = x - 1 above the structure
// threshold.  If the saturated set matches a single dyadic family
// {m * 2^j} on the scanned range and S restricted to positive coordinates
// is exactly the corresponding family of square blocks, the verdict is
// NotWellBehavedPattern with that base; otherwise the scan reports
// well-behaved-up-to-bound together with the least c1 candidate that
// clears every observed violation.
enum class WellBehavedVerdict : uint8_t {
  WellBehavedUpToBound,
  NotWellBehavedPattern,
};
struct WellBehavedReport {
  uint64_t scanned_bound = 0;
  std::vector<uint32_t> violations;
  WellBehavedVerdict verdict = WellBehavedVerdict::WellBehavedUpToBound;
  uint64_t c1_candidate = 0;
  std::optional<uint32_t> dyadic_base;
};
WellBehavedReport well_behaved_scan(const PairTable& t, uint32_t bound);

// Closed-form count of P-multisets below x for the unrestricted game:
// (3x^2 - 6xy + 4y^2 + 3x + 2) / 6 with y the greatest power of two <= x.
uint64_t pi_nim_closed(uint64_t x);

// --- Scale series -------------------------------------------------------------

enum class SeriesKind : uint8_t { PiBased, HBased };

struct ScaleReport {
  uint32_t base = 0;       // the n in n * 2^k
  SeriesKind kind = SeriesKind::PiBased;
  std::vector<mpq_class> zeta;    // k = 0 .. kmax
  std::vector<mpq_class> delta;   // |zeta[k+1] - zeta[k]|, size kmax
  bool bounds_ok = false;         // PiBased: all in [0,1]; HBased: [0, 8n^2]
  bool lower_bound_ok = false;    // PiBased only: zeta_k >= (n2^k-|F|)^2/(24 (n2^k)^2)
  bool deltas_shrinking = false;  // each delta <= its predecessor
};

// Solves once at n * 2^kmax and evaluates zeta_k = pi(n 2^k) / (n 2^k)^2
// exactly for k = 0..kmax.
ScaleReport zeta_series(const ForbiddenSet& f, uint32_t n, uint32_t kmax,
                        uint64_t ceiling_bytes = kDefaultEngineCeilingBytes);

// Same report shape for the slice-count series h(n2^k, n2^k) / 4^k,
// evaluated from one solved table of bound n * 2^kmax.
ScaleReport h_series(const PairTable& t, uint32_t n, uint32_t kmax);

// --- Counting identity ---------------------------------------------------------

// Evaluates 6*pi(m) against m^2 - m - 2h(m,m) + 4*pi2(m) + 6*pi1(m), all
// from the same table, and reports the difference.
struct IdentityReport {
  mpz_class lhs;
  mpz_class rhs;
  mpz_class diff;   // lhs - rhs
  bool ok() const { return diff == 0; }
};
IdentityReport identity_check(const PairTable& t, uint32_t m, uint64_t xmax);

// --- Row periodicity probe ------------------------------------------------------

// Smallest (q, p), ordered by q then p, with third(x, y+p) = third(x, y) + p
// for all q < y <= ymax - p.  The search is bounded (p <= ymax/4,
// q <= ymax/2); absence within the window is inconclusive, not a refutation.
struct RowPeriod {
  uint32_t p = 0;
  uint32_t q = 0;
};
std::optional<RowPeriod> row_periodicity_probe(const PairTable& t, uint32_t x,
                                               uint32_t ymax);

// --- Scaled box counts -----------------------------------------------------------

// Axis-aligned box with exact rational bounds, half-open in each axis.
struct RationalBox {
  mpq_class x0, x1;   // bounds for the largest coordinate
  mpq_class y0, y1;   // middle coordinate
  mpq_class z0, z1;   // smallest coordinate
};

// Number of P-multisets whose descending triple (a, b, c) satisfies
// a/2^k in [x0,x1), b/2^k in [y0,y1), c/2^k in [z0,z1); comparisons are
// exact rationals.  Requires the scaled box to fit inside the table for
// the two smaller coordinates.
uint64_t region_count(const PairTable& t, const RationalBox& box, uint32_t k);

}  // namespace cisnim
