#include "cisnim/table_scan.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cisnim {

namespace {

inline std::size_t row_base(uint32_t x) {
  return std::size_t(x) * (x + 1) / 2;
}

void require_bound(uint32_t m, uint32_t n, const char* what) {
  if (m > n)
    throw std::out_of_range(std::string(what) + " " + std::to_string(m) +
                            " exceeds table bound " + std::to_string(n));
}

// Tallies the P multisets whose pair (mid, min) sits in row x.  A pair
// owns its multiset exactly when the stored third is the largest heap
// (ties included), i.e. third >= x.
void count_row(const uint32_t* thirds, uint32_t x, uint32_t m,
               PiCounts& acc) {
  const uint32_t* row = thirds + row_base(x);
  for (uint32_t y = 0; y <= x; ++y) {
    uint32_t z = row[y];
    if (z < x || z >= m) continue;
    ++acc.pi;
    if (z == x && x == y)
      ++acc.pi1;
    else if (z == x || x == y)
      ++acc.pi2;
    else
      ++acc.pi3;
  }
}

PiCounts count_p_multisets_impl(const PairTable& t, uint32_t m,
                                bool parallel) {
  require_bound(m, t.n(), "count bound");
  const uint32_t* thirds = t.thirds().data();
  uint64_t pi = 0, pi1 = 0, pi2 = 0, pi3 = 0;
#pragma omp parallel for schedule(dynamic, 64) if (parallel) \
    reduction(+ : pi, pi1, pi2, pi3)
  for (int64_t x = 0; x < int64_t(m); ++x) {
    PiCounts local;
    count_row(thirds, static_cast<uint32_t>(x), m, local);
    pi += local.pi;
    pi1 += local.pi1;
    pi2 += local.pi2;
    pi3 += local.pi3;
  }
  return PiCounts{pi, pi1, pi2, pi3};
}

std::vector<uint64_t> histogram_impl(const PairTable& t, bool parallel) {
  const uint32_t n = t.n();
  const uint32_t* thirds = t.thirds().data();
  std::vector<uint64_t> hist(std::size_t(t.zbound()) + 1, 0);
#pragma omp parallel if (parallel)
  {
    std::vector<uint64_t> local(hist.size(), 0);
#pragma omp for schedule(dynamic, 64) nowait
    for (int64_t x = 0; x < int64_t(n); ++x) {
      const uint32_t* row = thirds + row_base(static_cast<uint32_t>(x));
      for (uint32_t y = 0; y <= x; ++y)
        if (row[y] >= x) ++local[row[y]];
    }
#pragma omp critical
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += local[i];
  }
  return hist;
}

void merge_report(InvariantReport& into, const InvariantReport& from) {
  into.checked_pairs += from.checked_pairs;
  into.z_sum_bound_violations += from.z_sum_bound_violations;
  into.tail_sum_violations += from.tail_sum_violations;
  into.diag_zero_violations += from.diag_zero_violations;
  into.consistency_violations += from.consistency_violations;
  into.symmetry_violations += from.symmetry_violations;
  if (from.first_offender &&
      (!into.first_offender || *from.first_offender < *into.first_offender))
    into.first_offender = from.first_offender;
}

void invariant_row(const PairTable& t, uint32_t x, InvariantReport& rep) {
  const uint32_t n = t.n();
  const uint32_t* thirds = t.thirds().data();
  const uint32_t* row = thirds + row_base(x);
  const uint64_t zthr = t.forbidden().z_bound_threshold();
  const uint64_t fsize = t.forbidden().size();
  for (uint32_t y = 0; y <= x; ++y) {
    uint32_t z = row[y];
    ++rep.checked_pairs;
    bool bad = false;
    if (uint64_t(z) > uint64_t(x) + y + fsize) {
      ++rep.z_sum_bound_violations;
      bad = true;
    }
    if (uint64_t(z) > zthr && uint64_t(z) > uint64_t(x) + y) {
      ++rep.tail_sum_violations;
      bad = true;
    }
    if (x == y && uint64_t(x) > zthr && z != 0) {
      ++rep.diag_zero_violations;
      bad = true;
    }
    if (z < n) {
      uint32_t hi = std::max(x, z), lo = std::min(x, z);
      if (thirds[row_base(hi) + lo] != y) {
        ++rep.consistency_violations;
        bad = true;
      }
      hi = std::max(y, z), lo = std::min(y, z);
      if (thirds[row_base(hi) + lo] != x) {
        ++rep.consistency_violations;
        bad = true;
      }
    }
    if (t.third_of(x, y) != t.third_of(y, x)) {
      ++rep.symmetry_violations;
      bad = true;
    }
    if (bad && !rep.first_offender) rep.first_offender = PairCoord{x, y};
  }
}

InvariantReport scan_invariants_impl(const PairTable& t, bool parallel) {
  InvariantReport rep;
#pragma omp parallel if (parallel)
  {
    InvariantReport local;
#pragma omp for schedule(dynamic, 64) nowait
    for (int64_t x = 0; x < int64_t(t.n()); ++x)
      invariant_row(t, static_cast<uint32_t>(x), local);
#pragma omp critical
    merge_report(rep, local);
  }
  return rep;
}

DiagStats diag_stats_impl(const PairTable& t, uint32_t bound, bool parallel) {
  require_bound(bound, t.n(), "diagonal scan bound");
  const uint32_t* thirds = t.thirds().data();
  DiagStats out;
  out.right.assign(bound, 0);
  out.below.assign(bound, 0);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (int64_t x = 0; x < int64_t(bound); ++x) {
    const uint32_t* row = thirds + row_base(static_cast<uint32_t>(x));
    uint32_t r = 0, b = 0;
    for (uint32_t y = 0; y < x; ++y) {
      if (row[y] > x) ++r;
      if (row[y] < y) ++b;
    }
    out.right[x] = r;
    out.below[x] = b;
  }
  return out;
}

CountStructureReport scan_count_structure_impl(const PairTable& t, uint32_t bound,
                                  bool parallel) {
  require_bound(bound, t.n(), "count-structure scan bound");
  CountStructureReport rep;
  rep.bound = bound;
  rep.threshold = t.forbidden().structure_threshold();
  if (bound == 0) return rep;

  const uint32_t* thirds = t.thirds().data();
  const uint64_t thr = rep.threshold;
  const uint32_t zbound = t.zbound();

  // bp[x*bound + y] = #{ y' <= y : third(x,y') < y' }, for y < x < bound.
  std::vector<uint32_t> bp(std::size_t(bound) * bound, 0);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (int64_t x = 1; x < int64_t(bound); ++x) {
    const uint32_t* row = thirds + row_base(static_cast<uint32_t>(x));
    uint32_t acc = 0;
    for (uint32_t y = 0; y < x; ++y) {
      acc += row[y] < y;
      bp[std::size_t(x) * bound + y] = acc;
    }
  }

  // Diagonal identity beyond the threshold.
  uint64_t diag_bad = 0;
  uint32_t diag_first = UINT32_MAX;
#pragma omp parallel for schedule(dynamic, 64) if (parallel) \
    reduction(+ : diag_bad) reduction(min : diag_first)
  for (int64_t x = int64_t(thr) + 1; x < int64_t(bound); ++x) {
    const uint32_t* row = thirds + row_base(static_cast<uint32_t>(x));
    uint64_t r = 0;
    for (uint32_t z = 0; z < x; ++z)
      if (row[z] > x) ++r;
    uint64_t b = bp[std::size_t(x) * bound + x - 1];
    if (r + 2 * b + 1 != uint64_t(x)) {
      ++diag_bad;
      diag_first = std::min<uint32_t>(diag_first, static_cast<uint32_t>(x));
    }
  }
  rep.diag_identity_violations = diag_bad;
  if (diag_first != UINT32_MAX) rep.first_diag_offender = diag_first;

  // Off-diagonal law: walk each column y from high x down, accumulating
  // right(x,y) = #{ z < y : third(y,z) >= x } from row y's histogram.
  uint64_t pair_bad = 0;
  uint64_t pair_first = UINT64_MAX;  // packed (x,y) for lexicographic min
#pragma omp parallel if (parallel)
  {
    std::vector<uint32_t> cnt(std::size_t(zbound) + 1, 0);
    uint64_t local_bad = 0, local_first = UINT64_MAX;
#pragma omp for schedule(dynamic, 16) nowait
    for (int64_t y = int64_t(thr) + 1; y < int64_t(bound) - 1; ++y) {
      const uint32_t* row = thirds + row_base(static_cast<uint32_t>(y));
      for (uint32_t z = 0; z < y; ++z) ++cnt[row[z]];
      uint64_t right = 0;
      for (int64_t v = zbound; v > y; --v) {
        right += cnt[v];
        if (v >= int64_t(bound) || right == 0) continue;
        std::size_t at = std::size_t(v) * bound + y;
        uint32_t below = bp[at];
        bool in_s = below > (y ? bp[at - 1] : 0);
        if (!in_s && below < right) {
          ++local_bad;
          local_first =
              std::min(local_first, (uint64_t(v) << 32) | uint64_t(y));
        }
      }
      for (uint32_t z = 0; z < y; ++z) cnt[row[z]] = 0;
    }
#pragma omp critical
    {
      pair_bad += local_bad;
      pair_first = std::min(pair_first, local_first);
    }
  }
  rep.below_right_violations = pair_bad;
  if (pair_first != UINT64_MAX)
    rep.first_pair_offender = PairCoord{uint32_t(pair_first >> 32),
                                        uint32_t(pair_first & 0xffffffffu)};
  return rep;
}

}  // namespace

PiCounts count_p_multisets(const PairTable& t, uint32_t m) {
  return count_p_multisets_impl(t, m, true);
}
PiCounts count_p_multisets_serial(const PairTable& t, uint32_t m) {
  return count_p_multisets_impl(t, m, false);
}

std::vector<uint64_t> p_multiset_histogram(const PairTable& t) {
  return histogram_impl(t, true);
}
std::vector<uint64_t> p_multiset_histogram_serial(const PairTable& t) {
  return histogram_impl(t, false);
}

std::vector<uint64_t> pi_prefix(const std::vector<uint64_t>& hist,
                                uint32_t limit) {
  std::vector<uint64_t> pi(std::size_t(limit) + 1, 0);
  for (uint32_t m = 1; m <= limit; ++m)
    pi[m] = pi[m - 1] + (m - 1 < hist.size() ? hist[m - 1] : 0);
  return pi;
}

InvariantReport scan_invariants(const PairTable& t) {
  return scan_invariants_impl(t, true);
}
InvariantReport scan_invariants_serial(const PairTable& t) {
  return scan_invariants_impl(t, false);
}

DiagStats diag_stats(const PairTable& t, uint32_t bound) {
  return diag_stats_impl(t, bound, true);
}
DiagStats diag_stats_serial(const PairTable& t, uint32_t bound) {
  return diag_stats_impl(t, bound, false);
}

CountStructureReport scan_count_structure(const PairTable& t, uint32_t bound) {
  return scan_count_structure_impl(t, bound, true);
}
CountStructureReport scan_count_structure_serial(const PairTable& t, uint32_t bound) {
  return scan_count_structure_impl(t, bound, false);
}

}  // namespace cisnim
