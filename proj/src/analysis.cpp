#include "cisnim/analysis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "cisnim/pair_table.hpp"

namespace cisnim {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

void require_range(bool cond, const char* what) {
  if (!cond) throw std::out_of_range(what);
}

}  // namespace

// --- Pair-level queries -----------------------------------------------------

bool s_contains(const PairTable& t, uint32_t x, uint32_t y) {
  require_range(x < t.n() && y < t.n(), "s_contains: coordinate beyond table");
  if (x <= y) return false;
  return t.third_of(x, y) < y;
}

uint64_t r_count(const PairTable& t, uint32_t x, uint32_t y) {
  require_range(y < t.n(), "r_count: row beyond table");
  require(x > y, "r_count: requires x > y");
  uint64_t count = 0;
  for (uint32_t z = 0; z < y; ++z) {
    if (t.third_of(y, z) >= x) ++count;
  }
  return count;
}

std::pair<uint64_t, uint64_t> rb_diag(const PairTable& t, uint32_t x) {
  require_range(x < t.n(), "rb_diag: row beyond table");
  require(x >= 1, "rb_diag: requires x >= 1");
  uint64_t r = 0;
  uint64_t b = 0;
  for (uint32_t z = 0; z < x; ++z) {
    uint32_t third = t.third_of(x, z);
    if (third > x) ++r;
    if (third < z) ++b;
  }
  return {r, b};
}

uint64_t b_count(const PairTable& t, uint32_t x, uint32_t y) {
  require_range(x < t.n(), "b_count: row beyond table");
  uint64_t count = 0;
  if (x == 0) return 0;
  uint32_t cap = std::min<uint32_t>(y, x - 1);
  for (uint32_t yp = 0; yp <= cap; ++yp) {
    if (t.third_of(x, yp) < yp) ++count;
  }
  return count;
}

bool is_hole(const PairTable& t, uint32_t x, uint32_t y) {
  require_range(x < t.n() && y < t.n(), "is_hole: coordinate beyond table");
  require(x > y, "is_hole: requires x > y");
  return !s_contains(t, x, y) && b_count(t, x, y) > 0;
}

// --- PointSet -----------------------------------------------------------------

uint64_t PointSet::key(uint64_t x, uint64_t y) {
  if (x >> 32 || y >> 32) {
    throw std::domain_error("PointSet: coordinate exceeds 32-bit range");
  }
  return (x << 32) | y;
}

bool PointSet::contains(uint64_t x, uint64_t y) const {
  if (x > xmax_) {
    throw std::out_of_range(
        "PointSet: membership query beyond the truncation bound");
  }
  return pts_.count(key(x, y)) != 0;
}

void PointSet::insert(uint64_t x, uint64_t y) {
  if (x > xmax_) {
    throw std::out_of_range("PointSet: insertion beyond the truncation bound");
  }
  pts_.insert(key(x, y));
}

void PointSet::erase(uint64_t x, uint64_t y) {
  if (x > xmax_) {
    throw std::out_of_range("PointSet: erase beyond the truncation bound");
  }
  pts_.erase(key(x, y));
}

std::vector<std::pair<uint64_t, uint64_t>> PointSet::sorted_points() const {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  out.reserve(pts_.size());
  for (uint64_t k : pts_) out.emplace_back(k >> 32, k & 0xffffffffull);
  std::sort(out.begin(), out.end());
  return out;
}

// --- build_U / build_Ubar / build_Sn -------------------------------------------

PointSet build_U(const PairTable& t, uint32_t x, uint32_t y) {
  require(x > t.forbidden().structure_threshold(),
          "build_U: x must exceed the structure threshold");
  require(y <= x, "build_U: requires y <= x");
  require_range(x < t.n(), "build_U: table too small for the requested x");

  std::vector<std::pair<uint64_t, uint64_t>> pts;

  // Diagonal-run region: rows x' <= x filled from x' - b(x',x') upward.
  for (uint32_t xp = 1; xp <= x; ++xp) {
    uint64_t bd = rb_diag(t, xp).second;
    uint32_t lo = bd >= xp ? 0 : xp - static_cast<uint32_t>(bd);
    for (uint32_t yp = lo; yp < xp; ++yp) pts.emplace_back(xp, yp);
  }
  // Row-x run below y.
  if (y >= 1) {
    uint64_t bm = b_count(t, x, y - 1);
    uint32_t lo = bm >= y ? 0 : y - static_cast<uint32_t>(bm);
    for (uint32_t yp = lo; yp < y; ++yp) pts.emplace_back(x, yp);
  }
  // Column extensions at x for second coordinates in [y, x).
  for (uint32_t yp = y; yp < x; ++yp) {
    uint64_t rr = r_count(t, x, yp);
    for (uint64_t xp = x; xp < x + rr; ++xp) pts.emplace_back(xp, yp);
  }
  // Column extensions at x + 1 for second coordinates below y.
  for (uint32_t yp = 0; yp < y; ++yp) {
    uint64_t rr = r_count(t, x + 1, yp);
    for (uint64_t xp = x + 1; xp <= x + rr; ++xp) pts.emplace_back(xp, yp);
  }

  uint64_t xmax = x;
  for (const auto& p : pts) xmax = std::max(xmax, p.first);
  PointSet out(xmax);
  for (const auto& p : pts) out.insert(p.first, p.second);
  return out;
}

PointSet build_Ubar(const PairTable& t, uint32_t x, uint32_t y, uint64_t xmax) {
  require(xmax >= x, "build_Ubar: truncation bound below x");
  PointSet u = build_U(t, x, y);
  PointSet out(xmax);
  for (const auto& p : u.sorted_points()) {
    if (p.first <= xmax) out.insert(p.first, p.second);
  }
  // Band rule, decided in ascending first coordinate: (x', y') with y' >= x
  // is a member iff y' < x' <= 2y' and the reflected point (y', floor(x'/2))
  // is absent.  Every reflected point has first coordinate y' < x', so it is
  // already decided when queried.
  for (uint64_t xp = x + 1; xp <= xmax; ++xp) {
    uint64_t ylo = std::max<uint64_t>(x, (xp + 1) / 2);
    for (uint64_t yp = ylo; yp < xp; ++yp) {
      if (!out.contains(yp, xp / 2)) out.insert(xp, yp);
    }
  }
  return out;
}

PointSet build_Sn(const PairTable& t, uint32_t n, uint64_t xmax) {
  return build_Ubar(t, n, 0, xmax);
}

// --- Slice counters -------------------------------------------------------------

uint64_t slice_count(const PointSet& s, uint64_t n) {
  require(n >= 1, "slice_count: slice index must be positive");
  require(n < 2 || s.xmax() >= 2 * (n - 1),
          "slice_count: truncation bound does not cover the slice");
  uint64_t count = 0;
  for (uint64_t yp = (n + 1) / 2; yp < n; ++yp) {
    for (uint64_t xp = n; xp <= 2 * yp; ++xp) {
      if (s.contains(xp, yp)) ++count;
    }
  }
  return count;
}

uint64_t h_value(const PairTable& t, uint32_t m, uint64_t n, uint64_t xmax) {
  require(m > t.forbidden().structure_threshold(),
          "h_value: m must exceed the structure threshold");
  require(n >= 1, "h_value: slice index must be positive");
  require(n < 2 || xmax >= 2 * (n - 1),
          "h_value: truncation bound does not cover the slice");
  PointSet s = build_Sn(t, m, xmax);
  return slice_count(s, n);
}

uint64_t h_direct(const PairTable& t, uint32_t m) {
  require_range(m <= t.n(), "h_direct: bound beyond table");
  uint64_t count = 0;
  for (uint32_t y = 1; y < m; ++y) count += r_count(t, m, y);
  return count;
}

int64_t f_weight(int64_t x, int64_t y, int64_t n) { return n + 2 * x - 3 * y + 2; }

GValue g_value(const PairTable& t, uint32_t m, uint64_t n, uint64_t xmax) {
  require(m > t.forbidden().structure_threshold(),
          "g_value: m must exceed the structure threshold");
  PointSet s = build_Sn(t, m, xmax);
  GValue out;
  out.truncation = xmax;
  for (const auto& p : s.sorted_points()) {
    int64_t x = static_cast<int64_t>(p.first);
    int64_t y = static_cast<int64_t>(p.second);
    if (2 * y - x <= static_cast<int64_t>(n)) {
      out.sum += f_weight(x, y, static_cast<int64_t>(n));
    }
  }
  return out;
}

// --- phi_step_check --------------------------------------------------------------

PhiStepReport phi_step_check(const PairTable& t, uint32_t x, uint32_t y) {
  require(y < x, "phi_step_check: requires y < x");
  PointSet u0 = build_U(t, x, y);
  PointSet u1 = build_U(t, x, y + 1);

  auto p0 = u0.sorted_points();
  auto p1 = u1.sorted_points();
  std::vector<std::pair<uint64_t, uint64_t>> removed;
  std::vector<std::pair<uint64_t, uint64_t>> added;
  std::set_difference(p0.begin(), p0.end(), p1.begin(), p1.end(),
                      std::back_inserter(removed));
  std::set_difference(p1.begin(), p1.end(), p0.begin(), p0.end(),
                      std::back_inserter(added));

  PhiStepReport rep;
  bool in_s = s_contains(t, x, y);
  uint64_t b = b_count(t, x, y);
  uint64_t r = r_count(t, x, y);
  rep.identity_expected = in_s || b == 0;
  rep.identity_actual = removed.empty() && added.empty();

  if (rep.identity_expected) {
    rep.swap_shape_ok = rep.identity_actual;
    rep.displacement_ok = true;  // no swap predicted
    rep.unexpected_removed = removed;
    rep.unexpected_added = added;
    return rep;
  }

  std::pair<uint64_t, uint64_t> want_removed{x, y - b};
  std::pair<uint64_t, uint64_t> want_added{x + r, y};
  rep.removed = want_removed;
  rep.added = want_added;
  rep.swap_shape_ok = removed.size() == 1 && added.size() == 1 &&
                      removed.front() == want_removed &&
                      added.front() == want_added;
  for (const auto& p : removed) {
    if (p != want_removed) rep.unexpected_removed.push_back(p);
  }
  for (const auto& p : added) {
    if (p != want_added) rep.unexpected_added.push_back(p);
  }
  // Down-right displacement: x1-y1 >= x2-y2 and x1-2y1 >= x2-2y2 for the
  // swap (x, y-b) -> (x+r, y) reduce to b >= r and 2b >= r.
  rep.displacement_ok = b >= r && 2 * b >= r;
  return rep;
}

// --- halve_check ------------------------------------------------------------------

namespace {

bool in_slice(uint64_t x, uint64_t y, uint64_t n) {
  return y < n && n <= x && x <= 2 * y;
}

}  // namespace

HalveReport halve_check_set(const PointSet& s, uint64_t n, uint32_t k) {
  require(k >= 1, "halve_check: requires k >= 1");
  uint64_t big = n << k;
  uint64_t small = n << (k - 1);
  require(big >= n, "halve_check: slice index overflow");
  require(s.xmax() >= 2 * (big - 1),
          "halve_check: truncation bound does not cover the larger slice");

  HalveReport rep;
  std::unordered_map<uint64_t, uint64_t> mult;
  for (uint64_t yp = (big + 1) / 2; yp < big; ++yp) {
    for (uint64_t xp = big; xp <= 2 * yp; ++xp) {
      if (!s.contains(xp, yp)) continue;
      ++rep.big_count;
      uint64_t u = xp / 2;
      uint64_t v = yp / 2;
      if (!in_slice(u, v, small)) {
        ++rep.stray_points;
        if (!rep.first_stray) rep.first_stray = {xp, yp};
        continue;
      }
      if (!s.contains(u, v)) {
        ++rep.nonmember_hits;
        if (!rep.first_nonmember_hit) rep.first_nonmember_hit = {u, v};
        continue;
      }
      ++mult[(u << 32) | v];
    }
  }

  bool first_member = true;
  for (uint64_t v = (small + 1) / 2; v < small; ++v) {
    for (uint64_t u = small; u <= 2 * v; ++u) {
      if (!s.contains(u, v)) continue;
      ++rep.small_count;
      auto it = mult.find((u << 32) | v);
      uint64_t m = it == mult.end() ? 0 : it->second;
      if (first_member) {
        rep.min_multiplicity = rep.max_multiplicity = m;
        first_member = false;
      } else {
        rep.min_multiplicity = std::min(rep.min_multiplicity, m);
        rep.max_multiplicity = std::max(rep.max_multiplicity, m);
      }
      if (m != 4 && !rep.first_multiplicity_offender) {
        rep.first_multiplicity_offender = {u, v};
      }
    }
  }

  rep.exact_four_to_one =
      rep.stray_points == 0 && rep.nonmember_hits == 0 &&
      (rep.small_count == 0 ||
       (rep.min_multiplicity == 4 && rep.max_multiplicity == 4));
  return rep;
}

HalveReport halve_check(const PairTable& t, uint32_t n, uint32_t k,
                        uint64_t xmax) {
  require(n > t.forbidden().structure_threshold(),
          "halve_check: n must exceed the structure threshold");
  require(k >= 1, "halve_check: requires k >= 1");
  require(xmax >= (static_cast<uint64_t>(n) << (k + 1)),
          "halve_check: truncation bound below 2^(k+1) * n");
  PointSet s = build_Sn(t, n, xmax);
  return halve_check_set(s, static_cast<uint64_t>(n), k);
}

// --- well_behaved_scan ---------------------------------------------------------------

WellBehavedReport well_behaved_scan(const PairTable& t, uint32_t bound) {
  require_range(bound <= t.n(), "well_behaved_scan: bound beyond table");
  uint64_t thr = t.forbidden().structure_threshold();

  WellBehavedReport rep;
  rep.scanned_bound = bound;
  for (uint64_t x = thr + 1; x < bound; ++x) {
    auto [r, b] = rb_diag(t, static_cast<uint32_t>(x));
    (void)b;
    if (r >= x - 1) rep.violations.push_back(static_cast<uint32_t>(x));
  }

  if (rep.violations.empty()) {
    rep.verdict = WellBehavedVerdict::WellBehavedUpToBound;
    rep.c1_candidate = thr + 1;
    return rep;
  }

  // Try to match the saturated diagonals against a single dyadic family
  // {base * 2^j} that is complete on the scanned range and still alive at
  // the far end (otherwise the pattern stopped and the scan treats the
  // violations as a finite prefix).
  uint32_t base = rep.violations.front();
  std::vector<uint32_t> family;
  for (uint64_t v = base; v < bound; v *= 2) {
    if (v > thr) family.push_back(static_cast<uint32_t>(v));
  }
  bool pattern = family == rep.violations &&
                 2ull * rep.violations.back() >= bound;

  if (pattern) {
    // Confirm the block structure: for positive coordinates at or above the
    // base, membership in S must hold exactly inside squares
    // [base*2^j, base*2^(j+1)) x [base*2^j, base*2^(j+1)).
    auto block_floor = [base](uint64_t v) {
      uint64_t lo = base;
      while (2 * lo <= v) lo *= 2;
      return lo;
    };
    bool blocks_ok = true;
    for (uint32_t x = base; x < bound && blocks_ok; ++x) {
      for (uint32_t y = base; y < x; ++y) {
        bool same_block = block_floor(x) == block_floor(y);
        if (s_contains(t, x, y) != same_block) {
          blocks_ok = false;
          break;
        }
      }
    }
    if (blocks_ok) {
      rep.verdict = WellBehavedVerdict::NotWellBehavedPattern;
      rep.dyadic_base = base;
      rep.c1_candidate = 0;
      return rep;
    }
  }

  rep.verdict = WellBehavedVerdict::WellBehavedUpToBound;
  rep.c1_candidate = std::max<uint64_t>(thr + 1, rep.violations.back());
  return rep;
}

// --- pi_nim_closed -----------------------------------------------------------------

uint64_t pi_nim_closed(uint64_t x) {
  require(x >= 1, "pi_nim_closed: requires x >= 1");
  require(x < (1ull << 31), "pi_nim_closed: argument too large");
  unsigned __int128 xx = x;
  unsigned __int128 yy = std::bit_floor(x);
  unsigned __int128 num = 3 * xx * xx + 4 * yy * yy + 3 * xx + 2 - 6 * xx * yy;
  if (num % 6 != 0) {
    throw std::logic_error("pi_nim_closed: numerator not divisible by 6");
  }
  return static_cast<uint64_t>(num / 6);
}

// --- scale series ------------------------------------------------------------------

namespace {

void finish_scale_report(ScaleReport& rep, const mpq_class& upper,
                         const ForbiddenSet* f) {
  rep.bounds_ok = true;
  for (const auto& z : rep.zeta) {
    if (z < 0 || z > upper) rep.bounds_ok = false;
  }
  rep.delta.clear();
  for (size_t i = 0; i + 1 < rep.zeta.size(); ++i) {
    rep.delta.push_back(abs(rep.zeta[i + 1] - rep.zeta[i]));
  }
  rep.deltas_shrinking = true;
  for (size_t i = 1; i < rep.delta.size(); ++i) {
    if (rep.delta[i] > rep.delta[i - 1]) rep.deltas_shrinking = false;
  }
  rep.lower_bound_ok = true;
  if (f != nullptr) {
    for (size_t k = 0; k < rep.zeta.size(); ++k) {
      uint64_t m = static_cast<uint64_t>(rep.base) << k;
      uint64_t gap = m > f->size() ? m - f->size() : 0;
      mpq_class lower(gap, 24);
      lower *= gap;
      lower /= m;
      lower /= m;
      lower.canonicalize();
      if (rep.zeta[k] < lower) rep.lower_bound_ok = false;
    }
  }
}

}  // namespace

ScaleReport zeta_series(const ForbiddenSet& f, uint32_t n, uint32_t kmax,
                        uint64_t ceiling_bytes) {
  require(n >= 1, "zeta_series: requires n >= 1");
  uint64_t size = static_cast<uint64_t>(n) << kmax;
  require(size <= 0xffffffffull, "zeta_series: n * 2^kmax exceeds table range");
  PairTable t = solve(static_cast<uint32_t>(size), f, ceiling_bytes);

  ScaleReport rep;
  rep.base = n;
  rep.kind = SeriesKind::PiBased;
  for (uint32_t k = 0; k <= kmax; ++k) {
    uint64_t m = static_cast<uint64_t>(n) << k;
    uint64_t pi = t.pi_counts(static_cast<uint32_t>(m)).pi;
    mpq_class z(pi);
    z /= m;
    z /= m;
    z.canonicalize();
    rep.zeta.push_back(z);
  }
  finish_scale_report(rep, mpq_class(1), &f);
  return rep;
}

ScaleReport h_series(const PairTable& t, uint32_t n, uint32_t kmax) {
  require(n > t.forbidden().structure_threshold(),
          "h_series: base must exceed the structure threshold");
  ScaleReport rep;
  rep.base = n;
  rep.kind = SeriesKind::HBased;
  mpz_class pow4(1);
  for (uint32_t k = 0; k <= kmax; ++k) {
    uint64_t m = static_cast<uint64_t>(n) << k;
    require(m <= 0xffffffffull, "h_series: n * 2^k exceeds table range");
    uint64_t h = h_value(t, static_cast<uint32_t>(m), m, 2 * m);
    mpq_class z(mpz_class(h), pow4);
    z.canonicalize();
    rep.zeta.push_back(z);
    pow4 *= 4;
  }
  mpz_class nz(static_cast<unsigned long>(n));
  mpq_class upper(nz * nz * 8);
  finish_scale_report(rep, upper, nullptr);
  return rep;
}

// --- identity_check ----------------------------------------------------------------

IdentityReport identity_check(const PairTable& t, uint32_t m, uint64_t xmax) {
  require(m >= 1, "identity_check: requires m >= 1");
  PiCounts p = t.pi_counts(m);
  uint64_t h = h_value(t, m, m, xmax);

  IdentityReport rep;
  rep.lhs = mpz_class(6) * mpz_class(p.pi);
  mpz_class mm(m);
  rep.rhs = mm * mm - mm - 2 * mpz_class(h) + 4 * mpz_class(p.pi2) +
            6 * mpz_class(p.pi1);
  rep.diff = rep.lhs - rep.rhs;
  return rep;
}

// --- row_periodicity_probe ------------------------------------------------------------

std::optional<RowPeriod> row_periodicity_probe(const PairTable& t, uint32_t x,
                                               uint32_t ymax) {
  require_range(x < t.n(), "row_periodicity_probe: row beyond table");
  require_range(ymax < t.n(),
                "row_periodicity_probe: window beyond table (needs ymax < n)");
  uint32_t qmax = ymax / 2;
  uint32_t pmax = ymax / 4;
  for (uint32_t q = 0; q <= qmax; ++q) {
    for (uint32_t p = 1; p <= pmax; ++p) {
      if (q + p + 1 > ymax) continue;  // empty window
      bool ok = true;
      for (uint32_t y = q + 1; y + p <= ymax; ++y) {
        if (t.third_of(x, y + p) !=
            t.third_of(x, y) + static_cast<uint64_t>(p)) {
          ok = false;
          break;
        }
      }
      if (ok) return RowPeriod{p, q};
    }
  }
  return std::nullopt;
}

// --- region_count -----------------------------------------------------------------------

uint64_t region_count(const PairTable& t, const RationalBox& box, uint32_t k) {
  require(k < 32, "region_count: scale exponent too large");
  mpz_class scale = mpz_class(1) << k;
  mpq_class X0 = box.x0 * scale, X1 = box.x1 * scale;
  mpq_class Y0 = box.y0 * scale, Y1 = box.y1 * scale;
  mpq_class Z0 = box.z0 * scale, Z1 = box.z1 * scale;
  require_range(Y1 <= mpq_class(t.n()) && Z1 <= mpq_class(t.n()),
                "region_count: scaled box exceeds the solved table");

  auto in_range = [](uint64_t v, const mpq_class& lo, const mpq_class& hi) {
    return cmp(lo, static_cast<unsigned long>(v)) <= 0 &&
           cmp(hi, static_cast<unsigned long>(v)) > 0;
  };

  uint64_t count = 0;
  for (uint32_t x = 0; x < t.n(); ++x) {
    for (uint32_t y = 0; y <= x; ++y) {
      uint32_t z = t.third_of(x, y);
      if (z < x) continue;  // counted by the pair whose third is the maximum
      // Descending triple is (z, x, y).
      if (in_range(z, X0, X1) && in_range(x, Y0, Y1) && in_range(y, Z0, Z1)) {
        ++count;
      }
    }
  }
  return count;
}

}  // namespace cisnim
