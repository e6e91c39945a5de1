#include "cisnim/oracle.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "cisnim/errors.hpp"

namespace cisnim {

BoxSolution::BoxSolution(uint32_t bound, ForbiddenSet f,
                         std::vector<Status> statuses,
                         bool ignored_out_of_box_members)
    : bound_(bound),
      f_(std::move(f)),
      statuses_(std::move(statuses)),
      ignored_(ignored_out_of_box_members) {}

std::size_t BoxSolution::index(const Position& p) const {
  // Triples with max < a occupy a block of size a(a+1)(a+2)/6; within the
  // block of max a, pairs (b,c) with c <= b <= a are indexed b(b+1)/2 + c.
  uint64_t a = p.a, b = p.b, c = p.c;
  return static_cast<std::size_t>(a * (a + 1) * (a + 2) / 6 + b * (b + 1) / 2 +
                                  c);
}

Status BoxSolution::status(const Position& p) const {
  if (p.a >= bound_)
    throw std::out_of_range("position outside solved box (bound " +
                            std::to_string(bound_) + ")");
  return statuses_[index(p)];
}

std::optional<Position> BoxSolution::partition_offender() const {
  for (uint32_t a = 0; a < bound_; ++a)
    for (uint32_t b = 0; b <= a; ++b)
      for (uint32_t c = 0; c <= b; ++c) {
        Position p{a, b, c};
        Status s = statuses_[index(p)];
        if (s == Status::Forbidden) continue;
        bool has_p_child = false;
        for (const Position& q : children(p, f_))
          if (statuses_[index(q)] == Status::P) {
            has_p_child = true;
            break;
          }
        if (has_p_child != (s == Status::N)) return p;
      }
  return std::nullopt;
}

BoxSolution solve_box(uint32_t bound, const ForbiddenSet& f,
                      std::size_t ceiling_bytes) {
  if (bound == 0) throw std::domain_error("solve_box: bound must be positive");
  std::size_t count = box_position_count(bound);
  if (count > ceiling_bytes)
    throw resource_error("solve_box: bound " + std::to_string(bound) +
                         " needs " + std::to_string(count) +
                         " bytes, ceiling is " + std::to_string(ceiling_bytes));

  bool ignored = false;
  for (const Position& m : f.members())
    if (m.a >= bound) ignored = true;

  std::vector<Status> statuses(count, Status::N);
  BoxSolution sol(bound, f, {}, ignored);  // borrow index()

  // Children strictly lower the bean total, so positions are final once
  // every smaller total has been classified.  Within a total, iterate the
  // canonical triples ascending for a deterministic order.
  for (uint32_t total = 0; total <= 3 * (bound - 1); ++total) {
    uint32_t a_lo = (total + 2) / 3;
    for (uint32_t a = a_lo; a <= std::min<uint32_t>(bound - 1, total); ++a) {
      uint32_t rest = total - a;
      if (rest > 2 * a) continue;
      uint32_t b_lo = (rest + 1) / 2;
      for (uint32_t b = b_lo; b <= std::min(a, rest); ++b) {
        Position p{a, b, rest - b};
        std::size_t i = sol.index(p);
        if (f.contains(p)) {
          statuses[i] = Status::Forbidden;
          continue;
        }
        bool has_p_child = false;
        for (const Position& q : children(p, f))
          if (statuses[sol.index(q)] == Status::P) {
            has_p_child = true;
            break;
          }
        statuses[i] = has_p_child ? Status::N : Status::P;
      }
    }
  }
  return BoxSolution(bound, f, std::move(statuses), ignored);
}

}  // namespace cisnim
