#pragma once

// Brute-force reference solver.  Classifies every position inside a
// bounded box by backward induction over the child relation, with no
// shortcuts: a position is P exactly when all of its children are N.
// Deliberately simple and slow; the fast engine is validated against it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cisnim/position.hpp"

namespace cisnim {

enum class Status : uint8_t { P, N, Forbidden };

// One status byte per canonical triple with all heaps < bound.
constexpr std::size_t box_position_count(uint64_t bound) {
  return static_cast<std::size_t>(bound * (bound + 1) * (bound + 2) / 6);
}

// Default ceiling admits bound <= 128.
constexpr std::size_t kDefaultBoxCeilingBytes = box_position_count(128);

class BoxSolution {
 public:
  BoxSolution(uint32_t bound, ForbiddenSet f, std::vector<Status> statuses,
              bool ignored_out_of_box_members);

  uint32_t bound() const { return bound_; }
  const ForbiddenSet& forbidden() const { return f_; }

  // True when some forbidden member lies outside the box and was ignored.
  bool ignored_out_of_box_members() const { return ignored_; }

  // Throws std::out_of_range if any heap of p is >= bound().
  Status status(const Position& p) const;

  // Checks the defining partition: no P-position has a P child and every
  // N-position has at least one.  Returns the first offender, if any.
  std::optional<Position> partition_offender() const;

  // Flat index of a canonical triple; exposed for exhaustive iteration.
  std::size_t index(const Position& p) const;

 private:
  uint32_t bound_;
  ForbiddenSet f_;
  std::vector<Status> statuses_;
  bool ignored_;
};

// Solves the whole box [0,bound)^3 by backward induction in increasing
// total-beans order.  Throws std::domain_error for bound == 0 and
// resource_error when the status array would exceed ceiling_bytes.
BoxSolution solve_box(uint32_t bound, const ForbiddenSet& f,
                      std::size_t ceiling_bytes = kDefaultBoxCeilingBytes);

}  // namespace cisnim
