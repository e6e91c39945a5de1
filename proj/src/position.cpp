#include "cisnim/position.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>
#include <utility>

#include "cisnim/errors.hpp"

namespace cisnim {

Position canonicalize(uint32_t x, uint32_t y, uint32_t z) {
  if (x < y) std::swap(x, y);
  if (x < z) std::swap(x, z);
  if (y < z) std::swap(y, z);
  return Position{x, y, z};
}

ForbiddenSet::ForbiddenSet(std::vector<Position> members)
    : members_(std::move(members)) {
  for (Position& p : members_) p = canonicalize(p.a, p.b, p.c);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  for (const Position& p : members_) fmax_ = std::max(fmax_, p.a);
}

ForbiddenSet ForbiddenSet::parse(std::istream& in) {
  std::vector<Position> members;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    long long v[3];
    for (int i = 0; i < 3; ++i) {
      if (!(fields >> v[i]))
        throw parse_error("line " + std::to_string(lineno) +
                              ": expected three heap sizes",
                          lineno);
      if (v[i] < 0)
        throw parse_error("line " + std::to_string(lineno) +
                              ": heap size must be non-negative",
                          lineno);
      if (v[i] > 0xffffffffLL)
        throw parse_error("line " + std::to_string(lineno) +
                              ": heap size exceeds 32-bit range",
                          lineno);
    }
    std::string rest;
    if (fields >> rest)
      throw parse_error("line " + std::to_string(lineno) +
                            ": expected exactly three heap sizes",
                        lineno);
    members.push_back(canonicalize(static_cast<uint32_t>(v[0]),
                                   static_cast<uint32_t>(v[1]),
                                   static_cast<uint32_t>(v[2])));
  }
  return ForbiddenSet(std::move(members));
}

ForbiddenSet ForbiddenSet::misere() {
  return ForbiddenSet({Position{0, 0, 0}});
}

ForbiddenSet ForbiddenSet::merged(const ForbiddenSet& other) const {
  std::vector<Position> all = members_;
  all.insert(all.end(), other.members_.begin(), other.members_.end());
  return ForbiddenSet(std::move(all));
}

bool ForbiddenSet::contains(const Position& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

std::vector<Position> children(const Position& p, const ForbiddenSet& f) {
  if (f.contains(p))
    throw std::domain_error("children() called on a forbidden position");
  std::vector<Position> out;
  out.reserve(std::size_t(p.a) + p.b + p.c);
  auto push = [&](uint32_t x, uint32_t y, uint32_t z) {
    Position q = canonicalize(x, y, z);
    if (!f.contains(q)) out.push_back(q);
  };
  for (uint32_t v = 0; v < p.a; ++v) push(v, p.b, p.c);
  for (uint32_t v = 0; v < p.b; ++v) push(p.a, v, p.c);
  for (uint32_t v = 0; v < p.c; ++v) push(p.a, p.b, v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cisnim
