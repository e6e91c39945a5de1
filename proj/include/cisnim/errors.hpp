#pragma once

#include <stdexcept>
#include <string>

namespace cisnim {

// Input text could not be parsed; `line` is 1-based when the source is a
// file, 0 when no line applies (single values, unopenable streams).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what, int line = 0)
      : std::runtime_error(what), line(line) {}
  int line;
};

// A serialized table failed structural validation (magic, version,
// truncation, checksum, or field consistency).
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation would exceed a configured memory ceiling.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cisnim
