// Grid rendering and CSV/series emission.  All outputs are byte
// deterministic: fixed header text, fixed row order, truncated decimal
// rendering, and binary PGM with explicit little-endian-free byte layout.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cisnim/analysis.hpp"
#include "cisnim/pair_table.hpp"

namespace cisnim {

// Square grid of third values z(x, y) for 0 <= x, y < n, symmetric in
// (x, y), together with the largest value present (used for normalization).
struct FigureGrid {
  uint32_t n = 0;
  std::vector<uint32_t> values;  // row-major, index y * n + x
  uint32_t zmax = 0;

  uint32_t at(uint32_t x, uint32_t y) const {
    return values[static_cast<size_t>(y) * n + x];
  }
};

// Fills the grid from the table; the parallel kernel and its serial twin
// must produce identical grids.
FigureGrid figure_from_table(const PairTable& t, uint32_t n);
FigureGrid figure_from_table_serial(const PairTable& t, uint32_t n);

// Binary PGM ("P5", maxval 255).  Pixel at (column x, row n-1-y) is
// floor(255 * z / zmax), with zmax treated as 1 when the grid maximum is 0,
// so the origin sits at the bottom-left of the rendered image.
void write_pgm(const FigureGrid& grid, std::ostream& os);

// CSV "x,y,z" with x ascending in the outer loop.
void write_csv(const FigureGrid& grid, std::ostream& os);

enum class FigureFormat : uint8_t { Pgm, Csv };

// Renders the n x n grid of third values in the chosen format.
void emit_figure(const PairTable& t, uint32_t n, FigureFormat format,
                 std::ostream& os);

// CSV "x,pi,ratio" for 1 <= x <= xmax: exact multiset counts below x and
// the ratio pi(x)/x^2 rendered to 20 significant digits.
void emit_pi_curve(const ForbiddenSet& f, uint32_t xmax, std::ostream& os,
                   uint64_t ceiling_bytes = kDefaultEngineCeilingBytes);

// CSV "k,zeta_num,zeta_den,zeta_decimal,delta" from a scale report; the
// delta column is empty on the first row.
void emit_series(const ScaleReport& report, std::ostream& os);

}  // namespace cisnim
