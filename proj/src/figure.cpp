#include "cisnim/figure.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "cisnim/rational.hpp"
#include "cisnim/table_scan.hpp"

namespace cisnim {

namespace {

FigureGrid figure_impl(const PairTable& t, uint32_t n, bool parallel) {
  if (n == 0) throw std::domain_error("figure: grid side must be positive");
  if (n > t.n()) throw std::out_of_range("figure: grid exceeds the table");

  FigureGrid grid;
  grid.n = n;
  grid.values.assign(static_cast<size_t>(n) * n, 0);

  uint32_t zmax = 0;
#pragma omp parallel for schedule(static) reduction(max : zmax) if (parallel)
  for (uint32_t y = 0; y < n; ++y) {
    size_t row = static_cast<size_t>(y) * n;
    for (uint32_t x = 0; x < n; ++x) {
      uint32_t z = t.third_of(std::max(x, y), std::min(x, y));
      grid.values[row + x] = z;
      zmax = std::max(zmax, z);
    }
  }
  grid.zmax = zmax;
  return grid;
}

}  // namespace

FigureGrid figure_from_table(const PairTable& t, uint32_t n) {
  return figure_impl(t, n, true);
}

FigureGrid figure_from_table_serial(const PairTable& t, uint32_t n) {
  return figure_impl(t, n, false);
}

void write_pgm(const FigureGrid& grid, std::ostream& os) {
  uint32_t n = grid.n;
  os << "P5\n" << n << " " << n << "\n255\n";
  uint64_t zmax = grid.zmax == 0 ? 1 : grid.zmax;
  std::vector<unsigned char> row(n);
  for (uint32_t r = 0; r < n; ++r) {
    uint32_t y = n - 1 - r;
    for (uint32_t x = 0; x < n; ++x) {
      row[x] = static_cast<unsigned char>(255ull * grid.at(x, y) / zmax);
    }
    os.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
}

void write_csv(const FigureGrid& grid, std::ostream& os) {
  os << "x,y,z\n";
  for (uint32_t x = 0; x < grid.n; ++x) {
    for (uint32_t y = 0; y < grid.n; ++y) {
      os << x << ',' << y << ',' << grid.at(x, y) << '\n';
    }
  }
}

void emit_figure(const PairTable& t, uint32_t n, FigureFormat format,
                 std::ostream& os) {
  FigureGrid grid = figure_from_table(t, n);
  if (format == FigureFormat::Pgm) {
    write_pgm(grid, os);
  } else {
    write_csv(grid, os);
  }
}

void emit_pi_curve(const ForbiddenSet& f, uint32_t xmax, std::ostream& os,
                   uint64_t ceiling_bytes) {
  os << "x,pi,ratio\n";
  if (xmax == 0) return;
  PairTable t = solve(xmax, f, ceiling_bytes);
  std::vector<uint64_t> hist = p_multiset_histogram(t);
  uint64_t pi = 0;
  for (uint64_t x = 1; x <= xmax; ++x) {
    pi += x - 1 < hist.size() ? hist[x - 1] : 0;
    mpq_class ratio(pi);
    ratio /= x;
    ratio /= x;
    ratio.canonicalize();
    os << x << ',' << pi << ',' << decimal_string(ratio) << '\n';
  }
}

void emit_series(const ScaleReport& report, std::ostream& os) {
  os << "k,zeta_num,zeta_den,zeta_decimal,delta\n";
  for (size_t k = 0; k < report.zeta.size(); ++k) {
    const mpq_class& z = report.zeta[k];
    os << k << ',' << z.get_num().get_str() << ',' << z.get_den().get_str()
       << ',' << decimal_string(z) << ',';
    if (k > 0) os << decimal_string(report.delta[k - 1]);
    os << '\n';
  }
}

}  // namespace cisnim
