// Benchmark harness comparing each OpenMP scan kernel against its serial
// reference twin on the same solved table, verifying that both produce
// identical results while timing them.  Also times the sieve itself and
// the boxed backward-induction solver at a small bound for scale.
//
// Exit status is 0 when every kernel pair agrees, 1 otherwise, so the
// smoke run doubles as a consistency test.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "cisnim/errors.hpp"
#include "cisnim/figure.hpp"
#include "cisnim/oracle.hpp"
#include "cisnim/pair_table.hpp"
#include "cisnim/position.hpp"
#include "cisnim/table_scan.hpp"

namespace {

double time_ms(const std::function<void()>& body, int repeat) {
  double best = 0.0;
  for (int i = 0; i < repeat; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (i == 0 || ms < best) best = ms;
  }
  return best;
}

bool report(const std::string& name, double serial_ms, double parallel_ms,
            bool match) {
  std::cout << std::left << std::setw(26) << name << std::right << std::fixed
            << std::setprecision(2) << std::setw(12) << serial_ms
            << std::setw(12) << parallel_ms << std::setw(10)
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
            << (match ? "   match" : "   MISMATCH") << "\n";
  return match;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial-versus-parallel kernel benchmark"};
  uint32_t n = 2000;
  std::string forbidden_path;
  bool misere = false;
  bool smoke = false;
  int repeat = 3;
  app.add_option("--n", n, "pair bound for the benchmark table");
  app.add_option("--forbidden", forbidden_path, "forbidden-set file");
  app.add_flag("--misere", misere, "forbid the empty position too");
  app.add_flag("--smoke", smoke, "tiny sizes, one repetition (for CI)");
  app.add_option("--repeat", repeat, "repetitions per kernel (best-of)");
  CLI11_PARSE(app, argc, argv);

  if (smoke) {
    n = 256;
    repeat = 1;
  }

  cisnim::ForbiddenSet f;
  if (!forbidden_path.empty()) {
    std::ifstream in(forbidden_path);
    if (!in) {
      std::cerr << "cannot open " << forbidden_path << "\n";
      return 2;
    }
    f = cisnim::ForbiddenSet::parse(in);
  }
  if (misere) f = f.merged(cisnim::ForbiddenSet::misere());

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif

  double solve_ms = 0.0;
  auto t0 = std::chrono::steady_clock::now();
  cisnim::PairTable t = cisnim::solve(n, f);
  auto t1 = std::chrono::steady_clock::now();
  solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::cout << "sieve solve n=" << n << ": " << std::fixed
            << std::setprecision(2) << solve_ms << " ms\n";

  uint32_t box = smoke ? 24 : 48;
  double box_ms = time_ms([&] { cisnim::solve_box(box, f); }, 1);
  std::cout << "boxed solver bound=" << box << ": " << box_ms << " ms\n\n";

  std::cout << std::left << std::setw(26) << "kernel" << std::right
            << std::setw(12) << "serial ms" << std::setw(12) << "parallel ms"
            << std::setw(10) << "speedup" << "\n";

  bool all_match = true;

  {
    cisnim::PiCounts a, b;
    double s = time_ms([&] { a = cisnim::count_p_multisets_serial(t, n); },
                       repeat);
    double p = time_ms([&] { b = cisnim::count_p_multisets(t, n); }, repeat);
    bool eq = a.pi == b.pi && a.pi1 == b.pi1 && a.pi2 == b.pi2 && a.pi3 == b.pi3;
    all_match &= report("count_p_multisets", s, p, eq);
  }
  {
    std::vector<uint64_t> a, b;
    double s =
        time_ms([&] { a = cisnim::p_multiset_histogram_serial(t); }, repeat);
    double p = time_ms([&] { b = cisnim::p_multiset_histogram(t); }, repeat);
    all_match &= report("p_multiset_histogram", s, p, a == b);
  }
  {
    cisnim::InvariantReport a, b;
    double s = time_ms([&] { a = cisnim::scan_invariants_serial(t); }, repeat);
    double p = time_ms([&] { b = cisnim::scan_invariants(t); }, repeat);
    bool eq = a.checked_pairs == b.checked_pairs &&
              a.total_violations() == b.total_violations();
    all_match &= report("scan_invariants", s, p, eq);
  }
  {
    cisnim::DiagStats a, b;
    double s = time_ms([&] { a = cisnim::diag_stats_serial(t, n); }, repeat);
    double p = time_ms([&] { b = cisnim::diag_stats(t, n); }, repeat);
    bool eq = a.right == b.right && a.below == b.below;
    all_match &= report("diag_stats", s, p, eq);
  }
  {
    cisnim::CountStructureReport a, b;
    double s = time_ms([&] { a = cisnim::scan_count_structure_serial(t, n); }, repeat);
    double p = time_ms([&] { b = cisnim::scan_count_structure(t, n); }, repeat);
    bool eq = a.bound == b.bound &&
              a.diag_identity_violations == b.diag_identity_violations &&
              a.below_right_violations == b.below_right_violations;
    all_match &= report("scan_count_structure", s, p, eq);
  }
  {
    cisnim::FigureGrid a, b;
    double s = time_ms([&] { a = cisnim::figure_from_table_serial(t, n); },
                       repeat);
    double p = time_ms([&] { b = cisnim::figure_from_table(t, n); }, repeat);
    bool eq = a.n == b.n && a.zmax == b.zmax && a.values == b.values;
    all_match &= report("figure_from_table", s, p, eq);
  }

  std::cout << (all_match ? "\nall kernels match\n"
                          : "\nKERNEL MISMATCH DETECTED\n");
  return all_match ? 0 : 1;
}
