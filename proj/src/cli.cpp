#include "cisnim/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "cisnim/analysis.hpp"
#include "cisnim/errors.hpp"
#include "cisnim/figure.hpp"
#include "cisnim/pair_table.hpp"
#include "cisnim/position.hpp"
#include "cisnim/rational.hpp"
#include "cisnim/table_scan.hpp"
#include "cisnim/verify.hpp"

namespace cisnim {
namespace {

// Flags shared by every subcommand that needs a forbidden set or a solved
// table.  A table comes either from a binary cache or from a fresh solve
// at --n; the cache already carries its forbidden set, so --cache excludes
// --forbidden and --misere.
struct TableArgs {
  std::string cache_path;
  std::string forbidden_path;
  bool misere = false;
  uint32_t n = 0;
  CLI::Option* cache_opt = nullptr;
  CLI::Option* n_opt = nullptr;
};

void add_forbidden_flags(CLI::App* cmd, TableArgs* a) {
  cmd->add_option("--forbidden", a->forbidden_path,
                  "file with one forbidden position per line (three "
                  "whitespace-separated heap sizes; '#' comments allowed)")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--misere", a->misere,
                "also forbid the empty position (misere play)");
}

void add_table_flags(CLI::App* cmd, TableArgs* a) {
  a->cache_opt = cmd->add_option("--cache", a->cache_path,
                                 "load the pair table from this cache file")
                     ->check(CLI::ExistingFile);
  a->n_opt = cmd->add_option(
      "--n", a->n, "solve a fresh pair table for all pairs below this bound");
  add_forbidden_flags(cmd, a);
  a->cache_opt->excludes("--forbidden");
  a->cache_opt->excludes("--misere");
  a->cache_opt->excludes(a->n_opt);
}

ForbiddenSet forbidden_from(const TableArgs& a) {
  ForbiddenSet f;
  if (!a.forbidden_path.empty()) {
    std::ifstream in(a.forbidden_path);
    if (!in) throw parse_error("cannot open " + a.forbidden_path);
    f = ForbiddenSet::parse(in);
  }
  if (a.misere) f = f.merged(ForbiddenSet::misere());
  return f;
}

PairTable table_from(const TableArgs& a) {
  if (!a.cache_path.empty()) {
    std::ifstream in(a.cache_path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + a.cache_path);
    return PairTable::load(in);
  }
  if (a.n == 0) {
    throw std::invalid_argument("need --cache or a positive --n");
  }
  return solve(a.n, forbidden_from(a));
}

// Opens --out for writing, or hands back the given stream when the path is
// empty (stdout for text emitters).
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  return out;
}

int emit_suite(const SuiteResult& result) {
  std::cout << format_suite(result);
  return result.pass() ? 0 : 1;
}

const char* verdict_name(WellBehavedVerdict v) {
  return v == WellBehavedVerdict::NotWellBehavedPattern
             ? "not-well-behaved-pattern"
             : "well-behaved-up-to-bound";
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{
      "Exact P-position toolkit for three-heap take-away games with a "
      "finite set of forbidden positions"};
  app.set_help_all_flag("--help-all", "print help for every subcommand");
  app.require_subcommand(1);

  // ---- solve ---------------------------------------------------------
  auto args_solve = std::make_shared<TableArgs>();
  std::string solve_cache_out;
  CLI::App* cmd_solve =
      app.add_subcommand("solve", "build the pair table and report counts");
  cmd_solve->add_option("--n", args_solve->n, "pair bound (exclusive)")
      ->required()
      ->check(CLI::PositiveNumber);
  add_forbidden_flags(cmd_solve, args_solve.get());
  cmd_solve->add_option("--cache", solve_cache_out,
                        "write the solved table to this cache file");
  cmd_solve->callback([args_solve, &solve_cache_out] {
    PairTable t = solve(args_solve->n, forbidden_from(*args_solve));
    PiCounts pi = count_p_multisets(t, t.n());
    std::cout << "solved n=" << t.n() << " forbidden=" << t.forbidden().size()
              << " fmax=" << t.forbidden().fmax() << " zbound=" << t.zbound()
              << "\n"
              << "pi(" << t.n() << ")=" << pi.pi << " pi1=" << pi.pi1
              << " pi2=" << pi.pi2 << " pi3=" << pi.pi3 << "\n";
    if (!solve_cache_out.empty()) {
      std::ofstream out = open_out(solve_cache_out);
      t.save(out);
      out.flush();
      if (!out) throw parse_error("short write to " + solve_cache_out);
      std::cout << "cache written: " << solve_cache_out << "\n";
    }
  });

  // ---- classify ------------------------------------------------------
  auto args_classify = std::make_shared<TableArgs>();
  auto heaps = std::make_shared<std::vector<uint32_t>>();
  CLI::App* cmd_classify =
      app.add_subcommand("classify", "print P, N, or Forbidden for a position");
  add_table_flags(cmd_classify, args_classify.get());
  cmd_classify
      ->add_option("heaps", *heaps, "the three heap sizes")
      ->expected(3)
      ->required();
  cmd_classify->callback([args_classify, heaps] {
    PairTable t = table_from(*args_classify);
    Position p = canonicalize((*heaps)[0], (*heaps)[1], (*heaps)[2]);
    switch (t.classify(p)) {
      case Status::P: std::cout << "P\n"; break;
      case Status::N: std::cout << "N\n"; break;
      case Status::Forbidden: std::cout << "Forbidden\n"; break;
    }
  });

  // ---- figure --------------------------------------------------------
  auto args_figure = std::make_shared<TableArgs>();
  std::string figure_out;
  std::string figure_format = "pgm";
  CLI::App* cmd_figure = app.add_subcommand(
      "figure", "render the grid of completing third heaps as PGM or CSV");
  add_table_flags(cmd_figure, args_figure.get());
  // Unlike the other subcommands, figure accepts --cache together with --n:
  // the cache supplies the table and --n picks the rendered side.
  args_figure->cache_opt->remove_excludes(args_figure->n_opt);
  args_figure->n_opt->remove_excludes(args_figure->cache_opt);
  args_figure->n_opt->description(
      "grid side: fresh-solve bound, or the rendered side when --cache "
      "supplies the table (default: the full table)");
  cmd_figure->add_option("--out", figure_out, "output file")->required();
  cmd_figure
      ->add_option("--format", figure_format, "pgm (binary) or csv")
      ->check(CLI::IsMember({"pgm", "csv"}));
  cmd_figure->callback([args_figure, &figure_out, &figure_format] {
    PairTable t = table_from(*args_figure);
    // With a cache, --n selects the rendered side (default: full table).
    uint32_t side = args_figure->cache_path.empty()
                        ? args_figure->n
                        : (args_figure->n_opt->count() > 0 ? args_figure->n
                                                           : t.n());
    std::ofstream out = open_out(figure_out);
    emit_figure(t, side,
                figure_format == "csv" ? FigureFormat::Csv : FigureFormat::Pgm,
                out);
    out.flush();
    if (!out) throw parse_error("short write to " + figure_out);
  });

  // ---- pi-series -----------------------------------------------------
  auto args_series = std::make_shared<TableArgs>();
  uint32_t series_base = 1;
  uint32_t series_kmax = 8;
  std::string series_out;
  CLI::App* cmd_series = app.add_subcommand(
      "pi-series",
      "exact P-count ratios pi(base*2^k)/(base*2^k)^2 for k = 0..kmax");
  add_forbidden_flags(cmd_series, args_series.get());
  cmd_series->add_option("--base", series_base, "series base (default 1)")
      ->check(CLI::PositiveNumber);
  cmd_series->add_option("--kmax", series_kmax, "largest doubling exponent");
  cmd_series->add_option("--out", series_out, "output CSV (default stdout)");
  auto series_rc = std::make_shared<int>(0);
  cmd_series->callback([args_series, &series_base, &series_kmax, &series_out,
                        series_rc] {
    ScaleReport report =
        zeta_series(forbidden_from(*args_series), series_base, series_kmax);
    if (series_out.empty()) {
      emit_series(report, std::cout);
    } else {
      std::ofstream out = open_out(series_out);
      emit_series(report, out);
    }
    if (!report.bounds_ok || !report.lower_bound_ok) *series_rc = 1;
  });

  // ---- pi-curve ------------------------------------------------------
  auto args_curve = std::make_shared<TableArgs>();
  uint32_t curve_max = 0;
  std::string curve_out;
  CLI::App* cmd_curve = app.add_subcommand(
      "pi-curve", "CSV of pi(x) and pi(x)/x^2 for 1 <= x <= max");
  add_forbidden_flags(cmd_curve, args_curve.get());
  cmd_curve->add_option("--max", curve_max, "largest x")->required();
  cmd_curve->add_option("--out", curve_out, "output CSV (default stdout)");
  cmd_curve->callback([args_curve, &curve_max, &curve_out] {
    ForbiddenSet f = forbidden_from(*args_curve);
    if (curve_out.empty()) {
      emit_pi_curve(f, curve_max, std::cout);
    } else {
      std::ofstream out = open_out(curve_out);
      emit_pi_curve(f, curve_max, out);
    }
  });

  // ---- verify --------------------------------------------------------
  auto args_verify = std::make_shared<TableArgs>();
  std::string verify_suite;
  uint32_t verify_max = 0;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "run a named check suite; exit 1 if any line fails");
  add_table_flags(cmd_verify, args_verify.get());
  cmd_verify
      ->add_option("--suite", verify_suite,
                   "oracle | third-bounds | count-structure | identity")
      ->required()
      ->check(CLI::IsMember({"oracle", "third-bounds", "count-structure", "identity"}));
  cmd_verify->add_option(
      "--max", verify_max,
      "oracle: exhaustive coordinate bound (default 24); identity: largest "
      "power-of-four size (default 256)");
  auto verify_rc = std::make_shared<int>(0);
  cmd_verify->callback([args_verify, &verify_suite, &verify_max, verify_rc] {
    if (verify_suite == "oracle") {
      uint32_t max_coord = verify_max == 0 ? 24 : verify_max;
      *verify_rc =
          emit_suite(run_oracle_suite(forbidden_from(*args_verify), max_coord));
      return;
    }
    PairTable t = table_from(*args_verify);
    if (verify_suite == "third-bounds") {
      *verify_rc = emit_suite(run_third_bounds_suite(t));
    } else if (verify_suite == "count-structure") {
      *verify_rc = emit_suite(run_count_structure_suite(t));
    } else {
      uint32_t cap = verify_max == 0 ? 256 : verify_max;
      std::vector<uint32_t> ms;
      for (uint64_t m = 16; m <= cap; m *= 4) {
        if (m > t.forbidden().structure_threshold() && m < t.n()) {
          ms.push_back(static_cast<uint32_t>(m));
        }
      }
      if (ms.empty()) {
        throw std::invalid_argument(
            "no identity size fits: need a power of four above the structure "
            "threshold and below the table bound");
      }
      *verify_rc = emit_suite(run_identity_suite(t, ms));
    }
  });

  // ---- analyze -------------------------------------------------------
  auto args_analyze = std::make_shared<TableArgs>();
  uint32_t analyze_max = 0;
  uint64_t analyze_truncate = 0;
  CLI::App* cmd_analyze = app.add_subcommand(
      "analyze", "thresholds, diagonal-saturation verdict, and count probes");
  add_table_flags(cmd_analyze, args_analyze.get());
  cmd_analyze->add_option("--max", analyze_max,
                          "scan bound (default: table bound)");
  cmd_analyze->add_option("--truncate", analyze_truncate,
                          "first-coordinate bound for the slice-count probe "
                          "(default 2(m-1) at the probe size)");
  cmd_analyze->callback([args_analyze, &analyze_max, &analyze_truncate] {
    PairTable t = table_from(*args_analyze);
    const ForbiddenSet& f = t.forbidden();
    uint32_t bound = analyze_max == 0 ? t.n() : std::min(analyze_max, t.n());
    std::cout << "n=" << t.n() << " forbidden=" << f.size()
              << " fmax=" << f.fmax() << "\n"
              << "pair-threshold=" << f.z_bound_threshold()
              << " structure-threshold=" << f.structure_threshold() << "\n";

    WellBehavedReport wb = well_behaved_scan(t, bound);
    std::cout << "diagonal-saturation scan to " << wb.scanned_bound
              << ": verdict=" << verdict_name(wb.verdict)
              << " saturated-rows=" << wb.violations.size();
    if (wb.dyadic_base) {
      std::cout << " dyadic-base=" << *wb.dyadic_base;
    } else {
      std::cout << " c1-candidate=" << wb.c1_candidate;
    }
    std::cout << "\n";

    // Largest power of two that the slice/identity probes can handle.
    uint32_t m = 0;
    for (uint64_t cand = 2; cand < t.n() && 2 * (cand - 1) < t.n(); cand *= 2) {
      if (cand > f.structure_threshold()) m = static_cast<uint32_t>(cand);
    }
    if (m != 0) {
      uint64_t xmax = analyze_truncate == 0 ? 2ull * (m - 1) : analyze_truncate;
      uint64_t h = h_value(t, m, m, xmax);
      IdentityReport id = identity_check(t, m, xmax);
      std::cout << "slice-count m=" << m << ": h=" << h
                << " direct=" << h_direct(t, m) << "\n"
                << "sixfold-count-identity m=" << m
                << ": lhs=" << id.lhs.get_str() << " rhs=" << id.rhs.get_str()
                << " diff=" << id.diff.get_str() << "\n";
    } else {
      std::cout << "slice-count probe skipped: table bound too small\n";
    }
  });

  // ---- periodicity ---------------------------------------------------
  auto args_period = std::make_shared<TableArgs>();
  uint32_t period_row = 0;
  uint32_t period_max = 0;
  CLI::App* cmd_period = app.add_subcommand(
      "periodicity",
      "search one row for eventual arithmetic periodicity of third values");
  add_table_flags(cmd_period, args_period.get());
  cmd_period->add_option("row", period_row, "row (smaller heap) to probe")
      ->required();
  cmd_period->add_option("--max", period_max,
                         "window bound (default: table bound - 1)");
  cmd_period->callback([args_period, &period_row, &period_max] {
    PairTable t = table_from(*args_period);
    uint32_t ymax = period_max == 0 ? t.n() - 1 : period_max;
    std::optional<RowPeriod> rp = row_periodicity_probe(t, period_row, ymax);
    if (rp) {
      std::cout << "row " << period_row << ": q=" << rp->q << " p=" << rp->p
                << " (third(x, y+p) = third(x, y) + p for y > q, window "
                << ymax << ")\n";
    } else {
      std::cout << "row " << period_row << ": none within window " << ymax
                << " (inconclusive)\n";
    }
  });

  // ---- region-count --------------------------------------------------
  auto args_region = std::make_shared<TableArgs>();
  std::string region_box;
  uint32_t region_kmax = 0;
  CLI::App* cmd_region = app.add_subcommand(
      "region-count",
      "count P-multisets whose 2^-k-scaled sorted triple lands in a box");
  add_table_flags(cmd_region, args_region.get());
  cmd_region
      ->add_option("--box", region_box,
                   "x0,x1,y0,y1,z0,z1 as exact rationals a/b "
                   "(largest,middle,smallest coordinate; half-open)")
      ->required();
  cmd_region->add_option("--kmax", region_kmax,
                         "report scales k = 0..kmax (default 0)");
  cmd_region->callback([args_region, &region_box, &region_kmax] {
    std::vector<std::string> parts;
    std::stringstream ss(region_box);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 6) {
      throw parse_error("--box wants six comma-separated rationals, got " +
                        std::to_string(parts.size()));
    }
    RationalBox box{parse_rational(parts[0]), parse_rational(parts[1]),
                    parse_rational(parts[2]), parse_rational(parts[3]),
                    parse_rational(parts[4]), parse_rational(parts[5])};
    PairTable t = table_from(*args_region);
    std::cout << "k,count,count_over_4k\n";
    for (uint32_t k = 0; k <= region_kmax; ++k) {
      uint64_t c = region_count(t, box, k);
      mpq_class scaled(c);
      mpz_class four_k = 1;
      mpz_mul_2exp(four_k.get_mpz_t(), four_k.get_mpz_t(), 2 * k);
      scaled /= mpq_class(four_k);
      std::cout << k << "," << c << "," << decimal_string(scaled) << "\n";
    }
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    // Prints help text for --help, the error message otherwise.
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*series_rc != 0) return *series_rc;
  if (*verify_rc != 0) return *verify_rc;
  return 0;
}

}  // namespace

int run(std::vector<std::string> args) {
  try {
    return dispatch(std::move(args));
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: allocation failed\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cisnim
