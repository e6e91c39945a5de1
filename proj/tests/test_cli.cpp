#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cisnim/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int rc = cisnim::run(std::move(args));
  std::cout.rdbuf(old);
  if (out) *out = captured.str();
  return rc;
}

const fs::path& tmpdir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cisnim_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  fs::path p = tmpdir() / name;
  std::ofstream os(p, std::ios::binary);
  os << content;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string f110_file() {
  static std::string path = write_file("f110.txt", "1 1 0\n");
  return path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  std::string out;
  CHECK(run_cli({"--help"}, &out) == 0);
  CHECK(contains(out, "solve"));
  CHECK(contains(out, "classify"));

  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"bogus"}) == 2);
  CHECK(run_cli({"solve"}) == 2);             // --n is required
  CHECK(run_cli({"solve", "--n", "0"}) == 2); // must be positive
  CHECK(run_cli({"solve", "--n", "8", "--unknown-flag"}) == 2);
}

TEST_CASE("cli: solve reports counts and writes a loadable cache") {
  std::string cache = (tmpdir() / "f110_40.tbl").string();
  std::string out;
  int rc = run_cli({"solve", "--n", "40", "--forbidden", f110_file(),
                    "--cache", cache},
                   &out);
  CHECK(rc == 0);
  CHECK(contains(out, "solved n=40 forbidden=1 fmax=1 zbound=79"));
  CHECK(contains(out, "pi(40)="));
  CHECK(contains(out, "cache written: " + cache));

  std::string verdict;
  CHECK(run_cli({"classify", "--cache", cache, "2", "1", "0"}, &verdict) == 0);
  CHECK(verdict == "P\n");
}

TEST_CASE("cli: classify on a freshly solved table") {
  std::string out;
  CHECK(run_cli({"classify", "--n", "8", "3", "2", "1"}, &out) == 0);
  CHECK(out == "P\n");
  CHECK(run_cli({"classify", "--n", "8", "2", "2", "1"}, &out) == 0);
  CHECK(out == "N\n");
  CHECK(run_cli({"classify", "--n", "8", "--forbidden", f110_file(), "1", "1",
                 "0"},
                &out) == 0);
  CHECK(out == "Forbidden\n");
  // a large max coordinate is still decidable from the stored pair
  CHECK(run_cli({"classify", "--n", "8", "9", "1", "0"}, &out) == 0);
  CHECK(out == "N\n");
  CHECK(run_cli({"classify", "--n", "8", "9", "8", "0"}) == 2);  // off table
  CHECK(run_cli({"classify", "3", "2", "1"}) == 2);  // no table source
}

TEST_CASE("cli: verify suites pass on solved tables") {
  std::string out;
  CHECK(run_cli({"verify", "--suite", "oracle", "--forbidden", f110_file(),
                 "--max", "12"},
                &out) == 0);
  CHECK(contains(out, ": PASS"));
  CHECK(!contains(out, "FAIL:"));

  CHECK(run_cli({"verify", "--suite", "third-bounds", "--n", "64", "--forbidden",
                 f110_file()},
                &out) == 0);
  CHECK(contains(out, ": PASS"));

  CHECK(run_cli({"verify", "--suite", "count-structure", "--n", "64", "--forbidden",
                 f110_file()},
                &out) == 0);
  CHECK(contains(out, ": PASS"));

  CHECK(run_cli({"verify", "--suite", "identity", "--n", "100"}, &out) == 0);
  CHECK(contains(out, ": PASS"));

  // no admissible probe point fits under the table bound
  CHECK(run_cli({"verify", "--suite", "identity", "--n", "10"}) == 2);
  CHECK(run_cli({"verify", "--suite", "nonsense", "--n", "10"}) == 2);
}

TEST_CASE("cli: figure files are well-formed and deterministic") {
  std::string pgm1 = (tmpdir() / "fig1.pgm").string();
  std::string pgm2 = (tmpdir() / "fig2.pgm").string();
  CHECK(run_cli({"figure", "--n", "8", "--forbidden", f110_file(), "--format",
                 "pgm", "--out", pgm1}) == 0);
  CHECK(run_cli({"figure", "--n", "8", "--forbidden", f110_file(), "--format",
                 "pgm", "--out", pgm2}) == 0);
  std::string bytes = read_file(pgm1);
  CHECK(bytes.size() == 11 + 64);
  CHECK(bytes.substr(0, 11) == "P5\n8 8\n255\n");
  CHECK(bytes == read_file(pgm2));

  std::string csv = (tmpdir() / "fig.csv").string();
  CHECK(run_cli({"figure", "--n", "4", "--format", "csv", "--out", csv}) == 0);
  std::string text = read_file(csv);
  CHECK(text.substr(0, 6) == "x,y,z\n");
  CHECK(contains(text, "\n3,2,1\n"));

  CHECK(run_cli({"figure", "--n", "4", "--format", "bmp", "--out", csv}) == 2);
}

TEST_CASE("cli: figure from a cache can pick a smaller side") {
  std::string cache = (tmpdir() / "fig_cache.tbl").string();
  CHECK(run_cli({"solve", "--n", "16", "--forbidden", f110_file(), "--cache",
                 cache}) == 0);

  std::string full = (tmpdir() / "fig_full.pgm").string();
  CHECK(run_cli({"figure", "--cache", cache, "--format", "pgm", "--out",
                 full}) == 0);
  CHECK(read_file(full).substr(0, 13) == "P5\n16 16\n255\n");

  std::string side = (tmpdir() / "fig_side.pgm").string();
  CHECK(run_cli({"figure", "--cache", cache, "--n", "4", "--format", "pgm",
                 "--out", side}) == 0);
  std::string bytes = read_file(side);
  CHECK(bytes.size() == 11 + 16);
  CHECK(bytes.substr(0, 11) == "P5\n4 4\n255\n");

  // other table-consuming subcommands still reject the combination
  CHECK(run_cli({"classify", "--cache", cache, "--n", "8", "1", "1", "0"}) ==
        2);
}

TEST_CASE("cli: series and curve output") {
  std::string out;
  CHECK(run_cli({"pi-series", "--base", "1", "--kmax", "2"}, &out) == 0);
  CHECK(out ==
        "k,zeta_num,zeta_den,zeta_decimal,delta\n"
        "0,1,1,1.0,\n"
        "1,1,2,0.5,0.5\n"
        "2,5,16,0.3125,0.1875\n");

  CHECK(run_cli({"pi-curve", "--max", "4"}, &out) == 0);
  CHECK(out ==
        "x,pi,ratio\n"
        "1,1,1.0\n"
        "2,2,0.5\n"
        "3,3,0.33333333333333333333\n"
        "4,5,0.3125\n");
}

TEST_CASE("cli: periodicity probe output") {
  std::string out;
  CHECK(run_cli({"periodicity", "--n", "64", "--forbidden", f110_file(), "0"},
                &out) == 0);
  CHECK(out ==
        "row 0: q=2 p=1 (third(x, y+p) = third(x, y) + p for y > q, "
        "window 63)\n");

  CHECK(run_cli({"periodicity", "--n", "64", "0"}, &out) == 0);
  CHECK(out ==
        "row 0: q=0 p=1 (third(x, y+p) = third(x, y) + p for y > q, "
        "window 63)\n");

  CHECK(run_cli({"periodicity", "--n", "64", "--forbidden", f110_file(), "2",
                 "--max", "8"},
                &out) == 0);
  CHECK(out == "row 2: none within window 8 (inconclusive)\n");
}

TEST_CASE("cli: scaled box counts") {
  std::string out;
  CHECK(run_cli({"region-count", "--n", "80", "--forbidden", f110_file(),
                 "--box", "0,4,0,4,0,4", "--kmax", "2"},
                &out) == 0);
  CHECK(out.substr(0, 22) == "k,count,count_over_4k\n");
  CHECK(contains(out, "\n2,48,3.0\n"));

  CHECK(run_cli({"region-count", "--n", "80", "--box", "1,2", "--kmax", "1"}) ==
        2);
  CHECK(run_cli({"region-count", "--n", "80", "--box", "0,x,0,4,0,4",
                 "--kmax", "1"}) == 2);
}

TEST_CASE("cli: error exit codes") {
  CHECK(run_cli({"classify", "--cache", (tmpdir() / "missing.tbl").string(),
                 "1", "1", "0"}) == 2);

  std::string corrupt = write_file("corrupt.tbl", "not a cache file\n");
  CHECK(run_cli({"classify", "--cache", corrupt, "1", "1", "0"}) == 2);

  std::string bad_forbidden = write_file("bad_forbidden.txt", "1 2\n");
  CHECK(run_cli({"solve", "--n", "8", "--forbidden", bad_forbidden}) == 2);

  CHECK(run_cli({"solve", "--n", "2000000000"}) == 3);

  // --cache and --n on the same invocation contradict each other
  CHECK(run_cli({"classify", "--cache", corrupt, "--n", "8", "1", "1", "0"}) ==
        2);
}
