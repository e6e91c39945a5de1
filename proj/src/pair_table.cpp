#include "cisnim/pair_table.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "cisnim/errors.hpp"
#include "cisnim/table_scan.hpp"

namespace cisnim {

namespace {

constexpr char kMagic[8] = {'C', 'I', 'S', 'N', 'I', 'M', '1', '\n'};
constexpr uint32_t kVersion = 1;

uint64_t pack_pair(uint32_t x, uint32_t y) {  // wants x >= y
  return (uint64_t(x) << 32) | y;
}

// Checksummed little-endian writer.
struct ByteSink {
  explicit ByteSink(std::ostream& out) : out(out) {}
  void bytes(const char* p, std::size_t len) {
    out.write(p, static_cast<std::streamsize>(len));
    for (std::size_t i = 0; i < len; ++i)
      sum += static_cast<unsigned char>(p[i]);
  }
  void u32(uint32_t v) {
    char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
    bytes(b, 4);
  }
  void u64_raw(uint64_t v) {  // not folded into the checksum
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char(v >> (8 * i));
    out.write(b, 8);
  }
  std::ostream& out;
  uint64_t sum = 0;
};

// Checksumming little-endian reader.
struct ByteSource {
  explicit ByteSource(std::istream& in) : in(in) {}
  void bytes(char* p, std::size_t len) {
    in.read(p, static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
      throw format_error("truncated table stream");
    for (std::size_t i = 0; i < len; ++i)
      sum += static_cast<unsigned char>(p[i]);
  }
  uint32_t u32() {
    char b[4];
    bytes(b, 4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= uint32_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  uint64_t u64_raw() {
    char b[8];
    in.read(b, 8);
    if (in.gcount() != 8) throw format_error("truncated table stream");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= uint64_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  std::istream& in;
  uint64_t sum = 0;
};

}  // namespace

PairTable::PairTable(uint32_t n, ForbiddenSet f, std::vector<uint32_t> thirds)
    : n_(n), f_(std::move(f)), thirds_(std::move(thirds)) {
  if (n_ == 0) throw format_error("table bound must be positive");
  if (thirds_.size() != std::size_t(n_) * (n_ + 1) / 2)
    throw format_error("third array size does not match bound");
  for (uint32_t z : thirds_)
    if (z > zbound()) throw format_error("stored third exceeds its bound");
}

uint32_t PairTable::third_of(uint32_t x, uint32_t y) const {
  if (x < y) std::swap(x, y);
  if (x >= n_)
    throw std::out_of_range(
        "pair (" + std::to_string(x) + "," + std::to_string(y) +
        ") outside table; re-solve with n > " + std::to_string(x));
  return thirds_[pair_index(x, y)];
}

Status PairTable::classify(const Position& p) const {
  if (f_.contains(p)) return Status::Forbidden;
  if (p.b >= n_)
    throw std::out_of_range(
        "second-largest heap " + std::to_string(p.b) +
        " outside table; re-solve with n > " + std::to_string(p.b));
  return third_of(p.b, p.c) == p.a ? Status::P : Status::N;
}

PiCounts PairTable::pi_counts(uint32_t m) const {
  return count_p_multisets(*this, m);
}

void PairTable::save(std::ostream& out) const {
  ByteSink sink(out);
  sink.bytes(kMagic, sizeof kMagic);
  sink.u32(kVersion);
  sink.u32(n_);
  sink.u32(static_cast<uint32_t>(f_.size()));
  for (const Position& p : f_.members()) {
    sink.u32(p.a);
    sink.u32(p.b);
    sink.u32(p.c);
  }
  for (uint32_t z : thirds_) sink.u32(z);
  sink.u64_raw(sink.sum);
  if (!out) throw format_error("write failure while saving table");
}

PairTable PairTable::load(std::istream& in, std::size_t ceiling_bytes) {
  ByteSource src(in);
  char magic[8];
  src.bytes(magic, 8);
  for (int i = 0; i < 8; ++i)
    if (magic[i] != kMagic[i]) throw format_error("bad magic");
  if (src.u32() != kVersion) throw format_error("unsupported version");
  uint32_t n = src.u32();
  if (n == 0) throw format_error("table bound must be positive");
  uint64_t table_bytes = uint64_t(n) * (n + 1) / 2 * 4;
  if (table_bytes > ceiling_bytes)
    throw resource_error("table of bound " + std::to_string(n) +
                         " exceeds memory ceiling");
  uint32_t fsize = src.u32();
  std::vector<Position> members;
  members.reserve(fsize);
  for (uint32_t i = 0; i < fsize; ++i) {
    uint32_t a = src.u32(), b = src.u32(), c = src.u32();
    if (a < b || b < c) throw format_error("forbidden member not descending");
    if (!members.empty() && !(members.back() < Position{a, b, c}))
      throw format_error("forbidden members not strictly ascending");
    members.push_back(Position{a, b, c});
  }
  std::vector<uint32_t> thirds(std::size_t(n) * (n + 1) / 2);
  for (uint32_t& z : thirds) z = src.u32();
  uint64_t sum = src.sum;
  if (src.u64_raw() != sum) throw format_error("checksum mismatch");
  return PairTable(n, ForbiddenSet(std::move(members)), std::move(thirds));
}

PairTable solve(uint32_t n, const ForbiddenSet& f,
                std::size_t ceiling_bytes) {
  if (n == 0) throw std::domain_error("solve: n must be positive");
  uint64_t zcap = 2ull * (n - 1) + f.size() + 1;  // thirds stay <= zcap - 1
  uint64_t words_per = (zcap + 63) / 64;
  uint64_t occ_bytes = words_per * 8 * n;
  uint64_t table_bytes = uint64_t(n) * (n + 1) / 2 * 4;
  if (occ_bytes + table_bytes > ceiling_bytes)
    throw resource_error("solve: n " + std::to_string(n) + " needs " +
                         std::to_string(occ_bytes + table_bytes) +
                         " bytes, ceiling is " + std::to_string(ceiling_bytes));

  // Forbidden completions per pair: {x,y,z} forbidden <=> z appears here
  // under key (x,y).  A candidate like that is skipped during the scan but
  // never recorded as excluded.
  std::unordered_map<uint64_t, std::vector<uint32_t>> forbidden_z;
  for (const Position& m : f.members()) {
    auto add = [&](uint32_t p, uint32_t q, uint32_t z) {
      auto& v = forbidden_z[pack_pair(p, q)];
      for (uint32_t have : v)
        if (have == z) return;
      v.push_back(z);
    };
    add(m.a, m.b, m.c);
    add(m.a, m.c, m.b);
    add(m.b, m.c, m.a);
  }

  std::vector<uint64_t> occ(words_per * n, 0);
  std::vector<uint32_t> thirds(std::size_t(n) * (n + 1) / 2);

  std::size_t idx = 0;
  for (uint32_t x = 0; x < n; ++x) {
    uint64_t* ox = occ.data() + std::size_t(x) * words_per;
    for (uint32_t y = 0; y <= x; ++y, ++idx) {
      uint64_t* oy = occ.data() + std::size_t(y) * words_per;
      const std::vector<uint32_t>* skip = nullptr;
      if (!forbidden_z.empty()) {
        auto it = forbidden_z.find(pack_pair(x, y));
        if (it != forbidden_z.end()) skip = &it->second;
      }
      uint32_t pick = UINT32_MAX;
      for (uint64_t w = 0; w < words_per && pick == UINT32_MAX; ++w) {
        uint64_t bits = ox[w] | oy[w];
        while (bits != ~0ull) {
          unsigned bit = static_cast<unsigned>(std::countr_one(bits));
          uint64_t z = w * 64 + bit;
          if (z >= zcap) break;
          bool forbidden = false;
          if (skip)
            for (uint32_t fz : *skip)
              if (fz == z) {
                forbidden = true;
                break;
              }
          if (forbidden) {
            bits |= uint64_t(1) << bit;
            continue;
          }
          pick = static_cast<uint32_t>(z);
          break;
        }
      }
      if (pick == UINT32_MAX)
        throw std::logic_error(
            "exclusion sieve overflowed its occupancy capacity");
      thirds[idx] = pick;
      ox[pick >> 6] |= uint64_t(1) << (pick & 63);
      oy[pick >> 6] |= uint64_t(1) << (pick & 63);
    }
  }
  return PairTable(n, f, std::move(thirds));
}

}  // namespace cisnim
