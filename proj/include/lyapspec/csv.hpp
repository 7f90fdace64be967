#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "lyapspec/errors.hpp"

namespace lyapspec {

// Formats a double with 17 significant digits, '.' decimal separator,
// so values round-trip exactly.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw InvalidArgs("cannot open output file '" + path + "'");
  }

  template <typename... Args>
  void row(const Args&... args) {
    bool first = true;
    ((write_cell(args, first), first = false), ...);
    out_ << '\n';
  }

 private:
  void write_cell(double v, bool first) {
    if (!first) out_ << ',';
    out_ << format_number(v);
  }
  void write_cell(int v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(long v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(std::size_t v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(const char* v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(const std::string& v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  std::ofstream out_;
};

// 64-bit FNV-1a; used to derive per-suite sub-seeds deterministically.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, const std::string& suite,
                                 std::uint64_t index) {
  std::uint64_t h = fnv1a(suite);
  h ^= master + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace lyapspec
