#pragma once

#include <cstdint>
#include <string>

namespace lyapspec {

struct VerifyResult {
  std::string report;  // deterministic text, one line per check
  int checks = 0;
  int failures = 0;
};

// Runs the named invariant suite ("map", "cocycle", "pressure", "pullback",
// "spectrum", or "all"). The report is byte-identical for a fixed seed
// regardless of the thread count.
VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed,
                              int threads);

}  // namespace lyapspec
