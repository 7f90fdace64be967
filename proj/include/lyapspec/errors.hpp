#pragma once

#include <stdexcept>
#include <string>

namespace lyapspec {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(double x)
      : Error("point " + std::to_string(x) + " is outside the map domain"), x(x) {}
  double x;
};

// f^k(x) left the domain; signals x is not in the invariant set.
struct OrbitEscaped : Error {
  OrbitEscaped(int k, double x)
      : Error("orbit escaped the domain at step " + std::to_string(k)), step(k), point(x) {}
  int step;
  double point;
};

// f^k(x) hit a critical point exactly; log|f'| would be -inf there.
struct CriticalOrbit : Error {
  explicit CriticalOrbit(int k)
      : Error("orbit hits a critical point at step " + std::to_string(k)), step(k) {}
  int step;
};

struct InvalidSigma : Error {
  explicit InvalidSigma(const std::string& msg) : Error(msg) {}
};

struct InvalidBand : Error {
  explicit InvalidBand(const std::string& msg) : Error(msg) {}
};

struct InvalidArgs : Error {
  explicit InvalidArgs(const std::string& msg) : Error(msg) {}
};

struct HorizonTooShort : Error {
  explicit HorizonTooShort(const std::string& msg) : Error(msg) {}
};

struct TooSparse : Error {
  explicit TooSparse(const std::string& msg) : Error(msg) {}
};

struct NotMarkov : Error {
  explicit NotMarkov(const std::string& name)
      : Error("map '" + name + "' is not Markov") {}
};

struct NotExpanding : Error {
  explicit NotExpanding(const std::string& name)
      : Error("map '" + name + "' is not uniformly expanding") {}
};

struct NotPlissTime : Error {
  explicit NotPlissTime(int n)
      : Error(std::to_string(n) + " is not a Pliss hyperbolic time"), n(n) {}
  int n;
};

struct TreeExplosion : Error {
  explicit TreeExplosion(std::size_t cap)
      : Error("pull-back tree exceeded node cap " + std::to_string(cap)) {}
};

struct BranchNotDiffeomorphic : Error {
  explicit BranchNotDiffeomorphic(const std::string& msg) : Error(msg) {}
};

struct GridTooCoarse : Error {
  explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

struct DepthTooLarge : Error {
  explicit DepthTooLarge(int n)
      : Error("cylinder depth " + std::to_string(n) + " exceeds the supported maximum") {}
};

struct NoOverlap : Error {
  explicit NoOverlap(const std::string& msg) : Error(msg) {}
};

struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

}  // namespace lyapspec
