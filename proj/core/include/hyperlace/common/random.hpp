#pragma once

#include <cstdint>
#include <random>

#include "hyperlace/polycore/scalar.hpp"

namespace hyperlace {

/// Seeded generator whose derived draws do not depend on the standard
/// library's distribution implementations, so reports reproduce across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  /// Uniform double in [0, 1).
  double uniform01();
  double normal();
  /// Uniform draw from the lattice {lo, lo + 1/den, ..., hi}.
  Rational lattice_rational(long lo, long hi, long den);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hyperlace
