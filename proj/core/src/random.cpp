#include "hyperlace/common/random.hpp"

#include <cmath>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

long Rng::uniform_int(long lo, long hi) {
  require(lo <= hi, ErrorCode::InvalidArgument, "uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(next());
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

Rational Rng::lattice_rational(long lo, long hi, long den) {
  require(den > 0, ErrorCode::InvalidArgument, "lattice_rational: den must be positive");
  long k = uniform_int(lo * den, hi * den);
  Rational q(k, den);
  q.canonicalize();
  return q;
}

}  // namespace hyperlace
