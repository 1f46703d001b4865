#include "hyperlace/common/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hyperlace {

std::size_t worker_count() {
  if (const char* env = std::getenv("HYPERLACE_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace hyperlace
