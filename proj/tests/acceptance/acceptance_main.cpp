#include <iostream>

#include "acceptance.hpp"

int main() {
  bool ok = true;
  for (const auto& r : hyperlace::acceptance::run()) {
    std::cout << hyperlace::acceptance::format_line(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
