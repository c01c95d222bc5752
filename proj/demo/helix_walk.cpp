// Walks the simples helix for one length and prints each member with its
// K-class and the Euler sequence through it.

#include <cstdlib>
#include <iostream>

#include <fmt/format.h>

#include "flopkit/helix.hpp"

int main(int argc, char** argv) {
  using namespace flopkit;
  const int ell = argc > 1 ? std::atoi(argv[1]) : 4;
  try {
    const auto n = numerics::for_length(ell).period();
    for (numerics::Index i = -n; i <= n; ++i) {
      const auto s = helix::simple_at(i, ell);
      const auto e = numerics::euler_sequence(i, ell);
      fmt::print("S_{:<3} {:<16} {:<8} {} + {} = {} x {}\n", i, s.render(), helix::kclass(s).render(),
                 e.left, e.right, e.multiplicity, e.middle);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
