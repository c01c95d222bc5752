// Builds the standard loops for each length and prints their reduced forms
// and K-matrices.

#include <iostream>

#include <fmt/format.h>

#include "flopkit/monodromy.hpp"

int main() {
  using namespace flopkit::monodromy;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto qm = loop_q_minus(ell);
    const auto qp = loop_q_plus(ell);
    fmt::print("l={}  K(q-) = {}  K(q+) = {}\n", ell, k_matrix(qm, ell).render(),
               k_matrix(qp, ell).render());
    const auto w = parse_word("inv(q0).qplus.qminus", ell);
    fmt::print("      inv(q0).qplus.qminus -> {}\n", reduce(w).render());
    for (const auto& c : two_basepoint_checks(ell))
      fmt::print("      {:<3} {}  {}\n", c.name, c.ok ? "ok  " : "FAIL", c.detail);
  }
}
