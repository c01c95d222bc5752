// Knits affine E6 from the branch vertex with the extending vertex killed,
// then prints the sliced dimensions for every length.

#include <iostream>

#include "flopkit/knitting.hpp"

int main() {
  using namespace flopkit;
  const auto g = dynkin::build_diagram(dynkin::DynkinType::E6(), true);
  const auto b = g.resolve("branch");
  const knitting::KnitProblem p{g, b, b, {g.resolve("extending")}, knitting::kDefaultMaxLayers};
  std::cout << knitting::render_grid(p, knitting::knit(p)) << "\n";

  for (int ell = 1; ell <= 6; ++ell) {
    const auto w = knitting::chamber_walk(knitting::canonical_placement(ell), numerics::for_length(ell));
    std::cout << knitting::canonical_placement(ell).name() << "  l=" << ell << ":";
    for (auto [start, kill] : w.pairs) std::cout << ' ' << knitting::knit_pair(w.graph, start, kill);
    std::cout << "\n";
  }
}
