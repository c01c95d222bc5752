// One line per acceptance criterion; exit status 1 if any fails. Expected
// values are literals here, not taken from the library's verify module.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "acceptance_criteria.hpp"
#include "flopkit/defalg.hpp"
#include "flopkit/dynkin.hpp"
#include "flopkit/helix.hpp"
#include "flopkit/knitting.hpp"
#include "flopkit/monodromy.hpp"
#include "flopkit/numerics.hpp"

namespace {

using namespace flopkit;
using Vec = std::vector<int>;
using Index = numerics::Index;

const std::vector<Vec> kRanks = {{1},
                                 {1, 2},
                                 {1, 3, 2, 3},
                                 {1, 4, 3, 2, 3, 4},
                                 {1, 5, 4, 3, 5, 2, 5, 3, 4, 5},
                                 {1, 6, 5, 4, 3, 5, 2, 5, 3, 4, 5, 6}};
const std::vector<Vec> kNs = {{2},
                              {4, 1},
                              {6, 1, 3, 1},
                              {8, 1, 2, 3, 2, 1},
                              {10, 1, 2, 3, 1, 5, 1, 3, 2, 1},
                              {12, 1, 2, 2, 3, 1, 5, 1, 3, 2, 2, 1}};
const std::vector<std::vector<std::int64_t>> kDims = {
    {1}, {4, 1}, {12, 1, 3}, {24, 1, 2, 6}, {40, 1, 2, 4, 1, 10}, {60, 1, 2, 3, 6, 2, 15}};
const std::vector<Vec> kGv = {{1}, {4, 1}, {5, 3, 1}, {6, 4, 2, 1}, {7, 6, 4, 2, 1}, {6, 6, 4, 3, 2, 1}};
const Vec kAcon = {1, 8, 26, 56, 124, 200};
const std::vector<std::set<Index>> kSpherical = {{0}, {1}, {1, 3}, {1, 5}, {1, 4, 6, 9}, {1, 11}};
// columns 0..N/2 with at least two loops
const std::vector<std::set<Index>> kNoncommColumns = {{}, {0}, {0}, {0, 3}, {0, 5}, {0, 4, 6}};
const Vec kPunctures = {3, 4, 6, 8, 12, 14};

std::size_t at(int ell) { return static_cast<std::size_t>(ell - 1); }

// Collects failure messages; a criterion passes when none were recorded.
struct Failures {
  std::vector<std::string> items;
  void require(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
};

Failures numerics_table() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto h = numerics::for_length(ell);
    f.require(h.ranks() == kRanks[at(ell)], fmt::format("l={} ranks {}", ell, h.ranks()));
    f.require(h.ns() == kNs[at(ell)], fmt::format("l={} n {}", ell, h.ns()));
    const auto& r = kRanks[at(ell)];
    const auto& n = kNs[at(ell)];
    const auto sz = r.size();
    for (std::size_t i = 0; i < sz; ++i)
      f.require(r[(i + 1) % sz] + r[(i + sz - 1) % sz] == n[i] * r[i],
                fmt::format("l={} recurrence at {}", ell, i));
  }
  return f;
}

Failures knitting_oracle() {
  Failures f;
  const auto g = dynkin::build_diagram(dynkin::DynkinType::E6(), true);
  const auto b = g.resolve("branch");
  const auto t = knitting::knit({g, b, b, {0}, knitting::kDefaultMaxLayers});
  f.require(t.read_values == std::vector<std::int64_t>{1, 2, 3, 3, 2, 1},
            fmt::format("E6 trace {}", t.read_values));
  f.require(t.total == 12, fmt::format("E6 total {}", t.total));
  for (int ell = 1; ell <= 6; ++ell)
    for (std::size_t i = 0; i < kDims[at(ell)].size(); ++i) {
      const auto d = knitting::sliced_def_dim(ell, i, knitting::canonical_placement(ell));
      f.require(d == kDims[at(ell)][i], fmt::format("l={} i={} knits {}", ell, i, d));
    }
  return f;
}

Failures placement_invariance() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    auto placements = dynkin::vertices_with_label(ell, dynkin::standard_types());
    if (ell == 1) placements = {{dynkin::DynkinType::A(1), "a1"}};
    for (const auto& p : placements) {
      const auto r = knitting::evaluate_placement(p, ell);
      if (r.walk_found)
        f.require(r.dims == kDims[at(ell)], fmt::format("{} knits {}", p.name(), r.dims));
      else
        f.require(false, fmt::format("{} knits {} at i=0, no chamber walk", p.name(), r.dim0));
    }
  }
  return f;
}

Failures gv_assembly() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto g = defalg::gv_bounds(ell);
    f.require(g.bounds == kGv[at(ell)], fmt::format("l={} bounds {}", ell, g.bounds));
    int sum = 0;
    for (std::size_t k = 0; k < kGv[at(ell)].size(); ++k)
      sum += static_cast<int>((k + 1) * (k + 1)) * kGv[at(ell)][k];
    f.require(sum == kAcon[at(ell)], fmt::format("l={} sum k^2 n_k = {}", ell, sum));
    f.require(g.acon_bound == kAcon[at(ell)], fmt::format("l={} acon {}", ell, g.acon_bound));
  }
  return f;
}

Failures helix_consistency() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto n = static_cast<Index>(kRanks[at(ell)].size());
    for (Index i = -2 * n; i <= 2 * n; ++i) {
      const auto s = helix::simple_at(i, ell);
      f.require(helix::simple_at(i + n, ell) == s.twisted(1),
                fmt::format("l={} S_{}+N != S_{}(1)", ell, i, i));
      f.require(helix::simple_at(-i, ell) == helix::dualize(s).shifted(-1),
                fmt::format("l={} S_-{} != dual S_{}[-1]", ell, i, i));
    }
    const auto c = helix::consistency_check(ell);
    f.require(c.ok, fmt::format("l={}: {}", ell, c.diagnostic));
  }
  f.require(helix::SheafExpr::dual_thick(2).render() == "O_{2C}(-1)", "w_2C");
  return f;
}

Failures kclass_mutation() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto& r = kRanks[at(ell)];
    const auto& n = kNs[at(ell)];
    const auto sz = static_cast<Index>(r.size());
    for (Index i = -sz; i < 2 * sz; ++i) {
      const auto k = static_cast<std::size_t>(numerics::floor_mod(i, sz));
      const auto ki = helix::kclass(helix::simple_at(i, ell));
      f.require(std::llabs(ki.c) == r[k], fmt::format("l={} |c(S_{})|", ell, i));
      f.require(helix::kclass(helix::simple_at(i + 1, ell)) + helix::kclass(helix::simple_at(i - 1, ell)) ==
                    n[k] * ki,
                fmt::format("l={} mutation at {}", ell, i));
      const auto m = helix::mutation_class_check(i, ell);
      f.require(m.ok, fmt::format("l={} i={}: {}", ell, i, m.diagnostic));
    }
  }
  return f;
}

Failures monodromy_words() {
  using namespace monodromy;
  Failures f;
  const auto rel = reduce(parse_word("inv(q0).qplus.qminus", 1));
  f.require(rel.render() == "identity", "l=1 relation: " + rel.render());
  const auto two = reduce(parse_word("inv(q0).qplus.qminus", 2));
  f.require(two.render() == "inv(phi_fwd(0)).phi_bwd(1).phi_fwd(1).phi_fwd(0)", "l=2: " + two.render());
  f.require(k_matrix(Letter::fwd(0), 2) == Mat2::of(1, 0, 4, -1), "K(phi_fwd(0)) at l=2");
  for (int ell = 1; ell <= 6; ++ell) {
    const std::int64_t l = ell;
    const auto km = k_matrix(loop_q_minus(ell), ell);
    f.require(km == Mat2::of(l + 1, -1, l * l, 1 - l), fmt::format("l={} K(q-) {}", ell, km.render()));
    f.require(km * k_matrix(loop_q_plus(ell), ell) == Mat2::identity(), fmt::format("l={} K(q-)K(q+)", ell));
    for (Index i = 0; i < period_of(ell); ++i)
      f.require(k_matrix(loop_q(ell, i), ell) == Mat2::identity(), fmt::format("l={} K(q_{})", ell, i));
    for (const auto& c : two_basepoint_checks(ell))
      f.require(c.ok, fmt::format("l={} {}: {}", ell, c.name, c.detail));
  }
  return f;
}

Failures classification() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell) {
    const auto region = helix::base_region(ell);
    const auto n = static_cast<Index>(region.size());
    std::set<Index> spherical;
    for (Index i = 0; i < n; ++i) {
      const auto& s = region[static_cast<std::size_t>(i)];
      if (defalg::possibly_spherical(s, ell)) spherical.insert(i);
      const Index col = 2 * i <= n ? i : n - i;
      f.require(defalg::strictly_noncommutative(s, ell) == kNoncommColumns[at(ell)].contains(col),
                fmt::format("l={} {} noncommutativity", ell, s.render()));
    }
    f.require(spherical == kSpherical[at(ell)], fmt::format("l={} spherical {}", ell, spherical));
  }
  return f;
}

Failures puncture_count() {
  Failures f;
  for (int ell = 1; ell <= 6; ++ell)
    f.require(numerics::puncture_count(ell) == kPunctures[at(ell)],
              fmt::format("l={} punctures {}", ell, numerics::puncture_count(ell)));
  return f;
}

}  // namespace

int main() {
  const std::vector<std::function<Failures()>> runs = {
      numerics_table, knitting_oracle, placement_invariance, gv_assembly, helix_consistency,
      kclass_mutation, monodromy_words, classification, puncture_count};
  int failed = 0;
  for (std::size_t k = 0; k < acceptance::kCriteria.size(); ++k) {
    const auto& c = acceptance::kCriteria[k];
    Failures f;
    try {
      f = runs[k]();
    } catch (const std::exception& e) {
      f.items.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = f.items.empty();
    failed += ok ? 0 : 1;
    std::cout << fmt::format("{} {} {}", ok ? "PASS" : "FAIL", c.id, c.key);
    if (!ok) std::cout << fmt::format(": {}", fmt::join(f.items, "; "));
    std::cout << "\n";
  }
  std::cout << fmt::format("{}/{} criteria passed\n", acceptance::kCriteria.size() - static_cast<std::size_t>(failed),
                           acceptance::kCriteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
