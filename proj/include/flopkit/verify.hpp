#pragma once
// The acceptance checks, run against the library and reported with expected
// and actual values.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "flopkit/defalg.hpp"
#include "flopkit/dynkin.hpp"
#include "flopkit/helix.hpp"
#include "flopkit/knitting.hpp"
#include "flopkit/monodromy.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::verify {

using nlohmann::json;

struct Criterion {
  int id = 0;
  std::string key;
  std::string title;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "numerics-table", "length table and derived multiplicities"},
      {2, "knitting-oracle", "knitted trace and sliced dimension column"},
      {3, "placement-invariance", "knitted dimensions agree across placements"},
      {4, "gv-assembly", "GV lower bounds and contraction algebra bound"},
      {5, "helix-consistency", "translation and duality laws of the simples helix"},
      {6, "kclass-mutation", "mutation coefficients in K-class arithmetic"},
      {7, "monodromy-words", "loop words, reduction and K-matrices"},
      {8, "classification", "noncommutativity and sphericality predicates"},
      {9, "puncture-count", "punctures of the moduli sphere"},
  };
  return list;
}

struct Check {
  std::string name;
  bool pass = false;
  json expected;
  json actual;
  std::string provenance;
};

struct CriterionResult {
  Criterion criterion;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

struct Report {
  std::vector<CriterionResult> results;
  bool pass() const {
    for (const auto& r : results)
      if (!r.pass()) return false;
    return true;
  }
};

/// Data the checks read; tests substitute corrupted copies.
struct Inputs {
  std::vector<numerics::TableRow> numerics_rows = numerics::canonical_rows();
};

namespace expected {

inline const std::vector<int> periods = {1, 2, 4, 6, 10, 12};
inline const std::vector<std::vector<int>> ranks = {
    {1}, {1, 2}, {1, 3, 2, 3}, {1, 4, 3, 2, 3, 4},
    {1, 5, 4, 3, 5, 2, 5, 3, 4, 5}, {1, 6, 5, 4, 3, 5, 2, 5, 3, 4, 5, 6}};
inline const std::vector<std::vector<int>> ns = {
    {2}, {4, 1}, {6, 1, 3, 1}, {8, 1, 2, 3, 2, 1},
    {10, 1, 2, 3, 1, 5, 1, 3, 2, 1}, {12, 1, 2, 2, 3, 1, 5, 1, 3, 2, 2, 1}};
inline const std::vector<std::vector<int>> dims = {
    {1}, {4, 1}, {12, 1, 3}, {24, 1, 2, 6}, {40, 1, 2, 4, 1, 10}, {60, 1, 2, 3, 6, 2, 15}};
inline const std::vector<std::vector<int>> gv = {
    {1}, {4, 1}, {5, 3, 1}, {6, 4, 2, 1}, {7, 6, 4, 2, 1}, {6, 6, 4, 3, 2, 1}};
inline const std::vector<int> acon = {1, 8, 26, 56, 124, 200};
/// Positions in S_0..S_{N-1} of the possibly spherical members.
inline const std::vector<std::set<int>> spherical = {{0}, {1}, {1, 3}, {1, 5}, {1, 4, 6, 9}, {1, 11}};
inline const std::vector<std::int64_t> e6_trace = {1, 2, 3, 3, 2, 1};

}  // namespace expected

namespace detail {

class Collector {
 public:
  explicit Collector(std::vector<Check>& out) : out_(out) {}

  void equal(const std::string& name, const json& want, const json& got, const std::string& prov) {
    out_.push_back({name, want == got, want, got, prov});
  }
  void truth(const std::string& name, bool ok, const json& got, const std::string& prov) {
    out_.push_back({name, ok, true, got, prov});
  }
  /// Runs body; an exception becomes a failed check.
  void guarded(const std::string& name, const std::string& prov, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out_.push_back({name, false, "no error", std::string("error: ") + e.what(), prov});
    }
  }

 private:
  std::vector<Check>& out_;
};

inline std::size_t at(int ell) { return static_cast<std::size_t>(ell - 1); }

}  // namespace detail

inline std::vector<Check> check_numerics(const Inputs& in) {
  std::vector<Check> out;
  detail::Collector c(out);
  c.equal("six rows", 6, in.numerics_rows.size(), "recorded table");
  for (const auto& row : in.numerics_rows) {
    const int ell = row.ell;
    if (ell < 1 || ell > 6) {
      c.truth(fmt::format("row length {}", ell), false, ell, "recorded table");
      continue;
    }
    const auto k = detail::at(ell);
    c.equal(fmt::format("l={} N", ell), expected::periods[k], row.ranks.size(), "recorded table");
    c.equal(fmt::format("l={} ranks", ell), expected::ranks[k], row.ranks, "recorded table");
    c.equal(fmt::format("l={} n_i", ell), expected::ns[k], row.ns, "recorded table");
    c.guarded(fmt::format("l={} derived n_i", ell), "derived", [&] {
      c.equal(fmt::format("l={} derived n_i", ell), row.ns, numerics::derive_ns(row.ranks), "derived");
    });
    c.guarded(fmt::format("l={} validation", ell), "derived", [&] {
      const auto h = numerics::HelixNumerics::from_row(row);
      c.equal(fmt::format("l={} validation", ell), expected::periods[k], h.period(), "derived");
    });
  }
  return out;
}

inline std::vector<Check> check_knitting(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  c.guarded("E6 trace", "recorded figure", [&] {
    const auto g = dynkin::build_diagram(dynkin::DynkinType::E6(), true);
    const auto b = g.resolve("branch");
    const auto t = knitting::knit({g, b, b, {g.resolve("extending")}});
    c.equal("E6 read values", expected::e6_trace, t.read_values, "recorded figure");
    c.equal("E6 total", 12, t.total, "recorded figure");
  });
  for (int ell = 1; ell <= 6; ++ell) {
    const auto& want = expected::dims[detail::at(ell)];
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto name = fmt::format("l={} i={} dim", ell, i);
      c.guarded(name, "recorded table", [&] {
        c.equal(name, want[i],
                knitting::sliced_def_dim(ell, i, knitting::canonical_placement(ell)),
                "recorded table");
      });
    }
  }
  return out;
}

inline std::vector<Check> check_placements(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  const auto types = dynkin::standard_types();
  c.equal("l=3 placement count", 5, dynkin::vertices_with_label(3, types).size(), "recorded text");
  for (int ell = 2; ell <= 6; ++ell) {
    const auto& want = expected::dims[detail::at(ell)];
    for (const auto& p : dynkin::vertices_with_label(ell, types)) {
      const auto name = fmt::format("l={} {}", ell, p.name());
      c.guarded(name, "recorded table", [&] {
        const auto r = knitting::evaluate_placement(p, ell);
        json got;
        if (r.walk_found) {
          got = r.dims;
        } else {
          got = {{"dim0", r.dim0}, {"walk", r.diagnostic}};
        }
        c.equal(name, want, got, "recorded table");
      });
    }
  }
  return out;
}

inline std::vector<Check> check_gv(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  for (int ell = 1; ell <= 6; ++ell) {
    c.guarded(fmt::format("l={} gv", ell), "recorded table", [&] {
      const auto g = defalg::gv_bounds(ell);
      const auto k = detail::at(ell);
      c.equal(fmt::format("l={} bounds", ell), expected::gv[k], g.bounds, "recorded table");
      c.equal(fmt::format("l={} acon", ell), expected::acon[k], g.acon_bound, "recorded table");
      c.equal(fmt::format("l={} sum k^2 n_k", ell), g.acon_bound, defalg::weighted_sum(g.bounds),
              "derived");
    });
  }
  return out;
}

inline std::vector<Check> check_helix(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  for (int ell = 1; ell <= 6; ++ell) {
    const auto name = fmt::format("l={} translation and duality", ell);
    c.guarded(name, "derived", [&] {
      const auto r = helix::consistency_check(ell);
      c.truth(name, r.ok, r.ok ? "ok" : r.diagnostic, "derived");
      const auto d = helix::duality_closure_check(ell);
      c.truth(fmt::format("l={} tilt slots", ell), d.ok, d.ok ? "ok" : d.diagnostic, "derived");
    });
  }
  c.guarded("l=3 w_2C", "recorded", [&] {
    const auto w = helix::SheafExpr::dual_thick(2);
    c.equal("l=3 w_2C = O_2C(-1)", helix::SheafExpr::thick(2).twisted(-1).render(), w.render(),
            "recorded");
  });
  return out;
}

inline std::vector<Check> check_mutation(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  for (int ell = 1; ell <= 6; ++ell) {
    const auto n = numerics::for_length(ell).period();
    for (numerics::Index i = 0; i < n; ++i) {
      const auto name = fmt::format("l={} i={}", ell, i);
      c.guarded(name, "derived", [&] {
        const auto r = helix::mutation_class_check(i, ell);
        c.truth(name, r.ok, r.ok ? "ok" : r.diagnostic, "derived");
      });
    }
  }
  return out;
}

inline std::vector<Check> check_monodromy(const Inputs&) {
  using namespace monodromy;
  std::vector<Check> out;
  detail::Collector c(out);
  c.guarded("l=1 relation", "recorded", [&] {
    const auto w = compose(loop_q(1, 0).inverse(), compose(loop_q_plus(1), loop_q_minus(1)));
    c.equal("l=1 q0^-1 q+ q- reduces to identity", "identity", reduce(w).render(), "recorded");
  });
  const auto id = Mat2::identity().to_json();
  for (int ell = 1; ell <= 6; ++ell) {
    c.guarded(fmt::format("l={} words", ell), "derived", [&] {
      for (numerics::Index i = 0; i < period_of(ell); ++i) {
        c.equal(fmt::format("l={} k(q_{})", ell, i), id, k_matrix(loop_q(ell, i), ell).to_json(),
                "derived");
        const auto m = mutation_matrix(i, ell);
        c.equal(fmt::format("l={} M_{}^2", ell, i), id, (m * m).to_json(), "derived");
        c.equal(fmt::format("l={} det M_{}", ell, i), -1, m.det(), "derived");
      }
      const auto km = k_matrix(loop_q_minus(ell), ell);
      const auto kp = k_matrix(loop_q_plus(ell), ell);
      c.equal(fmt::format("l={} k(q-) k(q+)", ell), id, (km * kp).to_json(), "derived");
      c.equal(fmt::format("l={} k(q-) det,trace", ell), json::array({1, 2}),
              json::array({km.det(), km.trace()}), "derived");
      c.equal(fmt::format("l={} k(q+) det,trace", ell), json::array({1, 2}),
              json::array({kp.det(), kp.trace()}), "derived");
    });
  }
  return out;
}

inline std::vector<Check> check_classification(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  for (int ell = 1; ell <= 6; ++ell) {
    c.guarded(fmt::format("l={} classification", ell), "recorded", [&] {
      const auto& row = deformation_table::row(ell);
      for (int a = 1; a <= ell; ++a) {
        const auto e = a == 1 ? helix::SheafExpr::curve(-1) : helix::SheafExpr::thick(a);
        const bool nc = defalg::strictly_noncommutative(e, ell);
        c.equal(fmt::format("l={} O_{}C noncommutative", ell, a), 2 * a <= ell, nc, "recorded");
        const auto idx = defalg::helix_index(e, ell);
        const bool column = idx && !row.commutative[defalg::table_column(*idx, ell)];
        c.equal(fmt::format("l={} O_{}C table column", ell, a), column, nc, "recorded table");
      }
      const auto region = helix::base_region(ell);
      std::set<int> got;
      for (std::size_t i = 0; i < region.size(); ++i)
        if (defalg::possibly_spherical(region[i], ell)) got.insert(static_cast<int>(i));
      c.equal(fmt::format("l={} spherical positions", ell), expected::spherical[detail::at(ell)], got,
              "recorded");
      bool disjoint = true;
      for (const auto& s : region)
        if (defalg::possibly_spherical(s, ell) && defalg::strictly_noncommutative(s, ell))
          disjoint = false;
      c.truth(fmt::format("l={} predicates disjoint", ell), disjoint, disjoint, "derived");
    });
  }
  return out;
}

inline std::vector<Check> check_punctures(const Inputs&) {
  std::vector<Check> out;
  detail::Collector c(out);
  for (int ell = 1; ell <= 6; ++ell)
    c.guarded(fmt::format("l={} punctures", ell), "recorded", [&] {
      c.equal(fmt::format("l={} punctures", ell), expected::periods[detail::at(ell)] + 2,
              numerics::puncture_count(ell), "recorded");
    });
  return out;
}

inline CriterionResult run_criterion(int id, const Inputs& in = {}) {
  using Fn = std::vector<Check> (*)(const Inputs&);
  static const Fn fns[] = {check_numerics, check_knitting,  check_placements,
                           check_gv,       check_helix,     check_mutation,
                           check_monodromy, check_classification, check_punctures};
  if (id < 1 || id > static_cast<int>(std::size(fns)))
    throw UsageError(fmt::format("no criterion {}", id));
  const auto& crit = criteria()[static_cast<std::size_t>(id - 1)];
  return {crit, fns[id - 1](in)};
}

inline Report run_all(const Inputs& in = {}) {
  Report r;
  for (const auto& c : criteria()) r.results.push_back(run_criterion(c.id, in));
  return r;
}

inline json to_json(const Report& r) {
  json crits = json::array();
  std::size_t checks = 0, failed_checks = 0, passed = 0;
  for (const auto& res : r.results) {
    json cs = json::array();
    for (const auto& ch : res.checks) {
      ++checks;
      if (!ch.pass) ++failed_checks;
      cs.push_back({{"name", ch.name},
                    {"status", ch.pass ? "pass" : "fail"},
                    {"expected", ch.expected},
                    {"actual", ch.actual},
                    {"provenance", ch.provenance}});
    }
    if (res.pass()) ++passed;
    crits.push_back({{"id", res.criterion.id},
                     {"key", res.criterion.key},
                     {"title", res.criterion.title},
                     {"status", res.pass() ? "pass" : "fail"},
                     {"checks", cs}});
  }
  return {{"schema", "flopkit/verify-report/v1"},
          {"criteria", crits},
          {"summary",
           {{"criteria", r.results.size()},
            {"passed", passed},
            {"failed", r.results.size() - passed},
            {"checks", checks},
            {"checks_failed", failed_checks}}},
          {"status", r.pass() ? "pass" : "fail"}};
}

inline std::string render_text(const Report& r) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& res : r.results) {
    std::size_t ok = 0;
    for (const auto& ch : res.checks) ok += ch.pass ? 1 : 0;
    if (res.pass()) ++passed;
    out += fmt::format("{} {} {:<22} {}/{} checks  {}\n", res.pass() ? "PASS" : "FAIL",
                       res.criterion.id, res.criterion.key, ok, res.checks.size(),
                       res.criterion.title);
    for (const auto& ch : res.checks)
      if (!ch.pass)
        out += fmt::format("       - {}: expected {} actual {} [{}]\n", ch.name, ch.expected.dump(),
                           ch.actual.dump(), ch.provenance);
  }
  out += fmt::format("{}/{} criteria passed\n", passed, r.results.size());
  return out;
}

}  // namespace flopkit::verify
