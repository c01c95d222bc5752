#pragma once
// Text, JSON and CSV renderings of the derived tables.

#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "flopkit/defalg.hpp"
#include "flopkit/error.hpp"
#include "flopkit/helix.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::tables {

using nlohmann::json;

enum class Format { Text, Json, Csv };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw UsageError(fmt::format("unknown format '{}' (text, json, csv)", s));
}

namespace detail {

/// Left-aligned columns separated by two spaces.
inline std::string grid(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (width.size() <= k) width.push_back(0);
      width[k] = std::max(width[k], r[k].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k)
      line += k + 1 == r.size() ? r[k] : fmt::format("{:<{}}  ", r[k], width[k]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (const auto& c : r) cells.push_back(csv_cell(c));
    out += fmt::format("{}\n", fmt::join(cells, ","));
  }
  return out;
}

inline std::string render(const std::vector<std::vector<std::string>>& rows, Format f) {
  return f == Format::Csv ? csv(rows) : grid(rows);
}

inline std::string seq(const std::vector<int>& v) { return fmt::format("{}", fmt::join(v, " ")); }

inline std::string dump(const json& j) { return j.dump(2, ' ', false) + "\n"; }

}  // namespace detail

inline std::string numerics_table(Format f) {
  if (f == Format::Json) {
    json rows = json::array();
    for (int ell = 1; ell <= 6; ++ell) rows.push_back(numerics::to_json(numerics::for_length(ell)));
    return detail::dump({{"schema", "flopkit/tables-numerics/v1"}, {"rows", rows}});
  }
  std::vector<std::vector<std::string>> rows = {{"ell", "N", "ranks", "n", "provenance"}};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto h = numerics::for_length(ell);
    rows.push_back({std::to_string(ell), std::to_string(h.period()), detail::seq(h.ranks()),
                    detail::seq(h.ns()), numerics::to_string(h.provenance())});
  }
  return detail::render(rows, f);
}

inline std::string defalg_table(Format f) {
  if (f == Format::Json) {
    json rows = json::array();
    for (int ell = 1; ell <= 6; ++ell)
      for (const auto& p : defalg::profiles(ell)) rows.push_back(defalg::to_json(p));
    return detail::dump({{"schema", "flopkit/tables-defalg/v1"}, {"rows", rows}});
  }
  std::vector<std::vector<std::string>> rows = {
      {"ell", "i", "loops", "dim", "dim_ab", "commutative", "presentation"}};
  for (int ell = 1; ell <= 6; ++ell)
    for (const auto& p : defalg::profiles(ell))
      rows.push_back({std::to_string(ell), std::to_string(p.i), std::to_string(p.loops),
                      std::to_string(p.dim_sliced), std::to_string(p.dim_ab_sliced),
                      p.commutative ? "yes" : "no", p.presentation.value_or("")});
  return detail::render(rows, f);
}

inline std::string gv_table(Format f) {
  if (f == Format::Json) {
    json rows = json::array();
    for (int ell = 1; ell <= 6; ++ell) rows.push_back(defalg::to_json(defalg::gv_bounds(ell)));
    return detail::dump({{"schema", "flopkit/tables-gv/v1"}, {"rows", rows}});
  }
  std::vector<std::string> header = {"ell"};
  for (int k = 1; k <= 6; ++k) header.push_back(fmt::format("n{}", k));
  header.push_back("acon");
  std::vector<std::vector<std::string>> rows = {header};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto g = defalg::gv_bounds(ell);
    std::vector<std::string> r = {std::to_string(ell)};
    for (std::size_t k = 0; k < 6; ++k)
      r.push_back(k < g.bounds.size() ? std::to_string(g.bounds[k]) : "");
    r.push_back(std::to_string(g.acon_bound));
    rows.push_back(r);
  }
  return detail::render(rows, f);
}

/// S_0..S_{N-1} with K-classes and tilt slots, for one length or all.
inline std::string helix_table(Format f, std::optional<int> only_ell = std::nullopt) {
  std::vector<int> lengths;
  if (only_ell) {
    numerics::check_length(*only_ell);
    lengths = {*only_ell};
  } else {
    lengths = {1, 2, 3, 4, 5, 6};
  }
  if (f == Format::Json) {
    json rows = json::array();
    for (int ell : lengths) {
      const auto n = numerics::for_length(ell).period();
      for (numerics::Index i = 0; i < n; ++i) {
        const auto s = helix::simple_at(i, ell);
        const auto t = helix::tilt_descriptor(i, ell);
        rows.push_back({{"ell", ell},
                        {"i", i},
                        {"simple", s.render()},
                        {"expr", s.to_json()},
                        {"kclass", {helix::kclass(s).c, helix::kclass(s).p}},
                        {"slot0", t.slot0.render()},
                        {"slot1", t.slot1.render()},
                        {"projective_ranks", {t.projective_ranks.first, t.projective_ranks.second}}});
      }
    }
    return detail::dump({{"schema", "flopkit/tables-helix/v1"}, {"rows", rows}});
  }
  std::vector<std::vector<std::string>> rows = {
      {"ell", "i", "S_i", "K-class", "slot0", "slot1", "P_i ranks"}};
  for (int ell : lengths) {
    const auto n = numerics::for_length(ell).period();
    for (numerics::Index i = 0; i < n; ++i) {
      const auto s = helix::simple_at(i, ell);
      const auto t = helix::tilt_descriptor(i, ell);
      rows.push_back({std::to_string(ell), std::to_string(i), s.render(), helix::kclass(s).render(),
                      t.slot0.render(), t.slot1.render(),
                      fmt::format("{} {}", t.projective_ranks.first, t.projective_ranks.second)});
    }
  }
  return detail::render(rows, f);
}

inline std::string table(const std::string& which, Format f, std::optional<int> ell = std::nullopt) {
  if (which == "numerics") return numerics_table(f);
  if (which == "defalg") return defalg_table(f);
  if (which == "gv") return gv_table(f);
  if (which == "helix") return helix_table(f, ell);
  throw UsageError(fmt::format("unknown table '{}' (numerics, defalg, gv, helix)", which));
}

}  // namespace flopkit::tables
