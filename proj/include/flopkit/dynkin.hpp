#pragma once
// Finite and affine simply-laced Dynkin diagrams, highest-root labels and
// label-l vertex placements.
//
// Vertices follow Bourbaki numbering and carry the ids "a1".."an"; the
// extending vertex of an affine diagram is "a0".

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "flopkit/error.hpp"

namespace flopkit::dynkin {

enum class Family { A, D, E };

struct DynkinType {
  Family family = Family::A;
  int n = 1;

  static DynkinType A(int n) { return checked({Family::A, n}); }
  static DynkinType D(int n) { return checked({Family::D, n}); }
  static DynkinType E(int n) { return checked({Family::E, n}); }
  static DynkinType E6() { return E(6); }
  static DynkinType E7() { return E(7); }
  static DynkinType E8() { return E(8); }

  static DynkinType checked(DynkinType t) {
    switch (t.family) {
      case Family::A:
        if (t.n < 1) throw DomainError(fmt::format("A({}) needs n >= 1", t.n));
        break;
      case Family::D:
        if (t.n < 4) throw DomainError(fmt::format("D({}) needs n >= 4", t.n));
        break;
      case Family::E:
        if (t.n < 6 || t.n > 8)
          throw DomainError(fmt::format("E{} does not exist", t.n));
        break;
    }
    return t;
  }

  /// Parses "A3", "A(3)", "D4", "E6", case-insensitive in the family letter.
  static DynkinType parse(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](char c) { return c == '(' || c == ')' || c == ' '; }),
            s.end());
    if (s.size() < 2) throw UsageError("bad Dynkin type '" + s + "'");
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(s.substr(1), &used);
      if (used != s.size() - 1) throw UsageError("bad Dynkin type '" + s + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad Dynkin type '" + s + "'");
    }
    switch (s[0]) {
      case 'A': case 'a': return A(n);
      case 'D': case 'd': return D(n);
      case 'E': case 'e': return E(n);
      default: throw UsageError("bad Dynkin type '" + s + "'");
    }
  }

  std::string family_name() const {
    switch (family) {
      case Family::A: return "A";
      case Family::D: return "D";
      case Family::E: return "E";
    }
    return "?";
  }
  std::string name() const { return fmt::format("{}{}", family_name(), n); }

  auto operator<=>(const DynkinType&) const = default;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  int multiplicity = 1;
};

struct MarkedDiagram {
  DynkinType type;
  bool affine = false;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<int> labels;
  std::optional<std::size_t> extending;
  std::optional<std::size_t> marked;

  std::size_t size() const { return vertices.size(); }

  std::size_t index_of(const std::string& id) const {
    auto it = std::find(vertices.begin(), vertices.end(), id);
    if (it == vertices.end())
      throw DomainError(fmt::format("{} has no vertex '{}'", type.name(), id));
    return static_cast<std::size_t>(it - vertices.begin());
  }

  /// (neighbour, multiplicity) pairs.
  std::vector<std::pair<std::size_t, int>> neighbours(std::size_t v) const {
    std::vector<std::pair<std::size_t, int>> out;
    for (const auto& e : edges) {
      if (e.u == v) out.emplace_back(e.v, e.multiplicity);
      if (e.v == v) out.emplace_back(e.u, e.multiplicity);
    }
    return out;
  }

  int degree(std::size_t v) const {
    int d = 0;
    for (auto [w, m] : neighbours(v)) d += m;
    return d;
  }

  /// Accepts a vertex id or one of the aliases "extending", "branch", "marked".
  std::size_t resolve(const std::string& name) const {
    if (name == "extending") {
      if (!extending) throw DomainError(type.name() + " is not affine");
      return *extending;
    }
    if (name == "marked") {
      if (!marked) throw DomainError("diagram has no marked vertex");
      return *marked;
    }
    if (name == "branch") {
      std::optional<std::size_t> found;
      for (std::size_t v = 0; v < size(); ++v) {
        if (neighbours(v).size() >= 3) {
          if (found) throw DomainError(type.name() + ": 'branch' is ambiguous");
          found = v;
        }
      }
      if (!found) throw DomainError(type.name() + " has no branch vertex");
      return *found;
    }
    return index_of(name);
  }
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> finite_edges(DynkinType t) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  const auto n = static_cast<std::size_t>(t.n);
  switch (t.family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      break;
    case Family::D:
      for (std::size_t i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(n - 3, n - 1);
      break;
    case Family::E:
      // a1-a3-a4-...-an with a2 hanging off a4
      e.emplace_back(0, 2);
      for (std::size_t i = 2; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(1, 3);
      break;
  }
  return e;
}

inline int pairing(const MarkedDiagram& d, const std::vector<int>& r, std::size_t i) {
  int p = 2 * r[i];
  for (auto [w, m] : d.neighbours(i)) p -= m * r[w];
  return p;
}

}  // namespace detail

/// All positive roots of a finite diagram, in simple-root coordinates,
/// generated by saturating the simple roots under r -> r + a_i whenever
/// (r, a_i) < 0.
inline std::set<std::vector<int>> positive_roots(const MarkedDiagram& d) {
  if (d.affine) throw DomainError("positive_roots needs a finite diagram");
  const std::size_t n = d.size();
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> r(n, 0);
    r[i] = 1;
    roots.insert(r);
    frontier.push_back(r);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& r : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        if (detail::pairing(d, r, i) < 0) {
          auto s = r;
          ++s[i];
          if (roots.insert(s).second) next.push_back(std::move(s));
        }
      }
    }
    frontier = std::move(next);
  }
  return roots;
}

inline MarkedDiagram finite_diagram(DynkinType t) {
  t = DynkinType::checked(t);
  MarkedDiagram d;
  d.type = t;
  for (int i = 1; i <= t.n; ++i) d.vertices.push_back(fmt::format("a{}", i));
  for (auto [u, v] : detail::finite_edges(t)) d.edges.push_back({u, v, 1});
  d.labels.assign(d.vertices.size(), 0);
  return d;
}

/// Highest-root coefficients. For an affine diagram the finite part is
/// labelled and the extending vertex gets 1.
inline std::vector<int> highest_root_labels(const MarkedDiagram& d) {
  if (d.affine) {
    auto labels = highest_root_labels(finite_diagram(d.type));
    // vertices of an affine diagram are [a0, a1, .., an]
    std::vector<int> out{1};
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
  }
  std::vector<int> labels(d.size(), 0);
  for (const auto& r : positive_roots(d))
    for (std::size_t i = 0; i < r.size(); ++i) labels[i] = std::max(labels[i], r[i]);
  return labels;
}

/// Reference label tables for the exceptional types (Bourbaki order).
inline std::vector<int> reference_labels(DynkinType t) {
  if (t == DynkinType::E6()) return {1, 2, 2, 3, 2, 1};
  if (t == DynkinType::E7()) return {2, 2, 3, 4, 3, 2, 1};
  if (t == DynkinType::E8()) return {2, 3, 4, 6, 5, 4, 3, 2};
  throw DomainError("no reference table for " + t.name());
}

/// Builds the standard diagram. The affine extension is attached to every
/// finite vertex i with (theta, a_i) > 0, with that pairing as multiplicity,
/// which yields the double edge of affine A1.
inline MarkedDiagram build_diagram(DynkinType t, bool affine) {
  auto fin = finite_diagram(t);
  fin.labels = highest_root_labels(fin);
  if (!affine) return fin;

  MarkedDiagram d;
  d.type = fin.type;
  d.affine = true;
  d.vertices.push_back("a0");
  for (const auto& v : fin.vertices) d.vertices.push_back(v);
  for (const auto& e : fin.edges) d.edges.push_back({e.u + 1, e.v + 1, e.multiplicity});
  for (std::size_t i = 0; i < fin.size(); ++i) {
    const int p = detail::pairing(fin, fin.labels, i);
    if (p > 0) d.edges.push_back({0, i + 1, p});
  }
  d.extending = 0;
  d.labels.push_back(1);
  for (int l : fin.labels) d.labels.push_back(l);
  return d;
}

/// Marks `vertex` (an id of the finite diagram) on the affine diagram.
inline MarkedDiagram marked_affine(DynkinType t, const std::string& vertex) {
  auto d = build_diagram(t, true);
  d.marked = d.resolve(vertex);
  return d;
}

/// True when 2 label(v) = sum multiplicity * label(w) at every vertex.
inline bool labels_in_kernel(const MarkedDiagram& d) {
  for (std::size_t v = 0; v < d.size(); ++v)
    if (detail::pairing(d, d.labels, v) != 0) return false;
  return true;
}

/// Canonical string of the finite tree rooted at v (AHU encoding with
/// labels), so two vertices are related by a diagram automorphism iff their
/// codes agree.
inline std::string rooted_code(const MarkedDiagram& d, std::size_t v,
                               std::optional<std::size_t> parent = std::nullopt) {
  std::vector<std::string> kids;
  for (auto [w, m] : d.neighbours(v)) {
    if (parent && w == *parent) continue;
    kids.push_back(fmt::format("{}*", m) + rooted_code(d, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = fmt::format("({}", d.labels[v]);
  for (const auto& k : kids) s += k;
  return s + ")";
}

struct Placement {
  DynkinType type;
  std::string vertex;

  std::string name() const { return type.name() + ":" + vertex; }
  auto operator<=>(const Placement&) const = default;
};

/// A1..A_max, D4..D_max and E6, E7, E8.
inline std::vector<DynkinType> standard_types(int max_rank = 12) {
  std::vector<DynkinType> out;
  for (int n = 1; n <= max_rank; ++n) out.push_back(DynkinType::A(n));
  for (int n = 4; n <= max_rank; ++n) out.push_back(DynkinType::D(n));
  out.push_back(DynkinType::E6());
  out.push_back(DynkinType::E7());
  out.push_back(DynkinType::E8());
  return out;
}

inline std::vector<Placement> vertices_with_label(int ell, const std::vector<DynkinType>& types,
                                                  bool up_to_automorphism = true) {
  std::vector<Placement> out;
  for (const auto& t : types) {
    const auto d = build_diagram(t, false);
    std::set<std::string> seen;
    for (std::size_t v = 0; v < d.size(); ++v) {
      if (d.labels[v] != ell) continue;
      if (up_to_automorphism && !seen.insert(rooted_code(d, v)).second) continue;
      out.push_back({t, d.vertices[v]});
    }
  }
  return out;
}

inline nlohmann::json to_json(const MarkedDiagram& d) {
  nlohmann::json j;
  j["family"] = d.type.family_name();
  j["n"] = d.type.n;
  j["affine"] = d.affine;
  j["vertices"] = d.vertices;
  auto edges = nlohmann::json::array();
  for (const auto& e : d.edges)
    edges.push_back({d.vertices[e.u], d.vertices[e.v], e.multiplicity});
  j["edges"] = edges;
  nlohmann::json labels = nlohmann::json::object();
  for (std::size_t v = 0; v < d.size(); ++v) labels[d.vertices[v]] = d.labels[v];
  j["labels"] = labels;
  j["extending"] = d.extending ? nlohmann::json(d.vertices[*d.extending]) : nlohmann::json();
  if (d.marked) j["marked"] = d.vertices[*d.marked];
  return j;
}

}  // namespace flopkit::dynkin
