#pragma once
// Knitting on translation quivers of (affine) ADE diagrams. Layer k holds an
// additive function on the vertices; the next layer is the mesh relation
//   v_{k+1}(x) = sum_{x-y} m(x,y) v_k(y) - v_{k-1}(x)
// with killed vertices forced to zero. Reading off one vertex across the
// layers gives stable Hom dimensions in the factor category.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "flopkit/deformation_table.hpp"
#include "flopkit/dynkin.hpp"
#include "flopkit/error.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::knitting {

using dynkin::MarkedDiagram;
using dynkin::Placement;

inline constexpr int kDefaultMaxLayers = 64;

struct KnitProblem {
  MarkedDiagram graph;
  std::size_t start = 0;
  std::size_t read = 0;
  std::set<std::size_t> kill;
  int max_layers = kDefaultMaxLayers;
};

struct KnitTrace {
  /// Every layer before the terminating one; each has a positive entry.
  std::vector<std::vector<std::int64_t>> layers;
  /// in_slice[k][v]: v is reachable from the start by a walk of length k,
  /// i.e. v lies on the k-th slice of the translation quiver.
  std::vector<std::vector<bool>> in_slice;
  /// Values at the read vertex on the layers whose slice contains it.
  std::vector<std::int64_t> read_values;
  std::int64_t total = 0;

  bool operator==(const KnitTrace&) const = default;
};

inline KnitTrace knit(const KnitProblem& p) {
  const auto& g = p.graph;
  const std::size_t n = g.size();
  if (p.start >= n || p.read >= n) throw DomainError("knit: vertex out of range");
  for (auto k : p.kill)
    if (k >= n) throw DomainError("knit: kill vertex out of range");
  if (p.kill.contains(p.start))
    throw DomainError(fmt::format("knit: start vertex {} is killed", g.vertices[p.start]));

  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.neighbours(v);

  std::vector<std::int64_t> prev(n, 0), cur(n, 0);
  std::vector<bool> slice(n, false);
  cur[p.start] = 1;
  slice[p.start] = true;
  for (auto k : p.kill) cur[k] = 0;

  KnitTrace t;
  for (int layer = 0; layer < p.max_layers; ++layer) {
    const bool any_pos = std::any_of(cur.begin(), cur.end(), [](auto x) { return x > 0; });
    const bool any_neg = std::any_of(cur.begin(), cur.end(), [](auto x) { return x < 0; });
    if (!any_pos) return t;
    if (any_neg)
      throw DomainError(fmt::format("knit: layer {} mixes signs: {}", layer, cur));

    t.layers.push_back(cur);
    t.in_slice.push_back(slice);
    if (slice[p.read]) {
      t.read_values.push_back(cur[p.read]);
      t.total += cur[p.read];
    }

    std::vector<std::int64_t> next(n, 0);
    std::vector<bool> next_slice(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      std::int64_t s = -prev[x];
      for (auto [y, m] : adj[x]) {
        s += m * cur[y];
        if (slice[y]) next_slice[x] = true;
      }
      next[x] = s;
    }
    for (auto k : p.kill) next[k] = 0;
    prev = std::move(cur);
    cur = std::move(next);
    slice = std::move(next_slice);
  }
  throw DomainError(fmt::format("knit: no terminating layer within {} layers", p.max_layers));
}

/// Aligned grid, one row per vertex and one column per layer. Killed
/// vertices on a slice show as '*'.
inline std::string render_grid(const KnitProblem& p, const KnitTrace& t) {
  const auto& g = p.graph;
  std::size_t id_width = 0;
  for (const auto& id : g.vertices) id_width = std::max(id_width, id.size());
  std::string out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::string row = fmt::format("{:<{}} [{}] |", g.vertices[v], id_width, g.labels[v]);
    for (std::size_t k = 0; k < t.layers.size(); ++k) {
      std::string cell;
      if (t.in_slice[k][v]) cell = p.kill.contains(v) ? "*" : fmt::format("{}", t.layers[k][v]);
      row += fmt::format(" {:>3}", cell);
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  std::vector<std::string> terms;
  for (auto x : t.read_values) terms.push_back(fmt::format("{}", x));
  out += fmt::format("read {}: {} = {}\n", g.vertices[p.read], fmt::join(terms, "+"), t.total);
  return out;
}

inline nlohmann::json to_json(const KnitProblem& p, const KnitTrace& t) {
  auto layers = nlohmann::json::array();
  for (std::size_t k = 0; k < t.layers.size(); ++k) {
    nlohmann::json layer = nlohmann::json::object();
    for (std::size_t v = 0; v < p.graph.size(); ++v)
      if (t.in_slice[k][v]) layer[p.graph.vertices[v]] = t.layers[k][v];
    layers.push_back(layer);
  }
  auto kill = nlohmann::json::array();
  for (auto k : p.kill) kill.push_back(p.graph.vertices[k]);
  return {{"schema", "flopkit/knit-trace/v1"},
          {"start", p.graph.vertices[p.start]},
          {"read", p.graph.vertices[p.read]},
          {"kill", kill},
          {"layers", layers},
          {"read_values", t.read_values},
          {"total", t.total}};
}

/// The placement used for each length when reproducing the dimension table.
inline Placement canonical_placement(int ell) {
  numerics::check_length(ell);
  using dynkin::DynkinType;
  switch (ell) {
    case 1: return {DynkinType::A(1), "a1"};
    case 2: return {DynkinType::D(4), "a2"};
    case 3: return {DynkinType::E6(), "a4"};
    case 4: return {DynkinType::E7(), "a4"};
    case 5: return {DynkinType::E8(), "a5"};
    default: return {DynkinType::E8(), "a4"};
  }
}

struct ChamberWalk {
  MarkedDiagram graph;
  /// (vertex(V_{i-1}), vertex(V_i)) for i = 0..N/2.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t solutions = 0;
  bool unique() const { return solutions == 1; }
};

inline std::int64_t knit_pair(const MarkedDiagram& g, std::size_t start, std::size_t kill) {
  return knit({g, start, start, {kill}, kDefaultMaxLayers}).total;
}

/// Assigns McKay vertices to V_0..V_{N/2}: V_0 is the extending vertex, V_1
/// and V_{-1} the marked vertex, and each later V_{i} a vertex labelled by
/// rank V_i chosen so that every knitted dimension equals `target_dims[i]`.
/// Backtracks over all choices; the first in vertex order is returned.
inline ChamberWalk chamber_walk(const Placement& placement, const numerics::HelixNumerics& h,
                                std::span<const int> target_dims) {
  ChamberWalk w;
  w.graph = dynkin::marked_affine(placement.type, placement.vertex);
  const auto& g = w.graph;
  const std::size_t marked = *g.marked;
  const std::size_t ext = *g.extending;
  const int ell = h.ell();
  if (g.labels[marked] != ell)
    throw DomainError(fmt::format("{} has label {}, not {}", placement.name(), g.labels[marked], ell));
  const auto half = static_cast<std::size_t>(h.period() / 2);
  if (target_dims.size() != half + 1)
    throw DomainError(fmt::format("expected {} target dimensions, got {}", half + 1, target_dims.size()));

  const auto mismatch = [&](std::size_t i, std::int64_t got) {
    return DomainError(fmt::format("{}: no consistent chamber walk (i = {} knits {}, table has {})",
                                   placement.name(), i, got, target_dims[i]));
  };
  if (auto d0 = knit_pair(g, marked, ext); d0 != target_dims[0]) throw mismatch(0, d0);
  if (half == 0) {
    w.pairs = {{marked, ext}};
    w.solutions = 1;
    return w;
  }
  if (auto d1 = knit_pair(g, ext, marked); d1 != target_dims[1]) throw mismatch(1, d1);

  std::vector<std::size_t> path{ext, marked};
  std::optional<std::vector<std::size_t>> first;
  std::size_t count = 0;
  auto extend = [&](auto&& self) -> void {
    const std::size_t i = path.size();
    if (i > half) {
      if (!first) first = path;
      ++count;
      return;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (g.labels[v] != h.rank_at(static_cast<numerics::Index>(i))) continue;
      if (v == path.back()) continue;
      if (knit_pair(g, path.back(), v) != target_dims[i]) continue;
      path.push_back(v);
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  if (!first) throw DomainError(fmt::format("{}: no consistent chamber walk", placement.name()));

  w.solutions = count;
  w.pairs.emplace_back(marked, ext);
  for (std::size_t i = 1; i <= half; ++i) w.pairs.emplace_back((*first)[i - 1], (*first)[i]);
  return w;
}

inline ChamberWalk chamber_walk(const Placement& placement, const numerics::HelixNumerics& h) {
  return chamber_walk(placement, h, deformation_table::row(h.ell()).dims);
}

/// Knitted dimension of the i-th sliced deformation algebra for a placement.
inline std::int64_t sliced_def_dim(int ell, std::size_t i, const Placement& placement) {
  const auto h = numerics::for_length(ell);
  if (i > static_cast<std::size_t>(h.period() / 2))
    throw DomainError(fmt::format("i = {} outside 0..{}", i, h.period() / 2));
  const auto w = chamber_walk(placement, h);
  const auto [start, kill] = w.pairs[i];
  return knit_pair(w.graph, start, kill);
}

struct PlacementResult {
  Placement placement;
  /// Knitted sliced dimension at i = 0 (start marked, kill extending).
  std::int64_t dim0 = 0;
  bool walk_found = false;
  std::size_t solutions = 0;
  /// Dimensions along the walk when one exists.
  std::vector<std::int64_t> dims;
  std::string diagnostic;
};

/// Knits a placement against the table row of its length. A missing chamber
/// walk is recorded, not thrown.
inline PlacementResult evaluate_placement(const Placement& placement, int ell) {
  const auto h = numerics::for_length(ell);
  PlacementResult r{placement, 0, false, 0, {}, {}};
  const auto g = dynkin::marked_affine(placement.type, placement.vertex);
  r.dim0 = knit_pair(g, *g.marked, *g.extending);
  try {
    const auto w = chamber_walk(placement, h);
    r.walk_found = true;
    r.solutions = w.solutions;
    for (auto [start, kill] : w.pairs) r.dims.push_back(knit_pair(w.graph, start, kill));
  } catch (const DomainError& e) {
    r.diagnostic = e.what();
  }
  return r;
}

}  // namespace flopkit::knitting
