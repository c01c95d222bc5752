#pragma once
// Deformation-algebra profiles, GV lower bounds and the classification of
// helix members by commutativity and sphericality.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "flopkit/deformation_table.hpp"
#include "flopkit/error.hpp"
#include "flopkit/helix.hpp"
#include "flopkit/knitting.hpp"
#include "flopkit/numerics.hpp"

namespace flopkit::defalg {

using helix::SheafExpr;
using numerics::Index;

struct DeformationProfile {
  int ell = 0;
  std::size_t i = 0;
  int loops = 0;
  int dim_sliced = 0;     // knitted
  int dim_ab_sliced = 0;  // recorded
  bool commutative = true;
  std::optional<std::string> presentation;

  bool operator==(const DeformationProfile&) const = default;
};

namespace detail {

inline std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(n)) s += digits[c - '0'];
  return s;
}

inline std::optional<std::string> presentation(int ell, std::size_t i, int loops, int dim) {
  if (ell == 3 && i == 0) return "⟨x,y⟩/(x²,y²,xy+yx)";
  if (loops == 0 && dim == 1) return "C";
  if (loops == 1) return "C[x]/x" + superscript(dim);
  return std::nullopt;
}

inline void check_invariants(const DeformationProfile& p) {
  const auto bad = [&](const char* what) {
    throw DomainError(fmt::format("profile ({}, {}): {}", p.ell, p.i, what));
  };
  if (p.dim_ab_sliced > p.dim_sliced) bad("abelianisation larger than the algebra");
  if (p.commutative != (p.loops <= 1)) bad("commutativity disagrees with the loop count");
  if (p.loops <= 1 && p.dim_ab_sliced != p.dim_sliced) bad("commutative but dimensions differ");
}

}  // namespace detail

inline std::size_t half_period(int ell) {
  return static_cast<std::size_t>(numerics::for_length(ell).period() / 2);
}

/// Table entry (l, i) with dim_sliced re-derived by knitting on the canonical
/// placement; a disagreement with the recorded value throws.
inline DeformationProfile profile(int ell, std::size_t i) {
  numerics::check_length(ell);
  if (i > half_period(ell))
    throw DomainError(fmt::format("index {} outside 0..{} for length {}", i, half_period(ell), ell));
  const auto& row = deformation_table::row(ell);
  const auto knitted = knitting::sliced_def_dim(ell, i, knitting::canonical_placement(ell));
  if (knitted != row.dims[i])
    throw DomainError(fmt::format("profile ({}, {}): knitting gives {}, table has {}", ell, i,
                                  knitted, row.dims[i]));
  DeformationProfile p{ell,
                       i,
                       row.loops[i],
                       static_cast<int>(knitted),
                       row.ab_dims[i],
                       row.commutative[i],
                       detail::presentation(ell, i, row.loops[i], row.dims[i])};
  detail::check_invariants(p);
  return p;
}

inline std::vector<DeformationProfile> profiles(int ell) {
  std::vector<DeformationProfile> out;
  for (std::size_t i = 0; i <= half_period(ell); ++i) out.push_back(profile(ell, i));
  return out;
}

/// Position in S_0..S_{N-1} of the member whose underlying sheaf (ignoring
/// twist and shift) is that of e.
inline std::optional<Index> helix_index(const SheafExpr& e, int ell) {
  const auto target = e.untwisted_base();
  const auto region = helix::base_region(ell);
  for (std::size_t i = 0; i < region.size(); ++i)
    if (region[i].untwisted_base() == target) return static_cast<Index>(i);
  return std::nullopt;
}

/// Column index in 0..N/2 carrying the deformation data of S_i; S_{N-i} is
/// dual to S_i up to twist and shift.
inline std::size_t table_column(Index i, int ell) {
  const Index n = numerics::for_length(ell).period();
  const Index r = numerics::floor_mod(i, n);
  return static_cast<std::size_t>(2 * r <= n ? r : n - r);
}

inline std::optional<Index> thick_index(int k, int ell) {
  return helix_index(k == 1 ? SheafExpr::curve(-1) : SheafExpr::thick(k), ell);
}

struct GvBounds {
  int ell = 0;
  std::vector<int> bounds;  // bounds[k-1] bounds n_k
  int acon_bound = 0;

  bool operator==(const GvBounds&) const = default;
};

inline const std::vector<int>& recorded_acon_bounds() {
  static const std::vector<int> v = {1, 8, 26, 56, 124, 200};
  return v;
}

inline int weighted_sum(const std::vector<int>& bounds) {
  int s = 0;
  for (std::size_t k = 1; k <= bounds.size(); ++k)
    s += static_cast<int>(k * k) * bounds[k - 1];
  return s;
}

inline GvBounds gv_bounds(int ell) {
  numerics::check_length(ell);
  const auto& row = deformation_table::row(ell);
  GvBounds g{ell, {}, recorded_acon_bounds()[static_cast<std::size_t>(ell - 1)]};
  for (int k = 1; k <= ell; ++k) {
    if (ell == 2 && k == 1) {
      g.bounds.push_back(4);  // two loops force a 4-dimensional abelianisation
      continue;
    }
    const auto idx = thick_index(k, ell);
    if (!idx) throw DomainError(fmt::format("O_{{{}C}} missing from the length {} helix", k, ell));
    g.bounds.push_back(row.ab_dims[table_column(*idx, ell)]);
  }
  return g;
}

/// Throws unless e is, up to twist and shift, a member of the length-l helix.
inline void require_member(const SheafExpr& e, int ell) {
  e.validate(ell);
  if (!helix_index(e, ell))
    throw DomainError(fmt::format("{} is not in the length {} simples helix", e.render(), ell));
}

inline bool strictly_noncommutative(const SheafExpr& e, int ell) {
  require_member(e, ell);
  const auto b = e.untwisted_base();
  switch (b.base()) {
    case helix::Base::CurveTwist: return 2 <= ell;
    case helix::Base::Thick: return 2 * b.k_or_a() <= ell;
    case helix::Base::DualThick: return ell == 6 && b.k_or_a() == 3;
    default: return false;
  }
}

inline bool possibly_spherical(const SheafExpr& e, int ell) {
  require_member(e, ell);
  const auto b = e.untwisted_base();
  switch (b.base()) {
    case helix::Base::CurveTwist: return ell == 1;
    case helix::Base::Thick:
    case helix::Base::DualThick: return b.k_or_a() == ell;
    default: return ell == 5;
  }
}

inline nlohmann::json to_json(const DeformationProfile& p) {
  nlohmann::json j = {{"ell", p.ell},
                      {"i", p.i},
                      {"loops", p.loops},
                      {"dim_sliced", p.dim_sliced},
                      {"dim_ab_sliced", p.dim_ab_sliced},
                      {"commutative", p.commutative}};
  j["presentation"] = p.presentation ? nlohmann::json(*p.presentation) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const GvBounds& g) {
  return {{"ell", g.ell}, {"bounds", g.bounds}, {"acon_bound", g.acon_bound}};
}

}  // namespace flopkit::defalg
