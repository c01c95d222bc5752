#pragma once
// Wall-crossing numerics of a length-l flop: helix period N, ranks of the
// bundles V_0..V_{N-1} and exchange multiplicities n_0..n_{N-1}.

#include <cstdint>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "flopkit/error.hpp"

namespace flopkit::numerics {

using Index = std::int64_t;

/// Non-negative residue of i modulo n (n > 0). Every periodic lookup in the
/// library goes through here.
constexpr Index floor_mod(Index i, Index n) {
  const Index r = i % n;
  return r < 0 ? r + n : r;
}

enum class Provenance { RecordedTable, FigureDerived };

inline std::string to_string(Provenance p) {
  return p == Provenance::FigureDerived ? "figure-derived" : "recorded table";
}

struct TableRow {
  int ell = 0;
  std::vector<int> ranks;
  std::vector<int> ns;
};

/// The embedded length table. Only the l = 3 row is also derived from the
/// marked-diagram pictures; the others are recorded data.
inline const std::vector<TableRow>& canonical_rows() {
  static const std::vector<TableRow> rows = {
      {1, {1}, {2}},
      {2, {1, 2}, {4, 1}},
      {3, {1, 3, 2, 3}, {6, 1, 3, 1}},
      {4, {1, 4, 3, 2, 3, 4}, {8, 1, 2, 3, 2, 1}},
      {5, {1, 5, 4, 3, 5, 2, 5, 3, 4, 5}, {10, 1, 2, 3, 1, 5, 1, 3, 2, 1}},
      {6, {1, 6, 5, 4, 3, 5, 2, 5, 3, 4, 5, 6}, {12, 1, 2, 2, 3, 1, 5, 1, 3, 2, 2, 1}},
  };
  return rows;
}

inline void check_length(int ell) {
  if (ell < 1 || ell > 6) throw DomainError(fmt::format("length {} outside 1..6", ell));
}

/// n_i = (rank_{i+1} + rank_{i-1}) / rank_i around the period; throws when a
/// division is inexact.
inline std::vector<int> derive_ns(const std::vector<int>& ranks) {
  if (ranks.empty() || ranks[0] != 1) throw DomainError("rank sequence must start with 1");
  const auto n = static_cast<Index>(ranks.size());
  std::vector<int> ns;
  ns.reserve(ranks.size());
  for (Index i = 0; i < n; ++i) {
    const int r = ranks[static_cast<std::size_t>(i)];
    if (r <= 0) throw DomainError(fmt::format("rank {} at index {} is not positive", r, i));
    const int sum = ranks[static_cast<std::size_t>(floor_mod(i + 1, n))] +
                    ranks[static_cast<std::size_t>(floor_mod(i - 1, n))];
    if (sum % r != 0)
      throw DomainError(fmt::format("ranks inconsistent at {}: {} not divisible by {}", i, sum, r));
    ns.push_back(sum / r);
  }
  return ns;
}

class HelixNumerics {
 public:
  /// Validates every invariant; throws DomainError naming the first failure.
  static HelixNumerics from_row(const TableRow& row) {
    check_length(row.ell);
    HelixNumerics h;
    h.ell_ = row.ell;
    h.ranks_ = row.ranks;
    h.ns_ = row.ns;
    h.provenance_ = row.ell == 3 ? Provenance::FigureDerived : Provenance::RecordedTable;
    h.validate();
    return h;
  }

  int ell() const { return ell_; }
  Index period() const { return static_cast<Index>(ranks_.size()); }
  const std::vector<int>& ranks() const { return ranks_; }
  const std::vector<int>& ns() const { return ns_; }
  Provenance provenance() const { return provenance_; }

  int rank_at(Index i) const { return ranks_[static_cast<std::size_t>(floor_mod(i, period()))]; }
  int n_at(Index i) const { return ns_[static_cast<std::size_t>(floor_mod(i, period()))]; }

 private:
  void validate() const {
    const auto fail = [&](const std::string& what) {
      throw DomainError(fmt::format("length {} table: {}", ell_, what));
    };
    if (ranks_.empty() || ranks_.size() != ns_.size())
      fail(fmt::format("ranks ({}) and ns ({}) differ in size", ranks_.size(), ns_.size()));
    if (ranks_[0] != 1) fail("rank of V_0 is not 1");
    for (std::size_t k = 1; k < ranks_.size(); ++k)
      if (ranks_[k] == 1) fail(fmt::format("rank 1 recurs at {} before the period", k));
    const Index n = period();
    for (Index i = 0; i < n; ++i) {
      if (rank_at(i) != rank_at(n - i) || n_at(i) != n_at(n - i))
        fail(fmt::format("not palindromic at {}", i));
      if (rank_at(i + 1) + rank_at(i - 1) != n_at(i) * rank_at(i))
        fail(fmt::format("recurrence fails at {}", i));
    }
    if (ns_[0] != 2 * ell_) fail(fmt::format("n_0 = {} but 2l = {}", ns_[0], 2 * ell_));
    if (derive_ns(ranks_) != ns_)
      fail(fmt::format("ns {} differ from recurrence {}", ns_, derive_ns(ranks_)));
  }

  int ell_ = 0;
  std::vector<int> ranks_;
  std::vector<int> ns_;
  Provenance provenance_ = Provenance::RecordedTable;
};

inline HelixNumerics for_length(int ell) {
  check_length(ell);
  return HelixNumerics::from_row(canonical_rows()[static_cast<std::size_t>(ell - 1)]);
}

inline int rank_at(Index i, int ell) { return for_length(ell).rank_at(i); }
inline int n_at(Index i, int ell) { return for_length(ell).n_at(i); }

/// Punctures of the moduli sphere: N on the equator plus
/// the two poles.
inline Index puncture_count(int ell) { return for_length(ell).period() + 2; }

/// Ranks in 0 -> V_{i-1} -> V_i^{n_i} -> V_{i+1} -> 0.
struct EulerSequence {
  Index i = 0;
  int left = 0;
  int middle = 0;
  int multiplicity = 0;
  int right = 0;

  bool operator==(const EulerSequence&) const = default;
};

inline EulerSequence euler_sequence(Index i, int ell) {
  const auto h = for_length(ell);
  EulerSequence e{i, h.rank_at(i - 1), h.rank_at(i), h.n_at(i), h.rank_at(i + 1)};
  if (e.left + e.right != e.multiplicity * e.middle)
    throw DomainError(fmt::format("rank additivity fails at i = {}, l = {}", i, ell));
  return e;
}

/// Ranks of the projective pair P_i = V_{i-1} + V_i.
inline std::pair<int, int> projective_ranks(Index i, int ell) {
  const auto h = for_length(ell);
  return {h.rank_at(i - 1), h.rank_at(i)};
}

inline nlohmann::json to_json(const HelixNumerics& h) {
  return {{"ell", h.ell()},
          {"N", h.period()},
          {"ranks", h.ranks()},
          {"ns", h.ns()},
          {"provenance", to_string(h.provenance())}};
}

}  // namespace flopkit::numerics
