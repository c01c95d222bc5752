#pragma once
// Per-length data of the sliced deformation algebras, indexed i = 0..N/2.

#include <string>
#include <vector>

namespace flopkit::deformation_table {

struct Row {
  int ell = 0;
  std::vector<int> loops;
  std::vector<int> dims;     // dim of the sliced deformation algebra
  std::vector<int> ab_dims;  // dim of its abelianisation
  std::vector<bool> commutative;
};

inline const std::vector<Row>& canonical_rows() {
  static const std::vector<Row> rows = {
      {1, {0}, {1}, {1}, {true}},
      {2, {2, 0}, {4, 1}, {3, 1}, {false, true}},
      {3, {2, 0, 1}, {12, 1, 3}, {5, 1, 3}, {false, true, true}},
      {4, {2, 0, 1, 2}, {24, 1, 2, 6}, {6, 1, 2, 4}, {false, true, true, false}},
      {5,
       {2, 0, 1, 1, 0, 2},
       {40, 1, 2, 4, 1, 10},
       {7, 1, 2, 4, 1, 6},
       {false, true, true, true, true, false}},
      {6,
       {2, 0, 1, 1, 2, 1, 2},
       {60, 1, 2, 3, 6, 2, 15},
       {6, 1, 2, 3, 4, 2, 6},
       {false, true, true, true, false, true, false}},
  };
  return rows;
}

inline const Row& row(int ell) { return canonical_rows().at(static_cast<std::size_t>(ell - 1)); }

}  // namespace flopkit::deformation_table
