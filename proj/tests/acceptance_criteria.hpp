#pragma once
// Criterion ids and keys shared by the acceptance binary and the unit tests.

#include <array>
#include <string_view>

namespace acceptance {

struct CriterionId {
  int id;
  std::string_view key;
};

inline constexpr std::array<CriterionId, 9> kCriteria = {{
    {1, "numerics-table"},
    {2, "knitting-oracle"},
    {3, "placement-invariance"},
    {4, "gv-assembly"},
    {5, "helix-consistency"},
    {6, "kclass-mutation"},
    {7, "monodromy-words"},
    {8, "classification"},
    {9, "puncture-count"},
}};

}  // namespace acceptance
