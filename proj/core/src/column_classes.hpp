#pragma once

// Column views of a bit matrix, used to find vertices whose max-row columns
// coincide (R(i,j) = n_max).

#include <cstdint>
#include <vector>

#include "boolsketch/gf2.hpp"

namespace boolsketch::detail {

/// In-place transpose of a 64x64 bit block: afterwards bit r of a[c] is the
/// former bit c of a[r].
void transpose64(std::uint64_t a[64]);

/// Column j of m as ceil(rows/64) words, bit i = m(i, j).
std::vector<std::vector<gf2::Word>> transpose_columns(const gf2::BitMatrix& m);

/// Groups of column indices (ascending, size >= 2) whose columns are equal.
/// Groups are ordered by their smallest member.
std::vector<std::vector<std::uint32_t>> identical_column_classes(const gf2::BitMatrix& m);

}  // namespace boolsketch::detail
