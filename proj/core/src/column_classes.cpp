#include "column_classes.hpp"

#include <algorithm>
#include <unordered_map>

namespace boolsketch::detail {

void transpose64(std::uint64_t a[64]) {
  std::uint64_t m = 0x00000000FFFFFFFFull;
  for (unsigned j = 32; j != 0; j >>= 1, m ^= (m << j)) {
    for (unsigned k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      const std::uint64_t t = ((a[k] >> j) ^ a[k | j]) & m;
      a[k | j] ^= t;
      a[k] ^= t << j;
    }
  }
}

std::vector<std::vector<gf2::Word>> transpose_columns(const gf2::BitMatrix& m) {
  const std::size_t row_blocks = gf2::words_for(m.rows());
  std::vector<std::vector<gf2::Word>> cols(m.cols(), std::vector<gf2::Word>(row_blocks, 0));
  std::uint64_t block[64];
  for (std::size_t rb = 0; rb < row_blocks; ++rb) {
    for (std::size_t w = 0; w < m.row_words(); ++w) {
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t row = rb * 64 + r;
        block[r] = row < m.rows() ? m.row(row)[w] : 0;
      }
      transpose64(block);
      for (std::size_t c = 0; c < 64; ++c) {
        const std::size_t col = w * 64 + c;
        if (col < m.cols()) cols[col][rb] = block[c];
      }
    }
  }
  return cols;
}

std::vector<std::vector<std::uint32_t>> identical_column_classes(const gf2::BitMatrix& m) {
  const auto cols = transpose_columns(m);
  auto hash = [](const std::vector<gf2::Word>& c) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto w : c) h = (h ^ w) * 0x100000001b3ull;
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint32_t>>> buckets;
  for (std::uint32_t j = 0; j < cols.size(); ++j) {
    auto& groups = buckets[hash(cols[j])];
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return cols[g.front()] == cols[j]; });
    if (it == groups.end()) {
      groups.push_back({j});
    } else {
      it->push_back(j);
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& [h, groups] : buckets) {
    for (auto& g : groups) {
      if (g.size() >= 2) out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace boolsketch::detail
