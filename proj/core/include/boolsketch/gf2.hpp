#pragma once

// Bit-packed vectors and matrices over F_2.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace boolsketch::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length vector over F_2. Bits past `size()` in the last word are
/// always zero, so word-wise comparison and hashing are exact.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_(words_for(n), 0) {}
  BitVector(std::size_t n, std::span<const Word> words);

  static BitVector from_indices(std::size_t n, std::span<const std::size_t> ones);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool v = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept {
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
  }

  /// this ^= other; sizes must agree.
  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  std::size_t popcount() const noexcept;
  bool is_zero() const noexcept;
  /// Inner product over F_2.
  bool dot(const BitVector& other) const;
  /// Indices of set bits, ascending.
  std::vector<std::size_t> ones() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

/// Parity of popcount(a & b) over the common word prefix.
inline bool parity_of_and(std::span<const Word> a, std::span<const Word> b) noexcept {
  Word acc = 0;
  const std::size_t w = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < w; ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

/// Row-major packed matrix over F_2.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix from_rows(std::size_t cols, std::span<const BitVector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t row_words() const noexcept { return row_words_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * row_words_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v = true) noexcept {
    Word& w = data_[r * row_words_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    w = v ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row(std::size_t r) const noexcept {
    return {data_.data() + r * row_words_, row_words_};
  }
  std::span<Word> row(std::size_t r) noexcept {
    return {data_.data() + r * row_words_, row_words_};
  }
  BitVector row_vector(std::size_t r) const { return BitVector(cols_, row(r)); }

  void append_row(const BitVector& v);

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t row_words_ = 0;
  std::vector<Word> data_;
};

/// Rank over F_2 by Gaussian elimination.
std::size_t rank(const BitMatrix& m);

/// M v over F_2.
BitVector mat_vec(const BitMatrix& m, const BitVector& v);

/// True iff the vectors are linearly independent over F_2 (the empty family
/// is independent). All vectors must share one length.
bool linearly_independent(std::span<const BitVector> vectors);

/// Particular solution plus nullspace basis of M p = b.
struct AffineSolutionSpace {
  bool feasible = false;
  std::size_t rank = 0;
  BitVector particular;
  std::vector<BitVector> nullspace;

  /// 2^dim saturating at 2^63; 0 when infeasible.
  std::uint64_t count() const noexcept;
};

AffineSolutionSpace solve_affine(const BitMatrix& m, const BitVector& b);

/// Every p with M p = b, in Gray-code order over the nullspace basis (each
/// successive solution differs from the previous one by one basis vector).
/// Empty when infeasible; throws SolutionCountExceeded when the count is
/// larger than `cap`.
std::vector<BitVector> solve_affine_all(const BitMatrix& m, const BitVector& b,
                                        std::uint64_t cap);

}  // namespace boolsketch::gf2
