#include "boolsketch/gf2.hpp"

#include <algorithm>
#include <utility>

#include "boolsketch/errors.hpp"

namespace boolsketch::gf2 {

namespace {

void clear_tail(std::size_t n, std::span<Word> words) {
  if (words.empty()) return;
  const std::size_t rem = n % kWordBits;
  if (rem != 0) words.back() &= (Word{1} << rem) - 1;
}

void xor_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

// Reduced row echelon form of [M | b], in place. Returns pivot columns in
// row order; rows past pivots.size() are zero on the M side.
std::vector<std::size_t> reduce(BitMatrix& m, std::vector<std::uint8_t>& rhs) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      auto a = m.row(p);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      std::swap(rhs[p], rhs[r]);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) {
        xor_into(m.row(i), m.row(r));
        rhs[i] ^= rhs[r];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

BitVector::BitVector(std::size_t n, std::span<const Word> words)
    : n_(n), words_(words_for(n), 0) {
  std::copy_n(words.begin(), std::min(words.size(), words_.size()), words_.begin());
  clear_tail(n_, words_);
}

BitVector BitVector::from_indices(std::size_t n, std::span<const std::size_t> ones) {
  BitVector v(n);
  for (std::size_t i : ones) {
    if (i >= n) throw DimensionMismatch("bit index out of range");
    v.set(i);
  }
  return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.n_ != n_) throw DimensionMismatch("BitVector xor: length mismatch");
  xor_into(words_, other.words_);
  return *this;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
  if (other.n_ != n_) throw DimensionMismatch("BitVector dot: length mismatch");
  return parity_of_and(words_, other.words_);
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_words_(words_for(cols)), data_(rows * row_words_, 0) {}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::span<const BitVector> rows) {
  BitMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void BitMatrix::append_row(const BitVector& v) {
  if (v.size() != cols_) throw DimensionMismatch("BitMatrix: row length mismatch");
  data_.insert(data_.end(), v.words().begin(), v.words().end());
  ++rows_;
}

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  std::vector<std::uint8_t> rhs(m.rows(), 0);
  return reduce(work, rhs).size();
}

BitVector mat_vec(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("mat_vec: column count mismatch");
  BitVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (parity_of_and(m.row(r), v.words())) out.set(r);
  }
  return out;
}

bool linearly_independent(std::span<const BitVector> vectors) {
  if (vectors.empty()) return true;
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionMismatch("linearly_independent: length mismatch");
  }
  return rank(BitMatrix::from_rows(n, vectors)) == vectors.size();
}

std::uint64_t AffineSolutionSpace::count() const noexcept {
  if (!feasible) return 0;
  if (nullspace.size() >= 63) return std::uint64_t{1} << 63;
  return std::uint64_t{1} << nullspace.size();
}

AffineSolutionSpace solve_affine(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve_affine: rhs length mismatch");
  BitMatrix work = m;
  std::vector<std::uint8_t> rhs(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rhs[i] = b.get(i);
  const auto pivots = reduce(work, rhs);

  AffineSolutionSpace out;
  out.rank = pivots.size();
  for (std::size_t i = pivots.size(); i < m.rows(); ++i) {
    if (rhs[i]) return out;
  }
  out.feasible = true;

  const std::size_t n = m.cols();
  out.particular = BitVector(n);
  std::vector<std::uint8_t> is_pivot(n, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = 1;
    if (rhs[r]) out.particular.set(pivots[r]);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector basis(n);
    basis.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (work.get(r, f)) basis.set(pivots[r]);
    }
    out.nullspace.push_back(std::move(basis));
  }
  return out;
}

std::vector<BitVector> solve_affine_all(const BitMatrix& m, const BitVector& b,
                                        std::uint64_t cap) {
  if (cap < 1) throw InvalidArgument("solve_affine_all: cap must be >= 1");
  auto space = solve_affine(m, b);
  if (!space.feasible) return {};
  const std::uint64_t count = space.count();
  if (space.nullspace.size() >= 63 || count > cap) {
    throw SolutionCountExceeded(count, cap);
  }
  std::vector<BitVector> out;
  out.reserve(count);
  BitVector current = space.particular;
  out.push_back(current);
  for (std::uint64_t i = 1; i < count; ++i) {
    current ^= space.nullspace[static_cast<std::size_t>(std::countr_zero(i))];
    out.push_back(current);
  }
  return out;
}

}  // namespace boolsketch::gf2
