#pragma once

// Real polynomials over {-1,+1}^n in the parity (Fourier) basis.
//
// Points are stored in their F_2 image: bit j is set iff x_{j+1} = -1. With
// that encoding chi_S(x) = (-1)^{popcount(S & q(x))}, so evaluating a parity
// is an AND and a popcount per word.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "boolsketch/gf2.hpp"

namespace boolsketch {

/// Non-owning view of a point of {-1,+1}^n in F_2 encoding.
struct PointView {
  std::span<const gf2::Word> neg;
  std::size_t n = 0;

  int sign(std::size_t i) const noexcept {
    return ((neg[i / gf2::kWordBits] >> (i % gf2::kWordBits)) & 1u) ? -1 : +1;
  }
};

/// A point of {-1,+1}^n.
class InputPoint {
 public:
  InputPoint() = default;
  /// From explicit coordinates; every entry must be -1 or +1.
  explicit InputPoint(std::span<const int> coords);
  /// From the F_2 image q(x).
  explicit InputPoint(gf2::BitVector negatives) : neg_(std::move(negatives)) {}

  static InputPoint all_plus(std::size_t n) { return InputPoint(gf2::BitVector(n)); }

  std::size_t size() const noexcept { return neg_.size(); }
  int operator[](std::size_t i) const noexcept { return neg_.get(i) ? -1 : +1; }
  std::vector<int> coords() const;

  const gf2::BitVector& bits() const noexcept { return neg_; }
  PointView view() const noexcept { return {neg_.words(), neg_.size()}; }
  operator PointView() const noexcept { return view(); }  // NOLINT: cheap view

  friend bool operator==(const InputPoint&, const InputPoint&) = default;

 private:
  gf2::BitVector neg_;
};

/// Index set S of a parity chi_S, stored as its indicator vector p in F_2^n.
/// Indices are 0-based in the API and 1-based in serialized forms.
class ParitySet {
 public:
  ParitySet() = default;
  explicit ParitySet(gf2::BitVector bits) : bits_(std::move(bits)) {}
  static ParitySet empty(std::size_t n) { return ParitySet(gf2::BitVector(n)); }
  static ParitySet of(std::size_t n, std::initializer_list<std::size_t> indices);
  static ParitySet from_indices(std::size_t n, std::span<const std::size_t> indices);

  std::size_t dimension() const noexcept { return bits_.size(); }
  std::size_t degree() const noexcept { return bits_.popcount(); }
  bool is_empty() const noexcept { return bits_.is_zero(); }
  bool contains(std::size_t i) const noexcept { return bits_.get(i); }
  std::vector<std::size_t> indices() const { return bits_.ones(); }
  const gf2::BitVector& bits() const noexcept { return bits_; }

  /// Symmetric difference; chi_S * chi_T = chi_{S ^ T}.
  friend ParitySet operator^(const ParitySet& a, const ParitySet& b) {
    return ParitySet(a.bits_ ^ b.bits_);
  }

  friend bool operator==(const ParitySet&, const ParitySet&) = default;
  /// Canonical order: lexicographic on ascending index lists, so the empty
  /// set sorts first and {1,2} < {1,2,3} < {1,3} < {2}.
  friend std::strong_ordering operator<=>(const ParitySet& a, const ParitySet& b);

 private:
  gf2::BitVector bits_;
};

/// chi_S(x) in {-1,+1}.
double eval_parity(const ParitySet& s, PointView x);

/// Finite map ParitySet -> nonzero coefficient over a fixed dimension n.
class SparsePolynomial {
 public:
  using Terms = std::map<ParitySet, double>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(std::size_t n) : n_(n) {}

  std::size_t dimension() const noexcept { return n_; }
  std::size_t sparsity() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }

  /// Sets c_S; a zero coefficient erases the term.
  void set(const ParitySet& s, double coeff);
  /// c_S += delta, erasing the term when the sum is exactly zero.
  void add(const ParitySet& s, double delta);
  double coefficient(const ParitySet& s) const;

  std::vector<ParitySet> support() const;
  std::vector<double> coefficients() const;
  double l1_norm() const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  void check_dim(const ParitySet& s) const;

  std::size_t n_ = 0;
  Terms terms_;
};

/// sum_S c_S chi_S(x), accumulated in canonical term order so repeated
/// evaluations of equal inputs are bit-identical.
double eval_poly(const SparsePolynomial& f, PointView x);

/// Dense matrix with entries in {-1,+1}.
struct SignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> entries;  // row-major

  int at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// q(-1) = 1, q(+1) = 0 elementwise. Throws InvalidArgument on other entries.
gf2::BitMatrix q_map(const SignMatrix& x);
SignMatrix q_inv(const gf2::BitMatrix& y);

/// Evaluation table of f over all 2^n points; entry at index i is f(x) where
/// bit j of i is set iff x_{j+1} = -1. Requires n <= 24.
std::vector<double> evaluation_table(const SparsePolynomial& f);

/// Exact Fourier coefficients c_S = 2^-n sum_x f(x) chi_S(x) of a table in
/// the layout above, dropping |c_S| < 1e-12. Table size must be 2^n, n <= 24.
SparsePolynomial brute_force_wht(std::span<const double> table);

inline constexpr double kDefaultGeneralPositionTol = 1e-9;
inline constexpr std::size_t kMaxSignEnumeration = 20;

/// min over b in {0,+1,-1}^s, b != 0, of |sum_i c_i b_i|. Requires s <= 20.
double min_signed_combination(std::span<const double> coeffs);

bool is_general_position(std::span<const double> coeffs,
                         double tol = kDefaultGeneralPositionTol);
bool is_mu_separated(std::span<const double> coeffs, double mu);

struct SignPatternReport {
  std::size_t rank = 0;          // F_2 rank of the parity vectors
  std::size_t patterns = 0;      // 2^rank realizable sign patterns
  double max_value = 0.0;
  std::size_t maximizers = 0;    // patterns attaining max_value (within tol)
  std::vector<int> argmax;       // one maximizing pattern, aligned with support()
  bool unique() const noexcept { return maximizers == 1; }
};

/// Enumerates the realizable sign patterns of f's parities (via a GF(2)
/// basis) and reports how many attain the maximum of sum_i c_i a_i.
/// Values within tol * (1 + ||c||_1) of the maximum count as ties.
/// Requires sparsity <= 20.
SignPatternReport analyze_sign_patterns(const SparsePolynomial& f,
                                        double tol = kDefaultGeneralPositionTol);

bool has_unique_sign_property(const SparsePolynomial& f,
                              double tol = kDefaultGeneralPositionTol);

/// Values of f's parities at x, aligned with f.support().
std::vector<int> sign_pattern(const SparsePolynomial& f, PointView x);

struct LabeledSample {
  InputPoint point;
  double value = 0.0;
};

}  // namespace boolsketch
