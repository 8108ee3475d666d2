#include "boolsketch/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "boolsketch/errors.hpp"

namespace boolsketch {

namespace {

constexpr std::size_t kMaxTableDim = 24;

std::size_t highest_bit(const gf2::BitVector& v) {
  const auto w = v.words();
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] != 0) {
      return i * gf2::kWordBits + (gf2::kWordBits - 1 - std::countl_zero(w[i]));
    }
  }
  return std::numeric_limits<std::size_t>::max();
}

// All sums sum_i c_i b_i over b in {0,+1,-1}^k; entry 0 is the all-zero b.
std::vector<double> signed_sums(std::span<const double> c) {
  std::vector<double> sums{0.0};
  sums.reserve(static_cast<std::size_t>(std::pow(3.0, static_cast<double>(c.size()))));
  for (double ci : c) {
    const std::size_t prev = sums.size();
    for (std::size_t j = 0; j < prev; ++j) {
      sums.push_back(sums[j] + ci);
      sums.push_back(sums[j] - ci);
    }
  }
  return sums;
}

// min |v + r| over r in sorted.
double nearest_abs(const std::vector<double>& sorted, double v) {
  if (sorted.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(sorted.begin(), sorted.end(), -v);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = std::abs(v + *it);
  if (it != sorted.begin()) best = std::min(best, std::abs(v + *std::prev(it)));
  return best;
}

}  // namespace

InputPoint::InputPoint(std::span<const int> coords) : neg_(coords.size()) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == -1) {
      neg_.set(i);
    } else if (coords[i] != 1) {
      throw InvalidArgument("InputPoint: coordinate " + std::to_string(i) +
                            " is not -1 or +1");
    }
  }
}

std::vector<int> InputPoint::coords() const {
  std::vector<int> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i];
  return out;
}

ParitySet ParitySet::of(std::size_t n, std::initializer_list<std::size_t> indices) {
  return ParitySet(gf2::BitVector::from_indices(n, std::span(indices.begin(), indices.size())));
}

ParitySet ParitySet::from_indices(std::size_t n, std::span<const std::size_t> indices) {
  return ParitySet(gf2::BitVector::from_indices(n, indices));
}

std::strong_ordering operator<=>(const ParitySet& a, const ParitySet& b) {
  if (auto c = a.dimension() <=> b.dimension(); c != 0) return c;
  const auto wa = a.bits_.words();
  const auto wb = b.bits_.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const gf2::Word diff = wa[i] ^ wb[i];
    if (diff == 0) continue;
    // j is the smallest element of the symmetric difference; the index lists
    // agree before it. Whichever set holds j wins unless the other set has
    // nothing left past j (then the other is a proper prefix, hence smaller).
    const unsigned j = static_cast<unsigned>(std::countr_zero(diff));
    const bool a_has = (wa[i] >> j) & 1u;
    const auto& other = a_has ? wb : wa;
    bool other_has_more = j + 1 < gf2::kWordBits && (other[i] >> (j + 1)) != 0;
    for (std::size_t k = i + 1; !other_has_more && k < other.size(); ++k) {
      other_has_more = other[k] != 0;
    }
    if (a_has) {
      return other_has_more ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return other_has_more ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

double eval_parity(const ParitySet& s, PointView x) {
  if (s.dimension() != x.n) throw DimensionMismatch("eval_parity: dimension mismatch");
  return gf2::parity_of_and(s.bits().words(), x.neg) ? -1.0 : 1.0;
}

void SparsePolynomial::check_dim(const ParitySet& s) const {
  if (s.dimension() != n_) {
    throw DimensionMismatch("SparsePolynomial: parity set of dimension " +
                            std::to_string(s.dimension()) + ", expected " +
                            std::to_string(n_));
  }
}

void SparsePolynomial::set(const ParitySet& s, double coeff) {
  check_dim(s);
  if (coeff == 0.0) {
    terms_.erase(s);
  } else {
    terms_[s] = coeff;
  }
}

void SparsePolynomial::add(const ParitySet& s, double delta) {
  check_dim(s);
  auto [it, inserted] = terms_.try_emplace(s, 0.0);
  it->second += delta;
  if (it->second == 0.0) terms_.erase(it);
}

double SparsePolynomial::coefficient(const ParitySet& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

std::vector<ParitySet> SparsePolynomial::support() const {
  std::vector<ParitySet> out;
  out.reserve(terms_.size());
  for (const auto& [s, c] : terms_) out.push_back(s);
  return out;
}

std::vector<double> SparsePolynomial::coefficients() const {
  std::vector<double> out;
  out.reserve(terms_.size());
  for (const auto& [s, c] : terms_) out.push_back(c);
  return out;
}

double SparsePolynomial::l1_norm() const {
  double total = 0.0;
  for (const auto& [s, c] : terms_) total += std::abs(c);
  return total;
}

double eval_poly(const SparsePolynomial& f, PointView x) {
  if (f.dimension() != x.n) throw DimensionMismatch("eval_poly: dimension mismatch");
  double acc = 0.0;
  for (const auto& [s, c] : f.terms()) {
    acc += gf2::parity_of_and(s.bits().words(), x.neg) ? -c : c;
  }
  return acc;
}

gf2::BitMatrix q_map(const SignMatrix& x) {
  if (x.entries.size() != x.rows * x.cols) throw DimensionMismatch("q_map: bad shape");
  gf2::BitMatrix y(x.rows, x.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      const int v = x.at(r, c);
      if (v == -1) {
        y.set(r, c);
      } else if (v != 1) {
        throw InvalidArgument("q_map: entry is not -1 or +1");
      }
    }
  }
  return y;
}

SignMatrix q_inv(const gf2::BitMatrix& y) {
  SignMatrix x{y.rows(), y.cols(), std::vector<int>(y.rows() * y.cols(), 1)};
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) {
      if (y.get(r, c)) x.entries[r * y.cols() + c] = -1;
    }
  }
  return x;
}

std::vector<double> evaluation_table(const SparsePolynomial& f) {
  const std::size_t n = f.dimension();
  if (n > kMaxTableDim) throw InvalidArgument("evaluation_table: n > 24");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> table(size);
  gf2::BitVector point(n);
  for (std::size_t i = 0; i < size; ++i) {
    if (n > 0) point.words()[0] = i;
    table[i] = eval_poly(f, PointView{point.words(), n});
  }
  return table;
}

SparsePolynomial brute_force_wht(std::span<const double> table) {
  const std::size_t size = table.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw InvalidArgument("brute_force_wht: table size must be a power of two");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(size));
  if (n > kMaxTableDim) throw InvalidArgument("brute_force_wht: n > 24");

  // In-place Walsh-Hadamard butterfly; index bits double as parity bits since
  // chi_S(x) = (-1)^{|S & q(x)|}.
  std::vector<double> h(table.begin(), table.end());
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t i = 0; i < size; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = h[j];
        const double b = h[j + len];
        h[j] = a + b;
        h[j + len] = a - b;
      }
    }
  }
  SparsePolynomial f(n);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t s = 0; s < size; ++s) {
    const double c = h[s] * scale;
    if (std::abs(c) < 1e-12) continue;
    gf2::BitVector bits(n);
    if (n > 0) bits.words()[0] = s;
    f.set(ParitySet(std::move(bits)), c);
  }
  return f;
}

double min_signed_combination(std::span<const double> coeffs) {
  if (coeffs.size() > kMaxSignEnumeration) {
    throw InvalidArgument("sign enumeration limited to 20 coefficients");
  }
  if (coeffs.empty()) return std::numeric_limits<double>::infinity();
  // Meet in the middle: sum_i c_i b_i = left + right over the two halves.
  const std::size_t half = coeffs.size() / 2;
  const auto left = signed_sums(coeffs.first(half));
  auto right = signed_sums(coeffs.subspan(half));
  std::vector<double> right_nonzero(right.begin() + 1, right.end());
  std::sort(right.begin(), right.end());
  std::sort(right_nonzero.begin(), right_nonzero.end());

  double best = nearest_abs(right_nonzero, left[0]);
  for (std::size_t i = 1; i < left.size(); ++i) {
    best = std::min(best, nearest_abs(right, left[i]));
  }
  return best;
}

bool is_general_position(std::span<const double> coeffs, double tol) {
  return min_signed_combination(coeffs) > tol;
}

bool is_mu_separated(std::span<const double> coeffs, double mu) {
  return min_signed_combination(coeffs) > mu;
}

SignPatternReport analyze_sign_patterns(const SparsePolynomial& f, double tol) {
  const std::size_t s = f.sparsity();
  if (s > kMaxSignEnumeration) {
    throw InvalidArgument("analyze_sign_patterns: sparsity limited to 20");
  }
  const auto support = f.support();
  const auto coeffs = f.coefficients();

  // XOR basis keyed by highest set bit. Each reduced vector remembers which
  // original basis parities it is a combination of.
  struct Reduced {
    std::size_t pivot;
    gf2::BitVector vec;
    std::uint32_t mask;
  };
  std::vector<Reduced> basis;
  std::vector<std::uint32_t> combo(s, 0);  // parity i = XOR of basis parities in combo[i]
  for (std::size_t i = 0; i < s; ++i) {
    gf2::BitVector v = support[i].bits();
    std::uint32_t acc = 0;
    for (const auto& b : basis) {  // descending pivots
      if (v.get(b.pivot)) {
        v ^= b.vec;
        acc ^= b.mask;
      }
    }
    if (v.is_zero()) {
      combo[i] = acc;
      continue;
    }
    const std::uint32_t own = std::uint32_t{1} << basis.size();
    combo[i] = own;
    Reduced r{highest_bit(v), std::move(v), acc ^ own};
    auto pos = std::find_if(basis.begin(), basis.end(),
                            [&](const Reduced& b) { return b.pivot < r.pivot; });
    basis.insert(pos, std::move(r));
  }

  SignPatternReport rep;
  rep.rank = basis.size();
  rep.patterns = std::size_t{1} << rep.rank;
  const double slack = tol * (1.0 + f.l1_norm());

  std::vector<double> values(rep.patterns);
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t best_z = 0;
  for (std::uint32_t z = 0; z < rep.patterns; ++z) {
    double v = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      v += (std::popcount(combo[i] & z) & 1) ? -coeffs[i] : coeffs[i];
    }
    values[z] = v;
    if (v > best) {
      best = v;
      best_z = z;
    }
  }
  rep.max_value = s == 0 ? 0.0 : best;
  rep.maximizers = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(),
                    [&](double v) { return v >= rep.max_value - slack; }));
  rep.argmax.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    rep.argmax[i] = (std::popcount(combo[i] & best_z) & 1) ? -1 : 1;
  }
  return rep;
}

bool has_unique_sign_property(const SparsePolynomial& f, double tol) {
  return analyze_sign_patterns(f, tol).unique();
}

std::vector<int> sign_pattern(const SparsePolynomial& f, PointView x) {
  std::vector<int> out;
  out.reserve(f.sparsity());
  for (const auto& [s, c] : f.terms()) out.push_back(eval_parity(s, x) < 0 ? -1 : 1);
  return out;
}

}  // namespace boolsketch
