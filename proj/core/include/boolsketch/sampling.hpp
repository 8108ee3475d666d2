#pragma once

// Uniform sampling of the cube, labeled-sample oracles and max-value windows.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "boolsketch/fourier.hpp"
#include "boolsketch/gf2.hpp"
#include "boolsketch/rng.hpp"

namespace boolsketch {

/// Contiguous store of labeled samples; points are kept in F_2 encoding.
class SampleBatch {
 public:
  SampleBatch() = default;
  explicit SampleBatch(std::size_t n) : n_(n), words_(gf2::words_for(n)) {}

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  void reserve(std::size_t m) {
    bits_.reserve(m * words_);
    values_.reserve(m);
  }
  void push_back(PointView x, double value);

  PointView point(std::size_t i) const noexcept {
    return {std::span(bits_).subspan(i * words_, words_), n_};
  }
  double value(std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  LabeledSample sample(std::size_t i) const;

  friend bool operator==(const SampleBatch&, const SampleBatch&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<gf2::Word> bits_;
  std::vector<double> values_;
};

/// Source of labeled samples at uniformly random points. Implementations are
/// immutable; randomness (points and noise) comes from the caller's Rng.
class SampleOracle {
 public:
  virtual ~SampleOracle() = default;
  virtual std::size_t dimension() const = 0;
  /// Observed value at x.
  virtual double observe(PointView x, Rng& rng) const = 0;

  LabeledSample draw(Rng& rng) const;
};

/// Uniform point of {-1,+1}^n.
InputPoint uniform_point(std::size_t n, Rng& rng);

/// Exact values of a fixed polynomial.
class PolynomialOracle : public SampleOracle {
 public:
  explicit PolynomialOracle(SparsePolynomial f) : f_(std::move(f)) {}
  std::size_t dimension() const override { return f_.dimension(); }
  double observe(PointView x, Rng&) const override { return eval_poly(f_, x); }
  const SparsePolynomial& polynomial() const noexcept { return f_; }

 private:
  SparsePolynomial f_;
};

/// Exact values of an arbitrary function of the point.
class FunctionOracle : public SampleOracle {
 public:
  FunctionOracle(std::size_t n, std::function<double(PointView)> fn)
      : n_(n), fn_(std::move(fn)) {}
  std::size_t dimension() const override { return n_; }
  double observe(PointView x, Rng&) const override { return fn_(x); }

 private:
  std::size_t n_;
  std::function<double(PointView)> fn_;
};

/// Observation noise and approximate-sparsity tail.
struct NoiseSpec {
  double epsilon = 0.0;  // |noise| <= epsilon
  double nu = 0.0;       // L1 bound on the tail, strict
  std::optional<SparsePolynomial> tail;

  double radius() const noexcept { return epsilon + nu; }
  /// Throws InvalidArgument unless epsilon, nu >= 0, ||tail||_1 < nu (when a
  /// tail is present) and the tail shares no parity set with `main`.
  void validate(const SparsePolynomial& main) const;
};

/// Chooses the additive noise at x given the clean value. The result is
/// clamped to [-epsilon, epsilon].
using NoiseHook = std::function<double(PointView x, double clean, double epsilon, Rng& rng)>;

/// f1(x) + tail(x) + noise, noise uniform on [-epsilon, epsilon] unless a
/// hook is installed.
class NoisyPolynomialOracle : public SampleOracle {
 public:
  NoisyPolynomialOracle(SparsePolynomial main, NoiseSpec noise, NoiseHook hook = {});
  std::size_t dimension() const override { return main_.dimension(); }
  double observe(PointView x, Rng& rng) const override;

  const SparsePolynomial& main() const noexcept { return main_; }
  const NoiseSpec& noise() const noexcept { return noise_; }
  /// main + tail: every Fourier coefficient of the noiseless function.
  SparsePolynomial full_polynomial() const;

 private:
  SparsePolynomial main_;
  NoiseSpec noise_;
  NoiseHook hook_;
};

/// m i.i.d. samples from `oracle`; m >= 1.
SampleBatch draw_batch(const SampleOracle& oracle, std::size_t m, Rng& rng);
/// Same as above with a fresh Rng(seed); identical seeds give identical batches.
SampleBatch draw_batch(const SampleOracle& oracle, std::size_t m, std::uint64_t seed);

/// Inputs whose observed value attains (or clusters around) the maximum.
struct MaxWindow {
  gf2::BitMatrix rows;           // q(X_max), n_max x n
  std::vector<double> values;    // observed value per row
  std::vector<std::size_t> source;  // row index in the originating batch
  double eta = 0.0;              // maximum observed value

  std::size_t n_max() const noexcept { return rows.rows(); }
  std::size_t dimension() const noexcept { return rows.cols(); }
  SignMatrix sign_matrix() const { return q_inv(rows); }
  PointView point(std::size_t i) const noexcept { return {rows.row(i), rows.cols()}; }
};

/// Every row whose value equals the batch maximum exactly.
MaxWindow collect_max_rows(const SampleBatch& batch);

/// Every row with value >= eta - 2 (epsilon + nu), eta the batch maximum.
MaxWindow max_cluster(const SampleBatch& batch, double epsilon, double nu);

/// CSV with header x1..xn,value; one row per sample, signs written as +1/-1
/// and values with round-trip precision.
void write_csv(std::ostream& out, const SampleBatch& batch);
SampleBatch read_csv(std::istream& in);

}  // namespace boolsketch
