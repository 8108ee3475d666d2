#pragma once

// L1 recovery restricted to a candidate family of parities.
//
//   basis_pursuit:  min ||b||_1  s.t.  A b = y
//   bpdn:           min ||b||_1  s.t.  sqrt(1/m) ||A b - y||_2 <= delta

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boolsketch/fourier.hpp"
#include "boolsketch/sampling.hpp"

namespace boolsketch {

/// Distinct parity sets in canonical order.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<ParitySet> sets);

  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  const ParitySet& operator[](std::size_t i) const { return sets_[i]; }
  auto begin() const noexcept { return sets_.begin(); }
  auto end() const noexcept { return sets_.end(); }
  const std::vector<ParitySet>& sets() const noexcept { return sets_; }

  bool contains(const ParitySet& s) const;
  /// Position of s, or size() when absent.
  std::size_t index_of(const ParitySet& s) const;

 private:
  std::vector<ParitySet> sets_;
};

/// m x |S| matrix of parity values chi_{S[j]}(x_i).
struct DesignMatrix {
  Eigen::MatrixXd a;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(a.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(a.cols()); }
};

DesignMatrix build_design(const SampleBatch& samples, const CandidateSet& candidates);

enum class RecoveryStatus { kOptimal, kInfeasible };

struct RecoveryResult {
  std::vector<double> beta;   // aligned with the candidate set
  double objective = 0.0;     // ||beta||_1
  double residual = 0.0;      // sqrt(1/m) ||A beta - y||_2
  double tolerance = 0.0;     // feasibility bound the residual was checked against
  RecoveryStatus status = RecoveryStatus::kOptimal;
  std::string method;         // "qr", "simplex", "zero", "homotopy"
};

/// Throws Infeasible when y is not in the column span of A (up to
/// 1e-8 (1 + ||y||_2) in Euclidean distance).
RecoveryResult basis_pursuit(const DesignMatrix& a, std::span<const double> y);

/// Throws Infeasible when no beta meets the constraint. delta = 0 defers to
/// basis_pursuit.
RecoveryResult bpdn(const DesignMatrix& a, std::span<const double> y, double delta);

/// Sparse polynomial from recovered coefficients, dropping |beta_j| <= threshold.
SparsePolynomial to_polynomial(const CandidateSet& candidates, std::span<const double> beta,
                               double threshold);

}  // namespace boolsketch
