#pragma once

// Support identification from maximum-value samples followed by L1 recovery
// restricted to the identified candidates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "boolsketch/fourier.hpp"
#include "boolsketch/recovery.hpp"
#include "boolsketch/rng.hpp"
#include "boolsketch/sampling.hpp"

namespace boolsketch {

struct LearnConfig {
  std::size_t s = 1;                  // sparsity bound
  std::optional<std::size_t> m1;      // identification samples, default 2 n 2^s
  std::optional<std::size_t> m;       // recovery samples, default 4096 n s^2
  std::optional<std::uint64_t> cap;   // per-system solution cap, default 2^(s+2)
  double epsilon = 0.0;               // noise bound (noisy learner only)
  double nu = 0.0;                    // tail L1 bound (noisy learner only)
  double beta_threshold = 1e-7;       // noiseless learner drops |beta| <= this
  std::size_t retries = 1;            // extra identification rounds, m1 doubled each time

  std::size_t m1_for(std::size_t n) const;
  std::size_t m_for(std::size_t n) const;
  std::uint64_t cap_value() const;
  /// Throws InvalidArgument on s = 0, m1 = 0 or m = 0.
  void validate() const;
};

struct LearnDiagnostics {
  std::size_t n_max = 0;          // rows in the max window
  std::size_t rank_y = 0;         // F_2 rank of q(X_max)
  double eta = 0.0;               // maximum observed value
  std::size_t m1_used = 0;        // identification samples in the successful round
  std::size_t m_used = 0;         // recovery samples
  std::size_t attempts = 0;       // identification rounds run
  std::string solver;             // recovery method tag
  double objective = 0.0;
  double residual = 0.0;
};

struct LearnOutcome {
  SparsePolynomial v_opt;
  CandidateSet candidates;
  std::vector<double> beta;       // raw recovered vector, aligned with candidates
  LearnDiagnostics diagnostics;
};

/// All p with q(X_max) p = 1 plus all p with q(X_max) p = 0. The empty set
/// always solves the second system. Throws SolutionCountExceeded when either
/// system has more than `cap` solutions.
CandidateSet candidate_support(const MaxWindow& window, std::uint64_t cap);

/// Noiseless learner: exact max grouping and equality-constrained recovery.
/// Throws LearnFailed with stage "candidate_support" or "recovery".
LearnOutcome learn_bool(const SampleOracle& oracle, const LearnConfig& config, Rng& rng);

/// Noisy learner: max clustering with radius 2 (epsilon + nu) and recovery
/// with residual bound epsilon + nu. Coefficients are not thresholded.
/// With epsilon + nu = 0 this is learn_bool.
LearnOutcome learn_bool_noisy(const SampleOracle& oracle, const LearnConfig& config, Rng& rng);

}  // namespace boolsketch
