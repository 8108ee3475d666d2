#include "boolsketch/learners.hpp"

#include <cmath>
#include <limits>

#include "boolsketch/errors.hpp"

namespace boolsketch {

namespace {

std::size_t checked_pow2(std::size_t e) {
  if (e >= std::numeric_limits<std::size_t>::digits - 1) {
    throw InvalidArgument("sparsity too large for default sample counts");
  }
  return std::size_t{1} << e;
}

// Stream ids for Rng::split; identification rounds use 0, 1, ...
constexpr std::uint64_t kRecoveryStream = 1000;

LearnOutcome run(const SampleOracle& oracle, const LearnConfig& config, Rng& rng, bool noisy) {
  config.validate();
  const std::size_t n = oracle.dimension();
  LearnOutcome out;
  auto& diag = out.diagnostics;

  const std::size_t base_m1 = config.m1_for(n);
  for (std::size_t attempt = 0;; ++attempt) {
    const std::size_t m1 = base_m1 << attempt;
    Rng stream = rng.split(attempt);
    const auto batch = draw_batch(oracle, m1, stream);
    const auto window = noisy ? max_cluster(batch, config.epsilon, config.nu)
                              : collect_max_rows(batch);
    diag.attempts = attempt + 1;
    diag.m1_used = m1;
    diag.n_max = window.n_max();
    diag.eta = window.eta;
    diag.rank_y = gf2::rank(window.rows);
    try {
      out.candidates = candidate_support(window, config.cap_value());
      break;
    } catch (const SolutionCountExceeded& e) {
      if (attempt >= config.retries) throw LearnFailed("candidate_support", e.what());
    }
  }

  const std::size_t m = config.m_for(n);
  Rng stream = rng.split(kRecoveryStream);
  const auto fresh = draw_batch(oracle, m, stream);
  const auto design = build_design(fresh, out.candidates);
  RecoveryResult rec;
  try {
    rec = noisy ? bpdn(design, fresh.values(), config.epsilon + config.nu)
                : basis_pursuit(design, fresh.values());
  } catch (const Infeasible& e) {
    throw LearnFailed("recovery", e.what());
  }
  diag.m_used = m;
  diag.solver = rec.method;
  diag.objective = rec.objective;
  diag.residual = rec.residual;
  out.beta = rec.beta;
  out.v_opt = SparsePolynomial(n);
  const double threshold = noisy ? 0.0 : config.beta_threshold;
  for (std::size_t j = 0; j < rec.beta.size(); ++j) {
    if (std::abs(rec.beta[j]) > threshold) out.v_opt.set(out.candidates[j], rec.beta[j]);
  }
  return out;
}

}  // namespace

std::size_t LearnConfig::m1_for(std::size_t n) const {
  return m1.value_or(2 * n * checked_pow2(s));
}

std::size_t LearnConfig::m_for(std::size_t n) const {
  return m.value_or(4096 * n * s * s);
}

std::uint64_t LearnConfig::cap_value() const {
  return cap.value_or(static_cast<std::uint64_t>(checked_pow2(s + 2)));
}

void LearnConfig::validate() const {
  if (s < 1) throw InvalidArgument("LearnConfig: s must be >= 1");
  if (m1 && *m1 < 1) throw InvalidArgument("LearnConfig: m1 must be >= 1");
  if (m && *m < 1) throw InvalidArgument("LearnConfig: m must be >= 1");
  if (cap && *cap < 1) throw InvalidArgument("LearnConfig: cap must be >= 1");
  if (!(epsilon >= 0.0) || !(nu >= 0.0)) {
    throw InvalidArgument("LearnConfig: epsilon and nu must be non-negative");
  }
}

CandidateSet candidate_support(const MaxWindow& window, std::uint64_t cap) {
  if (window.n_max() == 0) throw InvalidArgument("candidate_support: empty window");
  const std::size_t rows = window.n_max();
  gf2::BitVector ones(rows);
  for (std::size_t i = 0; i < rows; ++i) ones.set(i);
  const gf2::BitVector zeros(rows);

  auto from_one = gf2::solve_affine_all(window.rows, ones, cap);
  auto from_zero = gf2::solve_affine_all(window.rows, zeros, cap);
  std::vector<ParitySet> sets;
  sets.reserve(from_one.size() + from_zero.size());
  for (auto& p : from_one) sets.emplace_back(std::move(p));
  for (auto& p : from_zero) sets.emplace_back(std::move(p));
  return CandidateSet(std::move(sets));
}

LearnOutcome learn_bool(const SampleOracle& oracle, const LearnConfig& config, Rng& rng) {
  return run(oracle, config, rng, false);
}

LearnOutcome learn_bool_noisy(const SampleOracle& oracle, const LearnConfig& config, Rng& rng) {
  return run(oracle, config, rng, config.epsilon + config.nu > 0.0);
}

}  // namespace boolsketch
