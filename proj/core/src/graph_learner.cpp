#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "boolsketch/errors.hpp"
#include "boolsketch/hypergraph.hpp"
#include "column_classes.hpp"

namespace boolsketch {

namespace {

constexpr std::size_t kMaxSamples = std::size_t{1} << 26;
constexpr std::size_t kHistogramBits = 16;

// Grid-rounded estimate; throws GridAmbiguous near a midpoint.
double snap(double estimate, std::size_t d, double ambiguity, const std::string& what) {
  const double scaled = std::ldexp(estimate, static_cast<int>(d));
  const double frac = std::abs(scaled - std::round(scaled));
  if (frac > 0.5 - ambiguity) {
    throw GridAmbiguous(what + " estimate " + std::to_string(estimate) +
                        " is too close to a grid midpoint");
  }
  return round_to_grid(estimate, static_cast<int>(d));
}

// Even subsets of {0..k-1} with 2 <= size <= max_size, as bit masks.
std::vector<std::uint32_t> even_masks(std::size_t k, std::size_t max_size) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = std::uint32_t{1} << k;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const auto bits = static_cast<std::size_t>(std::popcount(mask));
    if (bits >= 2 && bits % 2 == 0 && bits <= max_size) out.push_back(mask);
  }
  return out;
}

// Empirical (1/m) sum_i (f_i - c0) chi_M(x_i) for every mask over the class.
std::vector<double> correlations(const SampleBatch& batch, const std::vector<Vertex>& cls,
                                 const std::vector<std::uint32_t>& masks, double c0) {
  const std::size_t m = batch.size();
  const std::size_t k = cls.size();
  std::vector<std::uint32_t> local(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto p = batch.point(i);
    std::uint32_t bits = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (p.sign(cls[t]) < 0) bits |= std::uint32_t{1} << t;
    }
    local[i] = bits;
  }
  std::vector<double> out(masks.size(), 0.0);
  if (k <= kHistogramBits) {
    // Sum of (f - c0) per local pattern, then a Walsh-Hadamard pass.
    std::vector<double> hist(std::size_t{1} << k, 0.0);
    for (std::size_t i = 0; i < m; ++i) hist[local[i]] += batch.value(i) - c0;
    for (std::size_t len = 1; len < hist.size(); len <<= 1) {
      for (std::size_t i = 0; i < hist.size(); i += len << 1) {
        for (std::size_t j = i; j < i + len; ++j) {
          const double a = hist[j];
          const double b = hist[j + len];
          hist[j] = a + b;
          hist[j + len] = a - b;
        }
      }
    }
    for (std::size_t q = 0; q < masks.size(); ++q) {
      out[q] = hist[masks[q]] / static_cast<double>(m);
    }
    return out;
  }
  for (std::size_t q = 0; q < masks.size(); ++q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double centered = batch.value(i) - c0;
      acc += (std::popcount(local[i] & masks[q]) & 1) ? -centered : centered;
    }
    out[q] = acc / static_cast<double>(m);
  }
  return out;
}

std::size_t largest_class(const std::vector<std::vector<Vertex>>& classes) {
  std::size_t d = 1;
  for (const auto& c : classes) d = std::max(d, c.size());
  return d;
}

}  // namespace

std::size_t GraphLearnConfig::m1_for(std::size_t n, std::size_t d) const {
  if (m1) return *m1;
  const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double k = static_cast<double>(s * d);
  const double dd = static_cast<double>(d);
  const double ss = static_cast<double>(s);
  const double first = c * std::exp2(k) * dd * log_n;
  const double second = c * std::exp2(2.0 * dd + 1.0) * ss * ss * (log_n + k);
  const double want = std::ceil(std::max(first, second) * m1_scale);
  if (!(want <= static_cast<double>(kMaxSamples))) {
    throw InvalidArgument("learn_graph: sample count " + std::to_string(want) +
                          " exceeds the supported maximum");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(want));
}

SketchResult learn_graph_from_samples(const SampleBatch& batch, const GraphLearnConfig& config,
                                      std::optional<std::size_t> d) {
  if (batch.empty()) throw InvalidArgument("learn_graph: empty batch");
  const std::size_t n = batch.dimension();
  SketchResult out;
  auto& diag = out.diagnostics;
  diag.m1 = batch.size();

  const auto window = collect_max_rows(batch);
  diag.n_max = window.n_max();
  diag.degenerate = window.n_max() < 2;
  for (auto& cls : detail::identical_column_classes(window.rows)) {
    diag.classes.emplace_back(cls.begin(), cls.end());
  }
  out.d_est = d.value_or(largest_class(diag.classes));
  if (out.d_est > 30) throw ComponentTooLarge("learn_graph: edge size estimate above 30");

  double mean = 0.0;
  for (double v : batch.values()) mean += v;
  mean /= static_cast<double>(batch.size());
  out.c0 = snap(mean, out.d_est, config.ambiguity, "constant");

  out.polynomial = SparsePolynomial(n);
  out.polynomial.set(ParitySet::empty(n), out.c0);
  for (const auto& cls : diag.classes) {
    if (cls.size() > config.k_cap) {
      throw ComponentTooLarge("learn_graph: a vertex class has " + std::to_string(cls.size()) +
                              " members, cap is " + std::to_string(config.k_cap));
    }
    const auto masks = even_masks(cls.size(), out.d_est);
    const auto corr = correlations(batch, cls, masks, out.c0);
    for (std::size_t q = 0; q < masks.size(); ++q) {
      const double coeff = snap(corr[q], out.d_est, config.ambiguity, "parity");
      if (coeff == 0.0) continue;
      gf2::BitVector bits(n);
      for (std::size_t t = 0; t < cls.size(); ++t) {
        if ((masks[q] >> t) & 1u) bits.set(cls[t]);
      }
      out.polynomial.set(ParitySet(std::move(bits)), coeff);
    }
  }
  out.edges = edges_from_polynomial(out.polynomial, std::max<std::size_t>(out.d_est, 2),
                                    config.k_cap);
  return out;
}

SketchResult learn_graph(const SampleOracle& oracle, const GraphLearnConfig& config, Rng& rng) {
  const std::size_t n = oracle.dimension();
  if (config.s == 0) {
    SketchResult empty;
    empty.polynomial = SparsePolynomial(n);
    empty.edges = Hypergraph(n);
    empty.d_est = 1;
    return empty;
  }

  std::size_t d = config.d_hint.value_or(2);
  std::uint64_t stream = 0;
  std::size_t attempts = 0;
  // Pilot rounds: size the batch for the current d guess until the estimate
  // from the max rows does not exceed it.
  while (true) {
    for (std::size_t retry = 0;; ++retry) {
      const std::size_t m1 = config.m1_for(n, d) << retry;
      Rng sub = rng.split(stream++);
      const auto batch = draw_batch(oracle, m1, sub);
      ++attempts;
      if (!config.d_hint) {
        const auto window = collect_max_rows(batch);
        std::vector<std::vector<Vertex>> classes;
        for (auto& c : detail::identical_column_classes(window.rows)) {
          classes.emplace_back(c.begin(), c.end());
        }
        const std::size_t estimate = largest_class(classes);
        if (estimate > d) {
          if (estimate > config.k_cap) {
            throw ComponentTooLarge("learn_graph: estimated component of size " +
                                    std::to_string(estimate));
          }
          d = estimate;
          break;  // resample for the larger d
        }
      }
      try {
        auto result = learn_graph_from_samples(batch, config, config.d_hint);
        result.diagnostics.attempts = attempts;
        return result;
      } catch (const GridAmbiguous&) {
        if (retry >= config.retries) throw;
      }
    }
  }
}

}  // namespace boolsketch
