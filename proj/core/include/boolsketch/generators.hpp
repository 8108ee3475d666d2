#pragma once

// Seeded random instances: planted sparse polynomials and hypergraphs.

#include <cstddef>
#include <string>

#include "boolsketch/fourier.hpp"
#include "boolsketch/hypergraph.hpp"
#include "boolsketch/rng.hpp"

namespace boolsketch {

enum class Condition {
  kPerturbed,    // arbitrary parities, coefficients with a small Gaussian perturbation
  kIndependent,  // F_2-independent parities, coefficients of either sign
  kPositive,     // arbitrary parities, positive coefficients
};

Condition parse_condition(const std::string& name);
std::string to_string(Condition c);

struct PlantOptions {
  double min_magnitude = 0.5;  // coefficient magnitudes are drawn from [min, min + spread]
  double spread = 1.0;
  double sigma = 0.05;         // perturbation scale for kPerturbed
};

/// A uniformly random nonempty parity set.
ParitySet random_parity(std::size_t n, Rng& rng);

/// s distinct non-constant parities with coefficients according to the condition.
SparsePolynomial plant_polynomial(std::size_t n, std::size_t s, Condition condition, Rng& rng,
                                  const PlantOptions& options = {});

/// s distinct edges with sizes uniform in [2, d].
Hypergraph random_hypergraph(std::size_t n, std::size_t s, std::size_t d, Rng& rng);

}  // namespace boolsketch
