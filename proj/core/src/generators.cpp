#include "boolsketch/generators.hpp"

#include <algorithm>

#include "boolsketch/errors.hpp"

namespace boolsketch {

Condition parse_condition(const std::string& name) {
  if (name == "perturbed") return Condition::kPerturbed;
  if (name == "independent") return Condition::kIndependent;
  if (name == "positive") return Condition::kPositive;
  throw InvalidArgument("unknown condition '" + name + "'");
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kPerturbed: return "perturbed";
    case Condition::kIndependent: return "independent";
    case Condition::kPositive: return "positive";
  }
  return "unknown";
}

ParitySet random_parity(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("random_parity: n must be positive");
  while (true) {
    gf2::BitVector bits(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.next_bool()) bits.set(i);
    }
    if (!bits.is_zero()) return ParitySet(std::move(bits));
  }
}

SparsePolynomial plant_polynomial(std::size_t n, std::size_t s, Condition condition, Rng& rng,
                                  const PlantOptions& options) {
  if (s == 0) throw InvalidArgument("plant_polynomial: s must be positive");
  if (condition == Condition::kIndependent ? s > n : n < 63 && s >= (std::size_t{1} << n)) {
    throw InvalidArgument("plant_polynomial: too many parities for n");
  }
  std::vector<ParitySet> sets;
  std::vector<gf2::BitVector> vectors;
  while (sets.size() < s) {
    auto p = random_parity(n, rng);
    if (std::find(sets.begin(), sets.end(), p) != sets.end()) continue;
    if (condition == Condition::kIndependent) {
      vectors.push_back(p.bits());
      if (!gf2::linearly_independent(vectors)) {
        vectors.pop_back();
        continue;
      }
    }
    sets.push_back(std::move(p));
  }
  SparsePolynomial f(n);
  for (const auto& p : sets) {
    double c = options.min_magnitude + options.spread * rng.next_double();
    if (condition != Condition::kPositive && rng.next_bool()) c = -c;
    if (condition == Condition::kPerturbed) c += options.sigma * rng.normal();
    f.set(p, c);
  }
  return f;
}

Hypergraph random_hypergraph(std::size_t n, std::size_t s, std::size_t d, Rng& rng) {
  if (d < 2 || d > n) throw InvalidArgument("random_hypergraph: d must be in [2, n]");
  Hypergraph g(n);
  std::size_t guard = 0;
  while (g.edge_count() < s) {
    if (++guard > 1000 * (s + 1)) throw InvalidArgument("random_hypergraph: too many edges for n");
    const std::size_t size = 2 + static_cast<std::size_t>(rng.below(d - 1));
    Edge e;
    while (e.size() < size) {
      const auto v = static_cast<Vertex>(rng.below(n));
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    g.add_edge(std::move(e));
  }
  return g;
}

}  // namespace boolsketch
