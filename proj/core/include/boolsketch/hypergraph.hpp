#pragma once

// Hypergraph cut-complement ("c-cut") queries and their sparse polynomial
// representation, plus the sketching learner that recovers a hypergraph from
// random c-cut samples.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boolsketch/fourier.hpp"
#include "boolsketch/rng.hpp"
#include "boolsketch/sampling.hpp"

namespace boolsketch {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;  // sorted, distinct, 0-based

/// Simple hypergraph without singleton edges.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(std::size_t n) : n_(n) {}
  /// Throws InvalidArgument on singleton/empty edges or out-of-range vertices;
  /// duplicate edges are merged.
  Hypergraph(std::size_t n, std::vector<Edge> edges);

  /// Adds an edge (vertices in any order). Returns false if already present.
  bool add_edge(Edge e);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t max_edge_size() const noexcept;
  /// Vertices that belong to at least one edge, ascending.
  std::vector<Vertex> relevant_vertices() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // kept sorted
};

/// Number of edges whose vertices all share one sign under x.
int c_cut_value(const Hypergraph& g, PointView x);

inline constexpr std::size_t kMaxExpansionEdge = 20;

/// Exact multilinear expansion: each edge I contributes 2^(1-|I|) chi_J for
/// every even-size J subset of I, J = {} included.
SparsePolynomial c_cut_polynomial(const Hypergraph& g);

/// R = X^T X over the +-1 rows of the window (n x n, integer).
Eigen::MatrixXi gram_matrix(const MaxWindow& window);

/// max_i |{ j : R(i,j) = max_j' R(i,j') }|; 1 for an empty matrix.
std::size_t estimate_d(const Eigen::MatrixXi& r, std::size_t n_max);

/// round(v 2^d) / 2^d, ties away from zero. d <= 30.
double round_to_grid(double v, int d);

struct GraphLearnConfig {
  std::size_t s = 1;                 // edge count (upper bound)
  std::optional<std::size_t> d_hint; // known max edge size
  double c = 8.0;                    // constant in the sample-size formula
  std::optional<std::size_t> m1;     // overrides the formula
  double m1_scale = 1.0;             // multiplies the formula (sample sweeps)
  std::size_t k_cap = 24;            // largest component handled
  double ambiguity = 0.1;            // reject estimates within this fraction of a grid midpoint
  std::size_t retries = 1;           // resampling rounds (doubled m1) on GridAmbiguous

  /// max(c 2^k d ln n, c 2^(2d+1) s^2 (ln n + k)) with k = s d, times m1_scale.
  std::size_t m1_for(std::size_t n, std::size_t d) const;
};

struct SketchDiagnostics {
  std::size_t n_max = 0;
  std::size_t m1 = 0;
  std::size_t attempts = 0;
  bool degenerate = false;                  // fewer than two max rows
  std::vector<std::vector<Vertex>> classes; // vertex groups with identical max-row columns
};

struct SketchResult {
  double c0 = 0.0;
  SparsePolynomial polynomial;  // constant plus parity coefficients
  Hypergraph edges;
  std::size_t d_est = 0;
  SketchDiagnostics diagnostics;
};

/// The learning stages on an already drawn batch. `d` fixes the grid and the
/// subset size bound; when absent it is estimated from the max rows.
SketchResult learn_graph_from_samples(const SampleBatch& batch, const GraphLearnConfig& config,
                                      std::optional<std::size_t> d = std::nullopt);

/// Draws samples from a c-cut oracle and runs the learner. Without a d hint,
/// a first pass sized for d = 2 estimates d and resamples if the estimate is
/// larger. Throws GridAmbiguous, ComponentTooLarge or the reconstruction
/// errors of edges_from_polynomial.
SketchResult learn_graph(const SampleOracle& oracle, const GraphLearnConfig& config, Rng& rng);

/// The unique singleton-free hypergraph with edges of size <= d whose c-cut
/// polynomial equals p. Components of the co-occurrence graph of p's support
/// are searched independently.
Hypergraph edges_from_polynomial(const SparsePolynomial& p, std::size_t d,
                                 std::size_t k_cap = 24);

}  // namespace boolsketch
