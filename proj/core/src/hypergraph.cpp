#include "boolsketch/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "boolsketch/errors.hpp"
#include "column_classes.hpp"

namespace boolsketch {

Hypergraph::Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) add_edge(std::move(e));
}

bool Hypergraph::add_edge(Edge e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  if (e.size() < 2) throw InvalidArgument("Hypergraph: edges need at least two vertices");
  if (e.back() >= n_) throw InvalidArgument("Hypergraph: vertex out of range");
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, std::move(e));
  return true;
}

std::size_t Hypergraph::max_edge_size() const noexcept {
  std::size_t d = 0;
  for (const auto& e : edges_) d = std::max(d, e.size());
  return d;
}

std::vector<Vertex> Hypergraph::relevant_vertices() const {
  std::vector<Vertex> out;
  for (const auto& e : edges_) out.insert(out.end(), e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int c_cut_value(const Hypergraph& g, PointView x) {
  if (x.n != g.vertex_count()) throw DimensionMismatch("c_cut_value: dimension mismatch");
  int count = 0;
  for (const auto& e : g.edges()) {
    const int first = x.sign(e.front());
    bool mono = true;
    for (std::size_t i = 1; i < e.size() && mono; ++i) mono = x.sign(e[i]) == first;
    count += mono ? 1 : 0;
  }
  return count;
}

SparsePolynomial c_cut_polynomial(const Hypergraph& g) {
  const std::size_t n = g.vertex_count();
  SparsePolynomial f(n);
  for (const auto& e : g.edges()) {
    if (e.size() > kMaxExpansionEdge) {
      throw InvalidArgument("c_cut_polynomial: edge larger than 20 vertices");
    }
    const double weight = std::ldexp(1.0, 1 - static_cast<int>(e.size()));
    const std::uint32_t subsets = std::uint32_t{1} << e.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      gf2::BitVector bits(n);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if ((mask >> i) & 1u) bits.set(e[i]);
      }
      f.add(ParitySet(std::move(bits)), weight);
    }
  }
  return f;
}

Eigen::MatrixXi gram_matrix(const MaxWindow& window) {
  const auto cols = detail::transpose_columns(window.rows);
  const auto n = static_cast<Eigen::Index>(window.dimension());
  const int n_max = static_cast<int>(window.n_max());
  Eigen::MatrixXi r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      int differ = 0;
      const auto& a = cols[static_cast<std::size_t>(i)];
      const auto& b = cols[static_cast<std::size_t>(j)];
      for (std::size_t w = 0; w < a.size(); ++w) differ += std::popcount(a[w] ^ b[w]);
      r(i, j) = r(j, i) = n_max - 2 * differ;
    }
  }
  return r;
}

std::size_t estimate_d(const Eigen::MatrixXi& r, std::size_t n_max) {
  if (r.size() == 0 || n_max == 0) return 1;
  std::size_t best = 1;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const int top = r.row(i).maxCoeff();
    best = std::max(best, static_cast<std::size_t>((r.row(i).array() == top).count()));
  }
  return best;
}

double round_to_grid(double v, int d) {
  if (d < 0 || d > 30) throw InvalidArgument("round_to_grid: d must be in [0, 30]");
  return std::ldexp(std::round(std::ldexp(v, d)), -d);
}

}  // namespace boolsketch
