#include "boolsketch/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "boolsketch/errors.hpp"
#include "lp_simplex.hpp"

namespace boolsketch {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// A P = Q R reduced to the independent part: ||A b - y||^2 = ||C b - g||^2 + tail^2
// for every b, with C = R_top P^T of full row rank.
struct ReducedSystem {
  Index rank = 0;
  MatrixXd c;
  VectorXd g;
  double tail = 0.0;  // distance from y to the column span of A
  Eigen::ColPivHouseholderQR<MatrixXd> qr;
};

ReducedSystem reduce(const MatrixXd& a, const VectorXd& y) {
  ReducedSystem rs;
  rs.qr.setThreshold(1e-10);
  rs.qr.compute(a);
  rs.rank = rs.qr.rank();
  const VectorXd qty = rs.qr.householderQ().adjoint() * y;
  rs.g = qty.head(rs.rank);
  rs.tail = qty.tail(qty.size() - rs.rank).norm();
  const MatrixXd r_top = rs.qr.matrixR().topRows(rs.rank).triangularView<Eigen::Upper>();
  rs.c = r_top * rs.qr.colsPermutation().transpose();
  return rs;
}

VectorXd as_vector(std::span<const double> y) {
  return Eigen::Map<const VectorXd>(y.data(), static_cast<Index>(y.size()));
}

void check_inputs(const DesignMatrix& a, std::span<const double> y) {
  if (a.rows() < 1) throw InvalidArgument("recovery needs at least one sample row");
  if (a.cols() < 1) throw InvalidArgument("recovery needs a nonempty candidate set");
  if (y.size() != a.rows()) throw DimensionMismatch("recovery: y length != rows of A");
}

RecoveryResult finish(const DesignMatrix& a, const VectorXd& y, const VectorXd& beta,
                      double tolerance, std::string method) {
  RecoveryResult r;
  r.beta.assign(beta.data(), beta.data() + beta.size());
  r.objective = beta.lpNorm<1>();
  r.residual = (a.a * beta - y).norm() / std::sqrt(static_cast<double>(a.rows()));
  r.tolerance = tolerance;
  r.status = RecoveryStatus::kOptimal;
  r.method = std::move(method);
  return r;
}

// Re-solve on the support found by the LP against the original rows, which
// removes the rounding accumulated in the tableau.
VectorXd polish(const MatrixXd& a, const VectorXd& y, const VectorXd& beta, double support_tol) {
  std::vector<Index> support;
  for (Index j = 0; j < beta.size(); ++j) {
    if (std::abs(beta(j)) > support_tol) support.push_back(j);
  }
  if (support.empty()) return VectorXd::Zero(beta.size());
  MatrixXd sub(a.rows(), static_cast<Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(support[k]);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(sub);
  if (qr.rank() < static_cast<Index>(support.size())) return beta;
  const VectorXd sol = qr.solve(y);
  VectorXd out = VectorXd::Zero(beta.size());
  for (std::size_t k = 0; k < support.size(); ++k) out(support[k]) = sol(static_cast<Index>(k));
  return out;
}

VectorXd min_l1_on_affine(const MatrixXd& c, const VectorXd& g) {
  const Index k = c.cols();
  MatrixXd split(c.rows(), 2 * k);
  split << c, -c;
  const VectorXd cost = VectorXd::Ones(2 * k);
  auto lp = detail::solve_standard_lp(split, g, cost);
  if (lp.status != detail::LpStatus::kOptimal) {
    throw Infeasible("basis pursuit: reduced linear program has no optimum");
  }
  return lp.x.head(k) - lp.x.tail(k);
}

// LASSO homotopy on min ||b||_1 s.t. ||C b - g||_2 <= target, C of full row
// rank. Follows the piecewise-linear path from lambda = ||C^T g||_inf down to
// the point where the residual norm reaches target.
VectorXd homotopy(const MatrixXd& c, const VectorXd& g, double target) {
  const Index k = c.cols();
  VectorXd beta = VectorXd::Zero(k);
  if (g.norm() <= target) return beta;

  VectorXd corr = c.transpose() * g;
  Index first;
  double lambda = corr.cwiseAbs().maxCoeff(&first);
  std::vector<Index> active{first};
  std::vector<char> in_active(static_cast<std::size_t>(k), 0);
  in_active[static_cast<std::size_t>(first)] = 1;
  const double tiny = 1e-13 * std::max(1.0, lambda);

  const Index max_steps = 20 * k + 100;
  for (Index step = 0; step < max_steps; ++step) {
    const Index na = static_cast<Index>(active.size());
    MatrixXd ca(c.rows(), na);
    VectorXd z(na);
    for (Index i = 0; i < na; ++i) {
      ca.col(i) = c.col(active[static_cast<std::size_t>(i)]);
      z(i) = corr(active[static_cast<std::size_t>(i)]) >= 0 ? 1.0 : -1.0;
    }
    const MatrixXd gram = ca.transpose() * ca;
    const VectorXd d_active = gram.completeOrthogonalDecomposition().solve(z);
    const VectorXd u = ca * d_active;
    const VectorXd a = c.transpose() * u;
    const VectorXd resid = g - c * beta;

    double gamma = lambda;
    Index joiner = -1;
    Index leaver = -1;
    for (Index j = 0; j < k; ++j) {
      if (in_active[static_cast<std::size_t>(j)]) continue;
      for (double cand : {(lambda - corr(j)) / (1.0 - a(j)), (lambda + corr(j)) / (1.0 + a(j))}) {
        if (std::isfinite(cand) && cand > tiny && cand < gamma) {
          gamma = cand;
          joiner = j;
        }
      }
    }
    for (Index i = 0; i < na; ++i) {
      const Index j = active[static_cast<std::size_t>(i)];
      if (d_active(i) == 0.0) continue;
      const double cand = -beta(j) / d_active(i);
      if (cand > tiny && cand < gamma) {
        gamma = cand;
        joiner = -1;
        leaver = i;
      }
    }

    // Residual along the segment: ||resid - t u||^2, decreasing in t.
    const double uu = u.squaredNorm();
    const double ru = resid.dot(u);
    const double rr = resid.squaredNorm();
    const double disc = ru * ru - uu * (rr - target * target);
    if (uu > 0.0 && disc >= 0.0) {
      const double t = (ru - std::sqrt(disc)) / uu;
      if (t <= gamma) {
        const double tt = std::max(t, 0.0);
        for (Index i = 0; i < na; ++i) beta(active[static_cast<std::size_t>(i)]) += tt * d_active(i);
        return beta;
      }
    }

    for (Index i = 0; i < na; ++i) beta(active[static_cast<std::size_t>(i)]) += gamma * d_active(i);
    corr -= gamma * a;
    lambda -= gamma;
    if (lambda <= tiny) return beta;
    if (joiner >= 0) {
      active.push_back(joiner);
      in_active[static_cast<std::size_t>(joiner)] = 1;
    } else if (leaver >= 0) {
      const Index j = active[static_cast<std::size_t>(leaver)];
      beta(j) = 0.0;
      in_active[static_cast<std::size_t>(j)] = 0;
      active.erase(active.begin() + leaver);
    }
  }
  throw Error("bpdn: homotopy did not terminate");
}

}  // namespace

CandidateSet::CandidateSet(std::vector<ParitySet> sets) : sets_(std::move(sets)) {
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

bool CandidateSet::contains(const ParitySet& s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

std::size_t CandidateSet::index_of(const ParitySet& s) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  return (it != sets_.end() && *it == s) ? static_cast<std::size_t>(it - sets_.begin())
                                         : sets_.size();
}

DesignMatrix build_design(const SampleBatch& samples, const CandidateSet& candidates) {
  for (const auto& s : candidates) {
    if (s.dimension() != samples.dimension()) {
      throw DimensionMismatch("build_design: candidate dimension differs from samples");
    }
  }
  DesignMatrix d{MatrixXd(static_cast<Index>(samples.size()), static_cast<Index>(candidates.size()))};
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const auto words = candidates[j].bits().words();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      d.a(static_cast<Index>(i), static_cast<Index>(j)) =
          gf2::parity_of_and(words, samples.point(i).neg) ? -1.0 : 1.0;
    }
  }
  return d;
}

RecoveryResult basis_pursuit(const DesignMatrix& a, std::span<const double> y_in) {
  check_inputs(a, y_in);
  const VectorXd y = as_vector(y_in);
  const double tol = 1e-8 * (1.0 + y.norm());
  auto rs = reduce(a.a, y);
  if (rs.tail > tol) {
    throw Infeasible("basis pursuit: observations are not in the span of the candidate columns");
  }
  const double scaled_tol = tol / std::sqrt(static_cast<double>(a.rows()));
  if (rs.rank == a.a.cols()) {
    return finish(a, y, rs.qr.solve(y), scaled_tol, "qr");
  }
  if (rs.rank == 0) return finish(a, y, VectorXd::Zero(a.a.cols()), scaled_tol, "zero");
  const VectorXd raw = min_l1_on_affine(rs.c, rs.g);
  VectorXd beta = polish(a.a, y, raw, 1e-12 * std::max(1.0, raw.lpNorm<Eigen::Infinity>()));
  if ((a.a * beta - y).norm() > (a.a * raw - y).norm() + tol) beta = raw;
  return finish(a, y, beta, scaled_tol, "simplex");
}

RecoveryResult bpdn(const DesignMatrix& a, std::span<const double> y_in, double delta) {
  check_inputs(a, y_in);
  if (!(delta >= 0.0)) throw InvalidArgument("bpdn: delta must be non-negative");
  if (delta == 0.0) return basis_pursuit(a, y_in);

  const VectorXd y = as_vector(y_in);
  const double sqrt_m = std::sqrt(static_cast<double>(a.rows()));
  const double sigma = delta * sqrt_m;
  auto rs = reduce(a.a, y);
  if (rs.tail > sigma * (1.0 + 1e-6)) {
    throw Infeasible("bpdn: delta is below the distance from y to the candidate span");
  }
  const double target = std::sqrt(std::max(0.0, sigma * sigma - rs.tail * rs.tail));
  if (y.norm() <= sigma) return finish(a, y, VectorXd::Zero(a.a.cols()), delta, "zero");
  if (rs.rank == 0) return finish(a, y, VectorXd::Zero(a.a.cols()), delta, "zero");
  // Shrink the target slightly so float error in the path cannot push the
  // final residual past delta.
  const VectorXd beta = homotopy(rs.c, rs.g, target * (1.0 - 1e-9));
  return finish(a, y, beta, delta, "homotopy");
}

SparsePolynomial to_polynomial(const CandidateSet& candidates, std::span<const double> beta,
                               double threshold) {
  if (beta.size() != candidates.size()) {
    throw DimensionMismatch("to_polynomial: beta length != candidate count");
  }
  const std::size_t n = candidates.empty() ? 0 : candidates[0].dimension();
  SparsePolynomial f(n);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (std::abs(beta[j]) > threshold) f.set(candidates[j], beta[j]);
  }
  return f;
}

}  // namespace boolsketch
