#include "lp_simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace boolsketch::detail {

namespace {

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index vars) : t_(Eigen::MatrixXd::Zero(rows + 1, vars + 1)) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index vars() const { return t_.cols() - 1; }
  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double rhs(Eigen::Index r) const { return t_(r, t_.cols() - 1); }
  double& rhs(Eigen::Index r) { return t_(r, t_.cols() - 1); }
  double cost(Eigen::Index c) const { return t_(rows(), c); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
  }

  void drop_row(Eigen::Index r) {
    const Eigen::Index last = t_.rows() - 1;
    Eigen::MatrixXd next(t_.rows() - 1, t_.cols());
    next << t_.topRows(r), t_.middleRows(r + 1, last - r);
    t_ = std::move(next);
  }

  Eigen::MatrixXd& raw() { return t_; }

 private:
  Eigen::MatrixXd t_;
};

// Runs simplex iterations on the objective row over columns [0, usable).
LpStatus iterate(Tableau& t, std::vector<Eigen::Index>& basis, Eigen::Index usable, double eps) {
  const Eigen::Index max_iter = 50 * (t.vars() + t.rows() + 10);
  for (Eigen::Index iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < usable; ++j) {
      if (t.cost(j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return LpStatus::kOptimal;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= eps) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best - 1e-14 ||
          (std::abs(ratio - best) <= 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return LpStatus::kUnbounded;
    t.pivot(leave, enter);
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  return LpStatus::kUnbounded;  // cycling guard; Bland's rule should never get here
}

}  // namespace

LpSolution solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c) {
  const Eigen::Index p = a.rows();
  const Eigen::Index q = a.cols();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double eps = 1e-11 * scale;

  Tableau t(p, q + p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    t.raw().row(i).head(q) = sign * a.row(i);
    t.at(i, q + i) = 1.0;
    t.rhs(i) = sign * b(i);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) basis[static_cast<std::size_t>(i)] = q + i;

  // Phase 1: minimize the sum of artificials.
  for (Eigen::Index j = 0; j < q; ++j) t.at(p, j) = -t.raw().col(j).head(p).sum();
  t.rhs(p) = -t.raw().col(q + p).head(p).sum();
  iterate(t, basis, q + p, eps);

  LpSolution out;
  const double infeasibility = -t.rhs(t.rows());
  if (infeasibility > 1e-9 * (1.0 + b.cwiseAbs().sum())) return out;

  // Pivot remaining artificials out of the basis; rows with no usable pivot
  // are linear combinations of the others.
  for (Eigen::Index i = t.rows() - 1; i >= 0; --i) {
    if (basis[static_cast<std::size_t>(i)] < q) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < q; ++j) {
      if (std::abs(t.at(i, j)) > eps) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      t.pivot(i, col);
      basis[static_cast<std::size_t>(i)] = col;
    } else {
      t.drop_row(i);
      basis.erase(basis.begin() + i);
    }
  }

  // Phase 2 objective row.
  const Eigen::Index rows = t.rows();
  for (Eigen::Index j = 0; j < q + p; ++j) {
    double reduced = j < q ? c(j) : 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Eigen::Index bj = basis[static_cast<std::size_t>(i)];
      if (bj < q) reduced -= c(bj) * t.at(i, j);
    }
    t.at(rows, j) = reduced;
  }
  double z = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index bj = basis[static_cast<std::size_t>(i)];
    if (bj < q) z += c(bj) * t.rhs(i);
  }
  t.rhs(rows) = -z;

  out.status = iterate(t, basis, q, eps);
  if (out.status != LpStatus::kOptimal) return out;
  out.x = Eigen::VectorXd::Zero(q);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index bj = basis[static_cast<std::size_t>(i)];
    if (bj < q) out.x(bj) = std::max(0.0, t.rhs(i));
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace boolsketch::detail
