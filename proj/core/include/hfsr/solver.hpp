#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

namespace hfsr {

/// Sparse coefficient vector together with the objective
/// ||p - Phi a||^2 + lambda ||a||_1 it attained. Only nonzero entries are
/// stored.
struct SparseCode {
  std::vector<std::pair<int, double>> coefficients;  // (atom index, value)
  double objective = 0.0;
  double residual_norm_sq = 0.0;

  double l1_norm() const {
    double s = 0.0;
    for (auto &[k, v] : coefficients) s += std::abs(v);
    return s;
  }
  Eigen::VectorXd dense(int n) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (auto &[k, v] : coefficients) a[k] = v;
    return a;
  }
};

struct SolverSettings {
  double lambda = 1e-4;
  int max_iters = 1000;
  double tolerance = 1e-7;  // max abs coefficient change per sweep
};

/// Cyclic coordinate descent with soft-thresholding for
///   min_a ||target - D a||^2 + lambda ||a||_1
/// (quadratic term un-halved). Caches the Gram matrix so many targets can be
/// coded against the same dictionary matrix cheaply.
class LassoSolver {
 public:
  explicit LassoSolver(Eigen::MatrixXd dict_matrix);

  SparseCode solve(const Eigen::VectorXd &target, const SolverSettings &settings) const;

  const Eigen::MatrixXd &matrix() const { return dict_; }

 private:
  Eigen::MatrixXd dict_;
  Eigen::MatrixXd gram_;
};

/// One-shot convenience wrapper around LassoSolver.
SparseCode solve_lasso(const Eigen::VectorXd &target, const Eigen::MatrixXd &dict_matrix,
                       const SolverSettings &settings);

}  // namespace hfsr
