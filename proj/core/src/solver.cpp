#include "hfsr/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfsr {

namespace {

inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

}  // namespace

LassoSolver::LassoSolver(Eigen::MatrixXd dict_matrix) : dict_(std::move(dict_matrix)) {
  gram_ = dict_.transpose() * dict_;
}

// For the un-halved objective ||p - D a||^2 + lambda ||a||_1 the coordinate
// update with column k is a_k = soft(c_k - sum_{j != k} G_kj a_j, lambda/2) / G_kk.
// State kept across updates: s = G a.
SparseCode LassoSolver::solve(const Eigen::VectorXd &target, const SolverSettings &settings) const {
  if (target.size() != dict_.rows())
    throw std::invalid_argument("solve_lasso: target length does not match dictionary rows");
  if (settings.lambda <= 0 || settings.tolerance <= 0 || settings.max_iters <= 0)
    throw std::invalid_argument("solve_lasso: settings must be positive");

  const int n = static_cast<int>(dict_.cols());
  const Eigen::VectorXd corr = dict_.transpose() * target;  // c = D^T p
  const double half_lambda = 0.5 * settings.lambda;

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);  // G * alpha
  std::vector<int> active;
  active.reserve(64);

  auto update_coord = [&](int k) -> double {
    const double gkk = gram_(k, k);
    if (gkk <= 0.0) return 0.0;
    const double rho = corr[k] - s[k] + gkk * alpha[k];
    const double next = soft_threshold(rho, half_lambda) / gkk;
    const double delta = next - alpha[k];
    if (delta != 0.0) {
      s += gram_.col(k) * delta;
      alpha[k] = next;
    }
    return std::abs(delta);
  };

  // Worst KKT violation for the un-halved objective, given s = G a.
  auto kkt_violation = [&]() -> double {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const double g = 2.0 * (s[k] - corr[k]);
      const double v = alpha[k] != 0.0
                           ? std::abs(g + settings.lambda * (alpha[k] > 0 ? 1.0 : -1.0))
                           : std::max(0.0, std::abs(g) - settings.lambda);
      worst = std::max(worst, v);
    }
    return worst;
  };

  auto objective_of = [&](const Eigen::VectorXd &a) -> double {
    return (target - dict_ * a).squaredNorm() + settings.lambda * a.cwiseAbs().sum();
  };

  // Exact minimizer on the current support with the current signs, walked to
  // with sign-preserving clipped steps (the objective is convex along each
  // segment with its minimum at the unclipped target, so every step
  // decreases it). Coordinates driven to zero leave the support. Leaves
  // s = G * alpha consistent; reverts if a near-singular active-set system
  // produced a bad step.
  auto polish_active_set = [&]() {
    const Eigen::VectorXd alpha_in = alpha;
    const Eigen::VectorXd s_in = s;
    const double obj_in = objective_of(alpha);
    for (int round = 0; round < n; ++round) {
      std::vector<int> support;
      for (int k = 0; k < n; ++k)
        if (alpha[k] != 0.0) support.push_back(k);
      if (support.empty()) break;
      const int na = static_cast<int>(support.size());
      Eigen::MatrixXd gaa(na, na);
      Eigen::VectorXd rhs(na);
      for (int i = 0; i < na; ++i) {
        for (int j = 0; j < na; ++j) gaa(i, j) = gram_(support[i], support[j]);
        // Proximal ridge: keeps rank-deficient supports solvable and, when
        // the optimum is non-unique, stays near the current iterate instead
        // of spreading weight across duplicate atoms.
        gaa(i, i) += 1e-10;
        rhs[i] = corr[support[i]] - half_lambda * (alpha[support[i]] > 0 ? 1.0 : -1.0) +
                 1e-10 * alpha[support[i]];
      }
      const Eigen::VectorXd target_a = gaa.ldlt().solve(rhs);
      if (!target_a.allFinite()) break;

      // largest sign-preserving step toward the target
      double t = 1.0;
      int crossing = -1;
      for (int i = 0; i < na; ++i) {
        const double cur = alpha[support[i]];
        const double nxt = target_a[i];
        if ((cur > 0) != (nxt > 0) || nxt == 0.0) {
          const double cross = cur / (cur - nxt);
          if (cross > 0.0 && cross < t) {
            t = cross;
            crossing = i;
          }
        }
      }
      for (int i = 0; i < na; ++i) {
        const int k = support[i];
        double next = alpha[k] + t * (target_a[i] - alpha[k]);
        if (i == crossing || ((alpha[k] > 0) != (next > 0) && next != 0.0)) next = 0.0;
        const double delta = next - alpha[k];
        if (delta != 0.0) {
          s += gram_.col(k) * delta;
          alpha[k] = next;
        }
      }
      if (crossing < 0) break;
    }
    if (objective_of(alpha) > obj_in) {
      alpha = alpha_in;
      s = s_in;
    }
  };

  // Active-set schedule: each round activates the few worst violators of the
  // zero-coefficient optimality condition, runs one cyclic soft-threshold
  // sweep over the active set, then polishes the support exactly. Greedy
  // activation keeps the support (and the polish factorizations) small even
  // when lambda is tiny and a full sweep would light up every coordinate.
  // Stops once the KKT residual is inside tolerance (or max_iters sweeps
  // elapse).
  const double kkt_target = 5.0 * settings.tolerance;
  int sweeps = 0;
  std::vector<std::pair<double, int>> violators;
  while (sweeps < settings.max_iters) {
    // rebuild the active set: current support plus the worst new violators
    active.clear();
    violators.clear();
    for (int k = 0; k < n; ++k) {
      if (alpha[k] != 0.0) {
        active.push_back(k);
      } else {
        const double v = std::abs(2.0 * (s[k] - corr[k])) - settings.lambda;
        if (v > kkt_target) violators.emplace_back(v, k);
      }
    }
    const long take = std::min<long>(static_cast<long>(violators.size()), 8);
    std::partial_sort(violators.begin(), violators.begin() + take, violators.end(),
                      std::greater<>());
    for (long i = 0; i < take; ++i) active.push_back(violators[i].second);

    double max_delta = 0.0;
    for (int k : active) max_delta = std::max(max_delta, update_coord(k));
    ++sweeps;
    if (violators.empty() && max_delta < settings.tolerance && kkt_violation() <= kkt_target)
      break;
    // Skip the polish when the budget ran out mid-round so a truncated run is
    // a prefix of a longer one (keeps the objective monotone in max_iters).
    if (sweeps >= settings.max_iters) break;
    polish_active_set();
    if (kkt_violation() <= kkt_target) break;
  }

  SparseCode code;
  for (int k = 0; k < n; ++k)
    if (alpha[k] != 0.0) code.coefficients.emplace_back(k, alpha[k]);
  const Eigen::VectorXd residual = target - dict_ * alpha;
  code.residual_norm_sq = residual.squaredNorm();
  code.objective = code.residual_norm_sq + settings.lambda * alpha.cwiseAbs().sum();
  return code;
}

SparseCode solve_lasso(const Eigen::VectorXd &target, const Eigen::MatrixXd &dict_matrix,
                       const SolverSettings &settings) {
  return LassoSolver(dict_matrix).solve(target, settings);
}

}  // namespace hfsr
