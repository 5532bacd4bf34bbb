#pragma once

#include <Eigen/Dense>

namespace murspin::detail {

/// max c.x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
/// Matrices may be empty (zero rows).
struct LinearProgram {
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::VectorXd objective;
};

struct LpResult {
  bool feasible = false;
  bool bounded = false;
  Eigen::VectorXd x;
  double value = 0.0;

  bool ok() const { return feasible && bounded; }
};

/// Dense two-phase tableau simplex with Bland's rule. Sized for the tiny
/// programs of this library (tens of variables), not for sparse problems.
LpResult solve_lp(const LinearProgram& lp);

/// Matrix game helper: maximize over the probability simplex p the minimum
/// over rows r of (payoff p)_r. `preference` breaks ties among optimal p
/// (it is added to the objective scaled by pref_scale). Returns p and the
/// exact min-row value of the returned p.
std::pair<Eigen::VectorXd, double> max_min_over_simplex(const Eigen::MatrixXd& payoff,
                                                        const Eigen::VectorXd& preference,
                                                        double pref_scale = 1e-9);

}  // namespace murspin::detail
