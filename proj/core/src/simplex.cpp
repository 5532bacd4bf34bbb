#include "murspin/detail/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace murspin::detail {

namespace {

constexpr double kPivotTol = 1e-11;

// One simplex phase on the tableau with Bland's anti-cycling rule.
// rows: tableau[0..m-1], objective carried in tableau.row(m) as reduced
// costs (maximization: pivot while some reduced cost is positive).
// allowed[j] marks columns that may enter the basis.
bool run_phase(Eigen::MatrixXd& tableau, std::vector<int>& basis,
               const std::vector<bool>& allowed) {
  const Eigen::Index m = tableau.rows() - 1;
  const Eigen::Index rhs = tableau.cols() - 1;
  for (int guard = 0; guard < 20000; ++guard) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < rhs; ++j) {
      if (allowed[j] && tableau(m, j) > kPivotTol) {
        enter = j;
        break;  // Bland: smallest eligible index
      }
    }
    if (enter < 0) return true;  // optimal
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = tableau(i, enter);
      if (a > kPivotTol) {
        const double ratio = tableau(i, rhs) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction
    tableau.row(leave) /= tableau(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tableau(i, enter);
      if (f != 0.0) tableau.row(i) -= f * tableau.row(leave);
    }
    basis[leave] = static_cast<int>(enter);
  }
  throw std::runtime_error("simplex: iteration guard exceeded");
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.objective.size());
  const int mu = static_cast<int>(lp.a_ub.rows());
  const int me = static_cast<int>(lp.a_eq.rows());
  const int m = mu + me;

  // Normalize to rows with nonnegative rhs; <= rows keep a +1 slack,
  // flipped rows and equalities get an artificial.
  Eigen::MatrixXd rows(m, n);
  Eigen::VectorXd rhs(m);
  std::vector<int> slack_sign(m, 0);  // +-1 for ub rows, 0 for eq rows
  for (int i = 0; i < mu; ++i) {
    rows.row(i) = lp.a_ub.row(i);
    rhs(i) = lp.b_ub(i);
    slack_sign[i] = 1;
    if (rhs(i) < 0) {
      rows.row(i) *= -1.0;
      rhs(i) *= -1.0;
      slack_sign[i] = -1;
    }
  }
  for (int i = 0; i < me; ++i) {
    rows.row(mu + i) = lp.a_eq.row(i);
    rhs(mu + i) = lp.b_eq(i);
    if (rhs(mu + i) < 0) {
      rows.row(mu + i) *= -1.0;
      rhs(mu + i) *= -1.0;
    }
  }

  std::vector<bool> needs_artificial(m);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    needs_artificial[i] = (slack_sign[i] != 1);
    if (needs_artificial[i]) ++n_art;
  }

  const int cols = n + mu + n_art + 1;  // structural, slacks, artificials, rhs
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, cols);
  tab.block(0, 0, m, n) = rows;
  for (int i = 0; i < mu; ++i) tab(i, n + i) = static_cast<double>(slack_sign[i]);
  std::vector<int> basis(m, -1);
  {
    int art = 0;
    for (int i = 0; i < m; ++i) {
      if (needs_artificial[i]) {
        tab(i, n + mu + art) = 1.0;
        basis[i] = n + mu + art;
        ++art;
      } else {
        basis[i] = n + i;
      }
    }
  }
  for (int i = 0; i < m; ++i) tab(i, cols - 1) = rhs(i);

  LpResult result;

  // Phase 1: drive the artificials to zero.
  if (n_art > 0) {
    for (int j = 0; j < cols; ++j) tab(m, j) = 0.0;
    for (int i = 0; i < m; ++i)
      if (needs_artificial[i]) tab.row(m) += tab.row(i);  // maximize -sum(art)
    for (int a = 0; a < n_art; ++a) tab(m, n + mu + a) = 0.0;
    std::vector<bool> allowed(cols - 1, true);
    run_phase(tab, basis, allowed);
    if (tab(m, cols - 1) > 1e-8) return result;  // infeasible
    // pivot leftover artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n + mu) continue;
      int enter = -1;
      for (int j = 0; j < n + mu; ++j)
        if (std::abs(tab(i, j)) > kPivotTol) {
          enter = j;
          break;
        }
      if (enter < 0) continue;  // redundant row, leave the artificial at zero
      tab.row(i) /= tab(i, enter);
      for (int r = 0; r <= m; ++r) {
        if (r == i) continue;
        const double f = tab(r, enter);
        if (f != 0.0) tab.row(r) -= f * tab.row(i);
      }
      basis[i] = enter;
    }
  }
  result.feasible = true;

  // Phase 2 objective row: c_j minus the basic contributions.
  for (int j = 0; j < cols; ++j) tab(m, j) = 0.0;
  for (int j = 0; j < n; ++j) tab(m, j) = lp.objective(j);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n && lp.objective(basis[i]) != 0.0)
      tab.row(m) -= lp.objective(basis[i]) * tab.row(i);
  }
  std::vector<bool> allowed(cols - 1, false);
  for (int j = 0; j < n + mu; ++j) allowed[j] = true;  // artificials stay out
  if (!run_phase(tab, basis, allowed)) return result;  // unbounded
  result.bounded = true;

  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) result.x(basis[i]) = tab(i, cols - 1);
  result.value = lp.objective.dot(result.x);
  return result;
}

std::pair<Eigen::VectorXd, double> max_min_over_simplex(const Eigen::MatrixXd& payoff,
                                                        const Eigen::VectorXd& preference,
                                                        double pref_scale) {
  const int rows = static_cast<int>(payoff.rows());
  const int n = static_cast<int>(payoff.cols());
  if (preference.size() != n)
    throw std::invalid_argument("max_min_over_simplex: preference size mismatch");

  // variables (p_0..p_{n-1}, t+, t-): maximize t+ - t- + eps pref.p
  // subject to (t+ - t-) - (payoff p)_r <= 0 and sum p = 1. The value is
  // split in two nonnegative parts because it may have either sign.
  LinearProgram lp;
  lp.a_ub = Eigen::MatrixXd::Zero(rows, n + 2);
  lp.a_ub.block(0, 0, rows, n) = -payoff;
  lp.a_ub.col(n).setOnes();
  lp.a_ub.col(n + 1) = -Eigen::VectorXd::Ones(rows);
  lp.b_ub = Eigen::VectorXd::Zero(rows);
  lp.a_eq = Eigen::MatrixXd::Zero(1, n + 2);
  lp.a_eq.block(0, 0, 1, n).setOnes();
  lp.b_eq = Eigen::VectorXd::Ones(1);
  lp.objective = Eigen::VectorXd::Zero(n + 2);
  lp.objective.head(n) = pref_scale * preference;
  lp.objective(n) = 1.0;
  lp.objective(n + 1) = -1.0;

  const LpResult res = solve_lp(lp);
  if (!res.ok()) throw std::runtime_error("max_min_over_simplex: LP did not solve");

  Eigen::VectorXd p = res.x.head(n).cwiseMax(0.0);
  p /= p.sum();
  const double value = (payoff * p).minCoeff();
  return {p, value};
}

}  // namespace murspin::detail
