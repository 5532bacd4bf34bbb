#pragma once

#include <cstdint>
#include <optional>

#include "murspin/infoloss.hpp"

namespace murspin {

/// One entry of the refinement trace: best K seen so far after `evals`
/// objective evaluations, and the current search step.
struct SolverIteration {
  long evals = 0;
  double k_lower = 0.0;
  double step = 0.0;
};

/// Result of the max-min optimization
///   K_s = sup_{lambda, theta} min_m sum_l lambda_l q(m|l,m),
/// with I_s = log2(1/K_s) and visibility eta* = K_s.
struct LossReport {
  LossReport(SpinValue spin, LambdaWeights lambdas, AngleGrid grid)
      : s(spin), lambdas_opt(std::move(lambdas)), grid_opt(std::move(grid)) {}

  SpinValue s;
  LambdaWeights lambdas_opt;
  AngleGrid grid_opt;
  double k_value = 0.0;
  double info_loss = 0.0;   // bits
  double visibility = 0.0;  // equals k_value
  bool converged = false;
  std::string method;  // "analytic" or "search"
  // set when s <= 3/2 and the numeric result was certified against the
  // closed form; gap is |info_loss - analytic info_loss| in bits
  bool verified_closed_form = false;
  double closed_form_gap = 0.0;
  long evaluations = 0;
  int starts = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<SolverIteration> trace;

  std::string to_json_string() const;
  std::string to_table() const;
};

/// Inner problem of K_s at a fixed grid: maximize over the lambda simplex
/// the minimum over m of sum_l lambda_l q(m|l,m). Solved exactly as a
/// linear program; among optimal lambdas the mass is pushed to l = s
/// first (lexicographic preference).
std::pair<LambdaWeights, double> inner_max_min(const QTable& table);

/// Inner solution together with the LP dual and the complementary
/// slackness residual (a posteriori optimality certificate).
struct InnerCertificate {
  LambdaWeights lambdas;
  std::vector<double> dual;  // distribution over m
  double value = 0.0;
  double duality_gap = 0.0;
  double slackness_residual = 0.0;
};

InnerCertificate inner_max_min_certified(const QTable& table);

struct OuterOptions {
  double tol = 1e-8;
  std::uint64_t seed = 12345;
  int threads = 1;
  long max_evals_per_start = 40000;
};

/// The full max-min problem: multistart coarse grid over the floor(s)
/// free cosines, then coordinate golden-section sweeps and a shrinking
/// compass pattern search. For s <= 3/2 the result is certified against
/// analytic_solution.
LossReport outer_search(SpinValue s, double tol = 1e-8);
LossReport outer_search(SpinValue s, const OuterOptions& options);

/// Closed-form solutions for s in {1/2, 1, 3/2}.
LossReport analytic_solution(SpinValue s);

/// Real root in (0,1) of a^3 - a^2 - 5a + 7/3 = 0 via the trigonometric
/// form a = (1 + 8 cos(alpha))/3, cos(3 alpha - pi) = 1/8.
double spin1_root_trig();
/// The same root by safeguarded Newton iteration.
double spin1_root_newton();
/// Real root in (0,1) of a^4 - 6a^2 - 8a + 15/2 = 0 (safeguarded Newton).
double spin32_root_newton();

/// Checks 0 < I_s <= log2(2s+1) and, for s in {1, 3/2}, that the two
/// active diagonal coefficients cross at the optimum.
struct BoundCheckResult {
  bool positive = false;
  bool below_upper_bound = false;
  bool crossing_checked = false;
  bool crossing_ok = true;
  double crossing_residual = 0.0;

  bool ok() const { return positive && below_upper_bound && (!crossing_checked || crossing_ok); }
};

BoundCheckResult bound_check(const LossReport& report);

}  // namespace murspin
