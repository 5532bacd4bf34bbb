#include "murspin/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "murspin/detail/parallel.hpp"
#include "murspin/detail/simplex.hpp"

namespace murspin {

namespace {

constexpr double kMinGap = 1e-6;   // strict ordering margin for the cosines
constexpr double kStepFloor = 1e-9;  // final pattern-search resolution

Eigen::MatrixXd diagonal_payoff(const QTable& table) {
  const int dim = table.spin().dimension();
  Eigen::MatrixXd payoff(dim, dim);  // rows m, columns l
  for (int m = 0; m < dim; ++m)
    for (int l = 0; l < dim; ++l) payoff(m, l) = table.q_offset(m, l, m);
  return payoff;
}

Eigen::VectorXd lambda_preference(int dim) {
  // lexicographic tie-break: mass at l = s (offset 0) first
  Eigen::VectorXd pref(dim);
  double w = 1.0;
  for (int k = 0; k < dim; ++k, w *= 0.5) pref(k) = w;
  return pref;
}

std::pair<LambdaWeights, double> solve_inner(const QTable& table) {
  const int dim = table.spin().dimension();
  const auto [p, value] =
      detail::max_min_over_simplex(diagonal_payoff(table), lambda_preference(dim));
  std::vector<double> weights(p.data(), p.data() + p.size());
  return {LambdaWeights::from_values(table.spin(), std::move(weights)), value};
}

double safeguarded_newton(double (*f)(double), double (*df)(double), double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("safeguarded_newton: root not bracketed");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) break;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    const double d = df(x);
    double next = x - fx / d;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - x) < 1e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double cubic_f(double a) { return ((a - 1.0) * a - 5.0) * a + 7.0 / 3.0; }
double cubic_df(double a) { return (3.0 * a - 2.0) * a - 5.0; }
double quartic_f(double a) { return ((a * a - 6.0) * a - 8.0) * a + 7.5; }
double quartic_df(double a) { return (4.0 * a * a - 12.0) * a - 8.0; }

}  // namespace

std::pair<LambdaWeights, double> inner_max_min(const QTable& table) {
  return solve_inner(table);
}

InnerCertificate inner_max_min_certified(const QTable& table) {
  const int dim = table.spin().dimension();
  const Eigen::MatrixXd payoff = diagonal_payoff(table);
  const Eigen::VectorXd pref = lambda_preference(dim);
  const auto [lambda, value] = detail::max_min_over_simplex(payoff, pref);
  // dual: the minimizing distribution over m, obtained from the
  // transposed game min_mu max_l (payoff^T mu)_l = -max_mu min_l (-payoff^T mu)_l
  const auto [mu, neg_value] =
      detail::max_min_over_simplex(Eigen::MatrixXd(-payoff.transpose()), pref * 0.0);

  InnerCertificate cert{LambdaWeights::from_values(
                            table.spin(), std::vector<double>(lambda.data(), lambda.data() + dim)),
                        std::vector<double>(mu.data(), mu.data() + dim), value, 0.0, 0.0};
  cert.duality_gap = std::abs(value + neg_value);
  // complementary slackness: support of lambda only on best-response
  // columns, support of mu only on active rows
  const Eigen::VectorXd row_values = payoff * lambda;   // per m
  const Eigen::VectorXd col_values = payoff.transpose() * mu;  // per l
  double residual = 0.0;
  for (int l = 0; l < dim; ++l)
    if (lambda(l) > 1e-9) residual = std::max(residual, value - col_values(l));
  for (int m = 0; m < dim; ++m)
    if (mu(m) > 1e-9) residual = std::max(residual, row_values(m) - value);
  cert.slackness_residual = residual;
  return cert;
}

namespace {

struct Objective {
  const DSquaredTable& polys;
  SpinValue s;
  mutable long evals = 0;

  double value(std::span<const double> free_cosines) const {
    const AngleGrid grid = AngleGrid::from_free_cosines(s, free_cosines);
    const QTable table = QTable::build(polys, grid);
    ++evals;
    return solve_inner(table).second;
  }
};

struct StartResult {
  std::vector<double> u;
  double k = -1.0;
  long evals = 0;
  bool converged = false;
  std::vector<SolverIteration> trace;
};

// bounds of coordinate i given the other coordinates: below its left
// neighbour (or 1) and above its right neighbour (or 0), kMinGap apart
std::pair<double, double> coordinate_bounds(const std::vector<double>& u, int i) {
  const double hi = (i == 0 ? 1.0 : u[i - 1]) - kMinGap;
  const double lo = (i + 1 < static_cast<int>(u.size()) ? u[i + 1] : 0.0) + kMinGap;
  return {lo, hi};
}

// golden-section maximization of f on [lo, hi]
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > xtol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

StartResult refine_start(const Objective& obj, std::vector<double> u, double tol,
                         long max_evals) {
  StartResult res;
  res.u = u;
  res.k = obj.value(u);
  res.trace.push_back({obj.evals, res.k, 0.0});
  const int d = static_cast<int>(u.size());
  if (d == 0) {
    res.converged = true;
    res.evals = obj.evals;
    return res;
  }

  // stage 1: cyclic coordinate golden-section sweeps
  for (int sweep = 0; sweep < 30 && obj.evals < max_evals; ++sweep) {
    const double before = res.k;
    for (int i = 0; i < d; ++i) {
      const auto [lo, hi] = coordinate_bounds(res.u, i);
      if (hi - lo < 4.0 * kMinGap) continue;
      auto line = [&](double x) {
        std::vector<double> trial = res.u;
        trial[i] = x;
        return obj.value(trial);
      };
      const auto [x, fx] = golden_max(line, lo, hi, 1e-10);
      if (fx > res.k) {
        res.u[i] = x;
        res.k = fx;
      }
    }
    res.trace.push_back({obj.evals, res.k, 0.0});
    if (res.k - before < 0.05 * tol) break;
  }

  // stage 2: shrinking compass pattern search
  double step = 0.02;
  double gain_since_shrink = 0.0;
  while (step >= kStepFloor && obj.evals < max_evals) {
    bool moved = false;
    for (int i = 0; i < d; ++i) {
      const auto [lo, hi] = coordinate_bounds(res.u, i);
      for (const double dir : {+1.0, -1.0}) {
        const double x = std::clamp(res.u[i] + dir * step, lo, hi);
        if (x == res.u[i]) continue;
        std::vector<double> trial = res.u;
        trial[i] = x;
        const double fx = obj.value(trial);
        if (fx > res.k) {
          gain_since_shrink += fx - res.k;
          res.u = std::move(trial);
          res.k = fx;
          moved = true;
        }
      }
    }
    if (!moved) {
      step *= 0.5;
      res.trace.push_back({obj.evals, res.k, step});
      gain_since_shrink = 0.0;
    }
  }
  res.converged = step < kStepFloor;
  res.evals = obj.evals;
  return res;
}

std::vector<std::vector<double>> build_starts(SpinValue s, std::uint64_t seed) {
  const int d = s.free_angle_count();
  std::vector<std::vector<double>> starts;
  if (d == 0) {
    starts.push_back({});
    return starts;
  }
  // descending tuples from the 7-point lattice
  const int lattice_n = 7;
  std::vector<int> combo(d);
  for (int i = 0; i < d; ++i) combo[i] = i;
  if (d <= lattice_n) {
    while (true) {
      std::vector<double> u(d);
      for (int i = 0; i < d; ++i) u[i] = (lattice_n - combo[i]) / 8.0;  // descending
      starts.push_back(std::move(u));
      int i = d - 1;
      while (i >= 0 && combo[i] == lattice_n - d + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < d; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  starts.push_back(AngleGrid::unbiased(s).free_cosines());
  {
    std::vector<double> equal(d);
    for (int i = 0; i < d; ++i) equal[i] = static_cast<double>(d - i) / (d + 1);
    starts.push_back(std::move(equal));
  }
  // top up with seeded random feasible points, 7^d total capped at 2401
  long target = 1;
  for (int i = 0; i < d; ++i) target = std::min<long>(target * 7, 2401);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  while (static_cast<long>(starts.size()) < target) {
    std::vector<double> u(d);
    for (double& v : u) v = unif(rng);
    std::sort(u.rbegin(), u.rend());
    bool ok = true;
    for (int i = 0; i + 1 < d; ++i)
      if (u[i] - u[i + 1] < 1e-3) ok = false;
    if (ok) starts.push_back(std::move(u));
  }
  return starts;
}

LossReport make_report(SpinValue s, const LambdaWeights& lambdas, const AngleGrid& grid,
                       double k) {
  LossReport report{s, lambdas, grid};
  report.k_value = k;
  report.info_loss = -std::log2(k);
  report.visibility = k;
  return report;
}

}  // namespace

LossReport outer_search(SpinValue s, double tol) {
  OuterOptions options;
  options.tol = tol;
  return outer_search(s, options);
}

LossReport outer_search(SpinValue s, const OuterOptions& options) {
  if (!(options.tol > 0)) throw std::invalid_argument("outer_search: tol must be positive");
  const DSquaredTable polys = DSquaredTable::build(s);
  const auto starts = build_starts(s, options.seed);

  std::vector<StartResult> results(starts.size());
  detail::parallel_for(static_cast<int>(starts.size()), options.threads, [&](int i) {
    Objective obj{polys, s};
    results[i] = refine_start(obj, starts[i], options.tol, options.max_evals_per_start);
  });

  // deterministic reduce: best K, ties to the lowest start index
  int best = 0;
  for (int i = 1; i < static_cast<int>(results.size()); ++i)
    if (results[i].k > results[best].k) best = i;

  const AngleGrid grid_opt = AngleGrid::from_free_cosines(s, results[best].u);
  const QTable table = QTable::build(polys, grid_opt);
  const auto [lambdas, k] = solve_inner(table);

  LossReport report = make_report(s, lambdas, grid_opt, k);
  report.method = "search";
  report.converged = results[best].converged;
  report.seed = options.seed;
  report.tolerance = options.tol;
  report.starts = static_cast<int>(starts.size());
  for (const auto& r : results) report.evaluations += r.evals;
  report.trace = results[best].trace;
  if (s.twice() <= 3) {
    const LossReport closed = analytic_solution(s);
    report.verified_closed_form = true;
    report.closed_form_gap = std::abs(report.info_loss - closed.info_loss);
  }
  return report;
}

double spin1_root_trig() {
  const double alpha = (M_PI + std::acos(1.0 / 8.0)) / 3.0;
  return (1.0 + 8.0 * std::cos(alpha)) / 3.0;
}

double spin1_root_newton() { return safeguarded_newton(cubic_f, cubic_df, 0.3, 0.6); }

double spin32_root_newton() { return safeguarded_newton(quartic_f, quartic_df, 0.0, 1.0); }

LossReport analytic_solution(SpinValue s) {
  if (s.twice() == 1) {
    LossReport report = make_report(s, LambdaWeights::point_mass(s, MagneticIndex(s, 1)),
                                    AngleGrid::unbiased(s), 0.75);
    report.method = "analytic";
    report.converged = true;
    report.verified_closed_form = true;
    report.trace.push_back({0, report.k_value, 0.0});
    return report;
  }
  if (s.twice() == 2) {
    const double a0 = spin1_root_trig();
    const double k = 0.5 * a0 * (3.0 - a0 * a0);
    LossReport report = make_report(s, LambdaWeights::point_mass(s, MagneticIndex(s, 2)),
                                    AngleGrid::single_parameter(s, a0), k);
    report.method = "analytic";
    report.converged = true;
    report.verified_closed_form = true;
    report.trace.push_back({0, k, 0.0});
    return report;
  }
  if (s.twice() == 3) {
    const double a0 = spin32_root_newton();
    const double k = (45.0 - 24.0 * a0 - 24.0 * a0 * a0 - 8.0 * a0 * a0 * a0) / 32.0;
    LossReport report = make_report(s, LambdaWeights::point_mass(s, MagneticIndex(s, 3)),
                                    AngleGrid::single_parameter(s, a0), k);
    report.method = "analytic";
    report.converged = true;
    report.verified_closed_form = true;
    report.trace.push_back({0, k, 0.0});
    return report;
  }
  throw std::invalid_argument("analytic_solution: no closed form for s=" + s.str());
}

BoundCheckResult bound_check(const LossReport& report) {
  BoundCheckResult out;
  out.positive = report.info_loss > 0.0;
  out.below_upper_bound =
      report.info_loss <= std::log2(report.s.dimension()) + 1e-12;
  if (report.s.twice() == 2 || report.s.twice() == 3) {
    out.crossing_checked = true;
    const QTable table = QTable::build(report.s, report.grid_opt);
    const MagneticIndex top(report.s, report.s.twice());
    const MagneticIndex next(report.s, report.s.twice() - 2);
    out.crossing_residual = std::abs(table.q(top, top, top) - table.q(next, top, next));
    out.crossing_ok = out.crossing_residual <= 1e-9;
  }
  return out;
}

std::string LossReport::to_json_string() const {
  nlohmann::json root;
  root["spin"] = s.str();
  root["k_value"] = k_value;
  root["info_loss_bits"] = info_loss;
  root["visibility"] = visibility;
  nlohmann::json lj;
  for (const auto l : magnetic_range(s)) lj[l.str()] = lambdas_opt.at(l);
  root["lambdas"] = lj;
  root["grid_cosines"] = grid_opt.cosines();
  root["converged"] = converged;
  root["method"] = method;
  root["verified_closed_form"] = verified_closed_form;
  root["closed_form_gap_bits"] = closed_form_gap;
  root["evaluations"] = evaluations;
  root["starts"] = starts;
  root["seed"] = seed;
  root["tolerance"] = tolerance;
  nlohmann::json tj = nlohmann::json::array();
  for (const auto& it : trace)
    tj.push_back({{"evals", it.evals}, {"k", it.k_lower}, {"step", it.step}});
  root["trace"] = tj;
  return root.dump(2);
}

std::string LossReport::to_table() const {
  char buf[256];
  std::string out;
  out += "spin            " + s.str() + "\n";
  std::snprintf(buf, sizeof(buf), "K (= visibility) %.12f\n", k_value);
  out += buf;
  std::snprintf(buf, sizeof(buf), "info loss [bits] %.12f\n", info_loss);
  out += buf;
  out += "lambda*         ";
  for (const auto l : magnetic_range(s)) {
    std::snprintf(buf, sizeof(buf), " %s:%.9f", l.str().c_str(), lambdas_opt.at(l));
    out += buf;
  }
  out += "\ngrid cosines    ";
  for (double c : grid_opt.cosines()) {
    std::snprintf(buf, sizeof(buf), " %.10f", c);
    out += buf;
  }
  out += "\nmethod           " + method + (converged ? " (converged)" : " (NOT converged)") + "\n";
  if (method == "search") {
    std::snprintf(buf, sizeof(buf), "evaluations      %ld over %d starts\n", evaluations,
                  starts);
    out += buf;
  }
  if (verified_closed_form && method == "search") {
    std::snprintf(buf, sizeof(buf), "closed-form gap  %.3e bits\n", closed_form_gap);
    out += buf;
  }
  return out;
}

}  // namespace murspin
