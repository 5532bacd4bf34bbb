#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "murspin/orthogonal.hpp"

namespace {

using namespace murspin;

constexpr double kLn2 = 0.6931471805599453;

struct CommonOptions {
  std::string spin = "1/2";
  double tolerance = 1e-8;
  std::string format = "table";
  std::uint64_t seed = 12345;
  int threads = 0;  // 0: resolve from MURSPIN_THREADS or 1
  std::string output;
  bool nats = false;

  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("MURSPIN_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return n;
    }
    return 1;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_spin = true) {
  if (with_spin)
    cmd->add_option("--spin", opt.spin, "spin value, e.g. 1/2, 1, 3/2 or 1.5");
  cmd->add_option("--tolerance", opt.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--seed", opt.seed, "random seed for multistart sampling");
  cmd->add_option("--threads", opt.threads,
                  "worker threads (fallback: MURSPIN_THREADS, default 1)");
  cmd->add_option("--output", opt.output, "write the main artifact to this file");
  cmd->add_flag("--nats", opt.nats, "also display entropic values in nats");
}

struct GridOptions {
  double a = -1.0;
  std::string cosines;
  bool unbiased = false;
};

void add_grid(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--a", g.a, "cos(theta_1) for the one-parameter grids (s = 1, 3/2)");
  cmd->add_option("--cosines", g.cosines,
                  "comma separated free interior cosines, descending in (0,1)");
  cmd->add_flag("--unbiased", g.unbiased, "use the unbiased grid (default)");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

AngleGrid resolve_grid(SpinValue s, const GridOptions& g) {
  const bool has_a = g.a >= 0.0;
  if (has_a + !g.cosines.empty() + g.unbiased > 1)
    throw std::invalid_argument("choose one of --a, --cosines, --unbiased");
  if (has_a) return AngleGrid::single_parameter(s, g.a);
  if (!g.cosines.empty()) return AngleGrid::from_free_cosines(s, parse_double_list(g.cosines));
  return AngleGrid::unbiased(s);
}

struct LambdaOptions {
  std::string values;
  bool uniform = false;
};

void add_lambdas(CLI::App* cmd, LambdaOptions& l) {
  cmd->add_option("--lambdas", l.values,
                  "comma separated weights ordered from l = s down to l = -s "
                  "(default: all mass at l = s)");
  cmd->add_flag("--uniform-lambdas", l.uniform, "uniform weights 1/(2s+1)");
}

LambdaWeights resolve_lambdas(SpinValue s, const LambdaOptions& l) {
  if (!l.values.empty() && l.uniform)
    throw std::invalid_argument("choose one of --lambdas, --uniform-lambdas");
  if (!l.values.empty()) return LambdaWeights::from_values(s, parse_double_list(l.values));
  if (l.uniform) return LambdaWeights::uniform(s);
  return LambdaWeights::point_mass(s, MagneticIndex(s, s.twice()));
}

Vec3 parse_direction(const std::string& text) {
  const auto v = parse_double_list(text);
  if (v.size() != 3) throw std::invalid_argument("--direction needs three components");
  Vec3 n(v[0], v[1], v[2]);
  const double norm = n.norm();
  if (norm <= 0.0) throw std::invalid_argument("--direction must be nonzero");
  return n / norm;
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + opt.output);
  out << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::string bits_line(const char* label, double bits, bool nats) {
  char buf[160];
  if (nats)
    std::snprintf(buf, sizeof(buf), "%-28s %.12f bits (%.12f nats)\n", label, bits,
                  bits * kLn2);
  else
    std::snprintf(buf, sizeof(buf), "%-28s %.12f bits\n", label, bits);
  return buf;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

// residuals of the QTable invariants (positivity, normalization in m,
// the two symmetry families and the sum rule)
struct QTableResiduals {
  double min_q = 0.0;
  double normalization = 0.0;
  double symmetry = 0.0;
  double sum_rule = 0.0;

  bool ok() const {
    // min_q may sit below the double noise floor for thin bins at large
    // spins; only a clear sign violation counts as a failure
    return min_q > -1e-12 && normalization <= 1e-10 && symmetry <= 1e-10 && sum_rule <= 1e-10;
  }
};

QTableResiduals qtable_residuals(const QTable& table) {
  const SpinValue s = table.spin();
  QTableResiduals r;
  r.min_q = std::numeric_limits<double>::infinity();
  const auto range = magnetic_range(s);
  for (const auto m : range) {
    for (const auto l : range) {
      double row_sum = 0.0, col_sum = 0.0, norm_sum = 0.0;
      for (const auto h : range) {
        const double q = table.q(m, l, h);
        r.min_q = std::min(r.min_q, q);
        r.symmetry = std::max(r.symmetry, std::abs(q - table.q(m, h, l)));
        r.symmetry = std::max(
            r.symmetry, std::abs(q - table.q(m, l.negated(s), h.negated(s))));
        r.symmetry = std::max(
            r.symmetry, std::abs(q - table.q(m.negated(s), l, h.negated(s))));
        row_sum += q;
        col_sum += table.q(m, h, l);
      }
      const int j = m.offset(s);
      const double expected =
          (s.value() + 0.5) * (table.grid().cosine(j) - table.grid().cosine(j + 1));
      r.sum_rule = std::max({r.sum_rule, std::abs(row_sum - expected),
                             std::abs(col_sum - expected)});
      norm_sum = 0.0;
      for (const auto mm : range) norm_sum += table.q(mm, l, m);
      r.normalization = std::max(r.normalization, std::abs(norm_sum - 1.0));
    }
  }
  return r;
}

int cmd_qtable(const CommonOptions& opt, const GridOptions& grid_opt,
               const LambdaOptions& lambda_opt, bool lambdas_given) {
  const SpinValue s = SpinValue::parse(opt.spin);
  const AngleGrid grid = resolve_grid(s, grid_opt);
  const QTable table = QTable::build(s, grid, opt.resolved_threads());
  const QTableResiduals res = qtable_residuals(table);

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "min q %.3e | normalization %.3e | symmetry %.3e | sum rule %.3e\n", res.min_q,
                res.normalization, res.symmetry, res.sum_rule);
  const std::string residual_line = buf;

  if (opt.format == "csv") {
    emit(opt, table.to_csv());
    std::cerr << residual_line;
  } else if (opt.format == "json") {
    nlohmann::json root = nlohmann::json::parse(table.to_json_string());
    root["residuals"] = {{"min_q", res.min_q},
                         {"normalization", res.normalization},
                         {"symmetry", res.symmetry},
                         {"sum_rule", res.sum_rule}};
    if (lambdas_given) {
      const LambdaWeights lambdas = resolve_lambdas(s, lambda_opt);
      root["visibility"] = table.min_diagonal_sum(lambdas);
      root["device_loss_bits"] = device_loss_closed(table, lambdas);
    }
    emit(opt, root.dump(2));
  } else {
    std::string out = "q-table for spin " + s.str() + ", grid cosines";
    for (double c : grid.cosines()) {
      std::snprintf(buf, sizeof(buf), " %.10f", c);
      out += buf;
    }
    out += "\n\n   m     l     h    q(m|l,h)\n";
    for (const auto m : magnetic_range(s))
      for (const auto l : magnetic_range(s))
        for (const auto h : magnetic_range(s)) {
          std::snprintf(buf, sizeof(buf), "%4s  %4s  %4s    %.15f\n", m.str().c_str(),
                        l.str().c_str(), h.str().c_str(), table.q(m, l, h));
          out += buf;
        }
    out += "\n" + residual_line;
    if (lambdas_given) {
      const LambdaWeights lambdas = resolve_lambdas(s, lambda_opt);
      std::snprintf(buf, sizeof(buf), "visibility %.12f\n", table.min_diagonal_sum(lambdas));
      out += buf;
      out += bits_line("device loss", device_loss_closed(table, lambdas), opt.nats);
    }
    emit(opt, out);
  }
  return res.ok() ? 0 : 1;
}

int cmd_minloss(const CommonOptions& opt) {
  const SpinValue s = SpinValue::parse(opt.spin);
  OuterOptions outer;
  outer.tol = opt.tolerance;
  outer.seed = opt.seed;
  outer.threads = opt.resolved_threads();
  const LossReport search = outer_search(s, outer);

  std::optional<LossReport> analytic;
  if (s.twice() <= 3) analytic = analytic_solution(s);

  int rc = search.converged ? 0 : 1;
  double delta = 0.0;
  if (analytic) {
    delta = std::abs(search.info_loss - analytic->info_loss);
    if (delta > 1e-5) rc = 1;
  }

  if (opt.format == "json") {
    nlohmann::json root;
    root["search"] = nlohmann::json::parse(search.to_json_string());
    if (analytic) {
      root["analytic"] = nlohmann::json::parse(analytic->to_json_string());
      root["delta_info_loss_bits"] = delta;
    }
    emit(opt, root.dump(2));
  } else if (opt.format == "csv") {
    std::string out = "method,k_value,info_loss_bits,visibility\n";
    char buf[200];
    std::snprintf(buf, sizeof(buf), "search,%.17g,%.17g,%.17g\n", search.k_value,
                  search.info_loss, search.visibility);
    out += buf;
    if (analytic) {
      std::snprintf(buf, sizeof(buf), "analytic,%.17g,%.17g,%.17g\n", analytic->k_value,
                    analytic->info_loss, analytic->visibility);
      out += buf;
    }
    emit(opt, out);
  } else {
    std::string out = "== numeric search ==\n" + search.to_table();
    if (analytic) {
      out += "\n== closed form ==\n" + analytic->to_table();
      char buf[120];
      std::snprintf(buf, sizeof(buf), "\n|I_search - I_analytic| = %.3e bits\n", delta);
      out += buf;
    } else {
      out += "\n(no closed form for s=" + s.str() + "; numeric result unverified)\n";
    }
    if (opt.nats) out += bits_line("info loss", search.info_loss, true);
    emit(opt, out);
  }
  return rc;
}

int cmd_loss(const CommonOptions& opt, const GridOptions& grid_opt,
             const LambdaOptions& lambda_opt, const std::string& direction) {
  const SpinValue s = SpinValue::parse(opt.spin);
  const AngleGrid grid = resolve_grid(s, grid_opt);
  const LambdaWeights lambdas = resolve_lambdas(s, lambda_opt);
  const QTable table = QTable::build(s, grid, opt.resolved_threads());
  const Vec3 n = parse_direction(direction);

  const double closed = device_loss_closed(table, lambdas);
  const double by_states = device_loss_by_states(table, lambdas, n);
  const double eta = table.min_diagonal_sum(lambdas);
  const double bias = mixed_state_bias(table, lambdas);
  const double residual = std::abs(closed - by_states);
  const int rc = residual <= 1e-8 ? 0 : 1;

  if (opt.format == "json") {
    nlohmann::json root;
    root["spin"] = s.str();
    root["device_loss_bits"] = closed;
    root["device_loss_by_states_bits"] = by_states;
    root["residual_bits"] = residual;
    root["visibility"] = eta;
    root["mixed_state_bias_bits"] = bias;
    emit(opt, root.dump(2));
  } else if (opt.format == "csv") {
    char buf[300];
    std::snprintf(buf, sizeof(buf),
                  "quantity,value\ndevice_loss_bits,%.17g\ndevice_loss_by_states_bits,%.17g\n"
                  "visibility,%.17g\nmixed_state_bias_bits,%.17g\n",
                  closed, by_states, eta, bias);
    emit(opt, buf);
  } else {
    std::string out;
    out += bits_line("device loss (closed form)", closed, opt.nats);
    out += bits_line("device loss (over states)", by_states, opt.nats);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%-28s %.3e\n", "route difference", residual);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-28s %.12f\n", "visibility", eta);
    out += buf;
    out += bits_line("mixed-state bias", bias, opt.nats);
    emit(opt, out);
  }
  return rc;
}

int cmd_decomposition(const CommonOptions& opt, const GridOptions& grid_opt,
                      const LambdaOptions& lambda_opt, const std::string& direction) {
  const SpinValue s = SpinValue::parse(opt.spin);
  const AngleGrid grid = resolve_grid(s, grid_opt);
  const LambdaWeights lambdas = resolve_lambdas(s, lambda_opt);
  const QTable table = QTable::build(s, grid, opt.resolved_threads());
  const Vec3 n = parse_direction(direction);

  const NoisyDecomposition dec = noisy_decomposition(table, lambdas, n);
  const double residual = dec.reconstruction_residual(table, lambdas, n);
  const int rc = residual <= 1e-10 ? 0 : 1;

  if (opt.format == "json") {
    nlohmann::json root;
    root["spin"] = s.str();
    root["visibility"] = dec.visibility;
    root["device_loss_bits"] = -std::log2(dec.visibility);
    root["reconstruction_residual"] = residual;
    nlohmann::json noise = nlohmann::json::array();
    for (const auto& mat : dec.noise) noise.push_back(matrix_to_json(mat));
    root["noise_povm"] = noise;
    emit(opt, root.dump(2));
  } else if (opt.format == "csv") {
    std::string out = "m,i,j,re,im\n";
    char buf[200];
    const auto range = magnetic_range(s);
    for (size_t k = 0; k < dec.noise.size(); ++k)
      for (Eigen::Index i = 0; i < dec.noise[k].rows(); ++i)
        for (Eigen::Index j = 0; j < dec.noise[k].cols(); ++j) {
          std::snprintf(buf, sizeof(buf), "%s,%ld,%ld,%.17g,%.17g\n", range[k].str().c_str(),
                        static_cast<long>(i), static_cast<long>(j),
                        dec.noise[k](i, j).real(), dec.noise[k](i, j).imag());
          out += buf;
        }
    emit(opt, out);
    std::fprintf(stderr, "visibility %.12f | reconstruction residual %.3e\n", dec.visibility,
                 residual);
  } else {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "visibility                   %.12f\n", dec.visibility);
    out += buf;
    out += bits_line("device loss", -std::log2(dec.visibility), opt.nats);
    std::snprintf(buf, sizeof(buf), "reconstruction residual      %.3e\n", residual);
    out += buf;
    const auto range = magnetic_range(s);
    for (size_t k = 0; k < dec.noise.size(); ++k) {
      out += "noise element m=" + range[k].str() + "\n";
      for (Eigen::Index i = 0; i < dec.noise[k].rows(); ++i) {
        for (Eigen::Index j = 0; j < dec.noise[k].cols(); ++j) {
          std::snprintf(buf, sizeof(buf), "  (%9.6f,%9.6f)", dec.noise[k](i, j).real(),
                        dec.noise[k](i, j).imag());
          out += buf;
        }
        out += "\n";
      }
    }
    emit(opt, out);
  }
  return rc;
}

int cmd_cloning(const CommonOptions& opt, int components) {
  const SpinValue s = SpinValue::parse(opt.spin);
  const CloningSpec spec(s, components);
  const double closed = cloning_device_loss(spec);
  const double by_states = cloning_device_loss_by_states(spec);
  const double residual = std::abs(closed - by_states);
  const int rc = residual <= 1e-9 ? 0 : 1;

  if (opt.format == "json") {
    nlohmann::json root;
    root["spin"] = s.str();
    root["components"] = components;
    root["device_loss_bits"] = closed;
    root["device_loss_by_states_bits"] = by_states;
    root["residual_bits"] = residual;
    root["visibility"] = spec.visibility();
    root["mixing_weight"] = spec.mixing_weight();
    nlohmann::json marginals = nlohmann::json::array();
    for (const auto m : magnetic_range(s))
      marginals.push_back(matrix_to_json(cloning_marginal(spec, 0, m)));
    root["marginal_axis_x"] = marginals;
    emit(opt, root.dump(2));
  } else if (opt.format == "csv") {
    char buf[300];
    std::snprintf(buf, sizeof(buf),
                  "quantity,value\ndevice_loss_bits,%.17g\ndevice_loss_by_states_bits,%.17g\n"
                  "visibility,%.17g\nmixing_weight,%.17g\n",
                  closed, by_states, spec.visibility(), spec.mixing_weight());
    emit(opt, buf);
  } else {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "cloning measurement, %d components, spin %s\n", components,
                  s.str().c_str());
    out += buf;
    out += bits_line("device loss (closed form)", closed, opt.nats);
    out += bits_line("device loss (over states)", by_states, opt.nats);
    std::snprintf(buf, sizeof(buf), "%-28s %.3e\n", "route difference", residual);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-28s %.12f\n", "visibility", spec.visibility());
    out += buf;
    emit(opt, out);
  }
  return rc;
}

int cmd_ordering(const CommonOptions& opt, const std::string& max_spin, int infty_cap_twice) {
  const SpinValue max_s = SpinValue::parse(max_spin);
  OrderingOptions options;
  options.numeric_tol = opt.tolerance;
  options.threads = opt.resolved_threads();
  options.seed = opt.seed;
  if (infty_cap_twice >= 0) options.numeric_infinity_twice_cap = infty_cap_twice;
  const OrderingReport report = ordering_report(max_s, options);

  if (!opt.output.empty()) {
    // x-y data files next to the main artifact, one per quantity
    std::string stem = opt.output;
    if (const auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    std::vector<std::string> quantities;
    for (const auto& row : report.rows)
      if (std::find(quantities.begin(), quantities.end(), row.quantity) == quantities.end())
        quantities.push_back(row.quantity);
    for (const auto& q : quantities) {
      std::string xy = "s,value\n";
      char buf[100];
      for (const auto& row : report.rows)
        if (row.quantity == q) {
          std::snprintf(buf, sizeof(buf), "%.1f,%.17g\n", 0.5 * row.twice_s, row.value);
          xy += buf;
        }
      write_file(stem + "_xy_" + q + ".csv", xy);
    }
  }

  if (opt.format == "json") {
    emit(opt, report.to_json_string());
  } else if (opt.format == "csv") {
    emit(opt, report.to_csv());
    if (!opt.output.empty()) {
      std::string stem = opt.output;
      if (const auto dot = stem.rfind('.'); dot != std::string::npos)
        stem = stem.substr(0, dot);
      write_file(stem + "_checks.csv", report.checks_csv());
    } else {
      std::cout << "\n" << report.checks_csv();
    }
  } else {
    std::string out;
    char buf[200];
    out += "   s  quantity                      value            kind\n";
    for (const auto& row : report.rows) {
      std::snprintf(buf, sizeof(buf), "%4s  %-28s %.12f  %s\n",
                    half_integer_str(row.twice_s).c_str(), row.quantity.c_str(), row.value,
                    row.kind.c_str());
      out += buf;
    }
    out += "\nchecks\n";
    for (const auto& c : report.checks) {
      std::snprintf(buf, sizeof(buf), "  [%s] %-45s lhs=%.9f rhs=%.9f\n",
                    c.pass ? "pass" : "FAIL", c.name.c_str(), c.lhs, c.rhs);
      out += buf;
    }
    out += report.all_pass() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n";
    emit(opt, out);
  }
  return report.all_pass() ? 0 : 1;
}

int cmd_bias(const CommonOptions& opt, const GridOptions& grid_opt,
             const LambdaOptions& lambda_opt) {
  const SpinValue s = SpinValue::parse(opt.spin);
  const AngleGrid grid = resolve_grid(s, grid_opt);
  const LambdaWeights lambdas = resolve_lambdas(s, lambda_opt);
  const double bias = mixed_state_bias(s, lambdas, grid);

  if (opt.format == "json") {
    nlohmann::json root;
    root["spin"] = s.str();
    root["grid_cosines"] = grid.cosines();
    root["bias_bits"] = bias;
    emit(opt, root.dump(2));
  } else if (opt.format == "csv") {
    char buf[100];
    std::snprintf(buf, sizeof(buf), "quantity,value\nbias_bits,%.17g\n", bias);
    emit(opt, buf);
  } else {
    emit(opt, bits_line("mixed-state bias", bias, opt.nats));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic spin measurement uncertainty toolkit"};
  app.require_subcommand(1);

  std::function<int()> run;

  // qtable
  auto opt_qtable = std::make_shared<CommonOptions>();
  auto grid_qtable = std::make_shared<GridOptions>();
  auto lambda_qtable = std::make_shared<LambdaOptions>();
  {
    CLI::App* cmd = app.add_subcommand("qtable", "transition probability table q(m|l,h)");
    add_common(cmd, *opt_qtable);
    add_grid(cmd, *grid_qtable);
    add_lambdas(cmd, *lambda_qtable);
    cmd->callback([&, cmd] {
      const bool lambdas_given =
          cmd->count("--lambdas") > 0 || cmd->count("--uniform-lambdas") > 0;
      run = [=] { return cmd_qtable(*opt_qtable, *grid_qtable, *lambda_qtable, lambdas_given); };
    });
  }

  // minloss
  auto opt_minloss = std::make_shared<CommonOptions>();
  {
    CLI::App* cmd = app.add_subcommand("minloss", "minimum information loss K_s, I_s");
    add_common(cmd, *opt_minloss);
    cmd->callback([&] {
      run = [=] { return cmd_minloss(*opt_minloss); };
    });
  }

  // loss
  auto opt_loss = std::make_shared<CommonOptions>();
  auto grid_loss = std::make_shared<GridOptions>();
  auto lambda_loss = std::make_shared<LambdaOptions>();
  auto dir_loss = std::make_shared<std::string>("0,0,1");
  {
    CLI::App* cmd = app.add_subcommand("loss", "device information loss at given weights/grid");
    add_common(cmd, *opt_loss);
    add_grid(cmd, *grid_loss);
    add_lambdas(cmd, *lambda_loss);
    cmd->add_option("--direction", *dir_loss, "measurement direction nx,ny,nz");
    cmd->callback([&] {
      run = [=] { return cmd_loss(*opt_loss, *grid_loss, *lambda_loss, *dir_loss); };
    });
  }

  // decomposition
  auto opt_dec = std::make_shared<CommonOptions>();
  auto grid_dec = std::make_shared<GridOptions>();
  auto lambda_dec = std::make_shared<LambdaOptions>();
  auto dir_dec = std::make_shared<std::string>("0,0,1");
  {
    CLI::App* cmd =
        app.add_subcommand("decomposition", "visibility and noise POVM of the marginal");
    add_common(cmd, *opt_dec);
    add_grid(cmd, *grid_dec);
    add_lambdas(cmd, *lambda_dec);
    cmd->add_option("--direction", *dir_dec, "measurement direction nx,ny,nz");
    cmd->callback([&] {
      run = [=] { return cmd_decomposition(*opt_dec, *grid_dec, *lambda_dec, *dir_dec); };
    });
  }

  // cloning
  auto opt_cloning = std::make_shared<CommonOptions>();
  auto components = std::make_shared<int>(3);
  {
    CLI::App* cmd = app.add_subcommand("cloning", "cloning-based joint measurement losses");
    add_common(cmd, *opt_cloning);
    cmd->add_option("--components", *components, "number of orthogonal components (2 or 3)")
        ->check(CLI::IsMember({2, 3}));
    cmd->callback([&] {
      run = [=] { return cmd_cloning(*opt_cloning, *components); };
    });
  }

  // ordering
  auto opt_ordering = std::make_shared<CommonOptions>();
  auto max_spin = std::make_shared<std::string>("3");
  auto infty_cap = std::make_shared<int>(-1);
  {
    CLI::App* cmd = app.add_subcommand("ordering", "incompatibility ordering table and checks");
    add_common(cmd, *opt_ordering, /*with_spin=*/false);
    cmd->add_option("--max-spin", *max_spin, "largest spin to tabulate");
    cmd->add_option("--infty-cap", *infty_cap,
                    "largest 2s for which the all-components loss is computed numerically");
    cmd->callback([&] {
      run = [=] { return cmd_ordering(*opt_ordering, *max_spin, *infty_cap); };
    });
  }

  // bias
  auto opt_bias = std::make_shared<CommonOptions>();
  auto grid_bias = std::make_shared<GridOptions>();
  auto lambda_bias = std::make_shared<LambdaOptions>();
  {
    CLI::App* cmd = app.add_subcommand("bias", "mixed-state bias of the approximating component");
    add_common(cmd, *opt_bias);
    add_grid(cmd, *grid_bias);
    add_lambdas(cmd, *lambda_bias);
    cmd->callback([&] {
      run = [=] { return cmd_bias(*opt_bias, *grid_bias, *lambda_bias); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run ? run() : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
