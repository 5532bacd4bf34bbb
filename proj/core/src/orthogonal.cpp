#include "murspin/orthogonal.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace murspin {

namespace {

const Vec3 kAxes[3] = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

CloningSpec::CloningSpec(SpinValue spin, int r) : s(spin), components(r) {
  if (r != 2 && r != 3)
    throw std::invalid_argument("CloningSpec: components must be 2 or 3, got " +
                                std::to_string(r));
}

double CloningSpec::mixing_weight() const {
  const double d = s.dimension();
  return (d + components) / (components * (d + 1.0));
}

double CloningSpec::visibility() const {
  const double sv = s.value();
  return (sv + components) / (components * (sv + 1.0));
}

Matrix cloning_marginal(const CloningSpec& spec, int axis, MagneticIndex m) {
  if (axis < 0 || axis >= spec.components)
    throw std::invalid_argument("cloning_marginal: axis " + std::to_string(axis) +
                                " out of range for r=" + std::to_string(spec.components));
  const double lambda = spec.mixing_weight();
  const Matrix x = eigen_projection(spec.s, kAxes[axis], m).matrix;
  return lambda * x + (1.0 - lambda) / spec.s.dimension() * spin_identity(spec.s);
}

double cloning_device_loss(const CloningSpec& spec) {
  const double sv = spec.s.value();
  if (spec.components == 3) return std::log2(3.0 * (sv + 1.0) / (sv + 3.0));
  return std::log2(2.0 * (sv + 1.0) / (sv + 2.0));
}

double cloning_device_loss_by_states(const CloningSpec& spec) {
  const SpinValue s = spec.s;
  const int dim = s.dimension();
  std::vector<Matrix> target(dim), approx(dim);
  for (const auto m : magnetic_range(s)) {
    target[m.offset(s)] = eigen_projection(s, kAxes[0], m).matrix;
    approx[m.offset(s)] = cloning_marginal(spec, 0, m);
  }
  double worst = 0.0;
  for (int k = 0; k < dim; ++k) {
    const Matrix& state = target[k];
    std::vector<double> p(dim), q(dim);
    for (int j = 0; j < dim; ++j) {
      p[j] = outcome_probability(state, target[j]);
      q[j] = outcome_probability(state, approx[j]);
    }
    worst = std::max(worst, relative_entropy(ProbVector(std::move(p)), ProbVector(std::move(q))));
  }
  return worst;
}

SpinHalfFamilyParam::SpinHalfFamilyParam(double c_value, int r) : c(c_value), components(r) {
  if (r != 2 && r != 3)
    throw std::invalid_argument("SpinHalfFamilyParam: components must be 2 or 3");
  if (std::abs(c) > 1.0 / std::sqrt(static_cast<double>(r)) + 1e-12)
    throw std::invalid_argument("SpinHalfFamilyParam: need |c| <= 1/sqrt(r)");
}

Matrix spinhalf_family_marginal(const SpinHalfFamilyParam& param, int axis, MagneticIndex m) {
  if (axis < 0 || axis >= param.components)
    throw std::invalid_argument("spinhalf_family_marginal: axis out of range");
  const SpinValue half(1);
  const auto mats = SpinMatrices::build(half);
  const Matrix si = axis == 0 ? mats.sx : (axis == 1 ? mats.sy : mats.sz);
  return 0.5 * spin_identity(half) + 2.0 * param.c * m.value() * si;
}

double spinhalf_family_device_loss(const SpinHalfFamilyParam& param) {
  return std::log2(2.0 / (1.0 + param.c));
}

SpinHalfMinLoss spinhalf_min_loss(int r) {
  if (r != 2 && r != 3) throw std::invalid_argument("spinhalf_min_loss: r must be 2 or 3");
  SpinHalfMinLoss out;
  out.visibility = 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(r)));
  out.info_loss = -std::log2(out.visibility);
  return out;
}

bool OrderingReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string OrderingReport::to_csv() const {
  std::string out = "s,quantity,value,kind\n";
  for (const auto& r : rows)
    out += half_integer_str(r.twice_s) + "," + r.quantity + "," + format_double(r.value) +
           "," + r.kind + "\n";
  return out;
}

std::string OrderingReport::checks_csv() const {
  std::string out = "check,lhs,rhs,margin,pass\n";
  for (const auto& c : checks)
    out += c.name + "," + format_double(c.lhs) + "," + format_double(c.rhs) + "," +
           format_double(c.margin) + "," + (c.pass ? "true" : "false") + "\n";
  return out;
}

std::string OrderingReport::to_json_string() const {
  nlohmann::json root;
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : rows)
    rj.push_back({{"s", half_integer_str(r.twice_s)},
                  {"quantity", r.quantity},
                  {"value", r.value},
                  {"kind", r.kind}});
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : checks)
    cj.push_back({{"check", c.name},
                  {"lhs", c.lhs},
                  {"rhs", c.rhs},
                  {"margin", c.margin},
                  {"pass", c.pass}});
  root["rows"] = rj;
  root["checks"] = cj;
  root["all_pass"] = all_pass();
  return root.dump(2);
}

OrderingReport ordering_report(SpinValue max_s, const OrderingOptions& options) {
  OrderingReport report;
  const double exact_margin = 1e-12;

  // exact anchors
  const double i_half_inf = analytic_solution(SpinValue(1)).info_loss;
  const double i_one_inf = analytic_solution(SpinValue(2)).info_loss;
  const double i_threehalf_inf = analytic_solution(SpinValue(3)).info_loss;
  const auto half_r2 = spinhalf_min_loss(2);
  const auto half_r3 = spinhalf_min_loss(3);

  for (int twice = 1; twice <= max_s.twice(); ++twice) {
    const SpinValue s(twice);
    const CloningSpec cl2(s, 2), cl3(s, 3);
    report.rows.push_back({twice, "delta_cloning_r2", cloning_device_loss(cl2), "upper-bound"});
    report.rows.push_back({twice, "delta_cloning_r3", cloning_device_loss(cl3), "upper-bound"});
    if (twice == 1) {
      report.rows.push_back({twice, "min_loss_r2", half_r2.info_loss, "exact"});
      report.rows.push_back({twice, "min_loss_r3", half_r3.info_loss, "exact"});
    }
    if (twice <= 3) {
      report.rows.push_back(
          {twice, "min_loss_all_components", analytic_solution(s).info_loss, "exact"});
    } else if (twice <= options.numeric_infinity_twice_cap) {
      OuterOptions outer;
      outer.tol = options.numeric_tol;
      outer.seed = options.seed;
      outer.threads = options.threads;
      report.rows.push_back(
          {twice, "min_loss_all_components", outer_search(s, outer).info_loss, "numeric"});
    }
  }

  auto add_check = [&](std::string name, double lhs, double rhs, double margin, bool pass) {
    report.checks.push_back({std::move(name), lhs, rhs, margin, pass});
  };

  // chain 0 < I_1/2[A2] <= I_1/2[A3] <= I_1/2[Ainf]
  add_check("chain: 0 < I_1/2[A2]", 0.0, half_r2.info_loss, exact_margin,
            half_r2.info_loss > exact_margin);
  add_check("chain: I_1/2[A2] <= I_1/2[A3]", half_r2.info_loss, half_r3.info_loss, exact_margin,
            half_r2.info_loss <= half_r3.info_loss - exact_margin);
  add_check("chain: I_1/2[A3] <= I_1/2[Ainf]", half_r3.info_loss, i_half_inf, exact_margin,
            half_r3.info_loss <= i_half_inf - exact_margin);

  // small-spin growth I_1/2 < I_1 < I_3/2
  if (max_s.twice() >= 2)
    add_check("growth: I_1/2[Ainf] < I_1[Ainf]", i_half_inf, i_one_inf, exact_margin,
              i_half_inf < i_one_inf - exact_margin);
  if (max_s.twice() >= 3)
    add_check("growth: I_1[Ainf] < I_3/2[Ainf]", i_one_inf, i_threehalf_inf, exact_margin,
              i_one_inf < i_threehalf_inf - exact_margin);

  // bounds of the cloning losses over the tabulated range
  auto max_cloning = [&](int r, int twice_cap) {
    double worst = 0.0;
    for (int twice = 1; twice <= std::min(max_s.twice(), twice_cap); ++twice)
      worst = std::max(worst, cloning_device_loss(CloningSpec(SpinValue(twice), r)));
    return worst;
  };
  add_check("bounds: delta_cl_r2 <= 1", max_cloning(2, max_s.twice()), 1.0, exact_margin,
            max_cloning(2, max_s.twice()) <= 1.0 - exact_margin);
  add_check("bounds: delta_cl_r3 <= log2(3)", max_cloning(3, max_s.twice()), std::log2(3.0),
            exact_margin, max_cloning(3, max_s.twice()) <= std::log2(3.0) - exact_margin);
  add_check("bounds: delta_cl_r3 <= 1 (s <= 3)", max_cloning(3, 6), 1.0, exact_margin,
            max_cloning(3, 6) <= 1.0 + exact_margin);

  // ordering lines against the exact all-component anchors
  add_check("order: delta_cl_r2 <= I_1[Ainf] (s <= 3)", max_cloning(2, 6), i_one_inf,
            exact_margin, max_cloning(2, 6) <= i_one_inf - exact_margin);
  add_check("order: I_1[Ainf] < 1", i_one_inf, 1.0, exact_margin,
            i_one_inf < 1.0 - exact_margin);
  add_check("order: delta_cl_r3 < I_1[Ainf] (s <= 1)", max_cloning(3, 2), i_one_inf,
            exact_margin, max_cloning(3, 2) < i_one_inf - exact_margin);
  add_check("order: delta_cl_r2 < I_3/2[Ainf] (s <= 11)", max_cloning(2, 22), i_threehalf_inf,
            exact_margin, max_cloning(2, 22) < i_threehalf_inf - exact_margin);
  add_check("order: delta_cl_r3 < I_3/2[Ainf] (s <= 2)", max_cloning(3, 4), i_threehalf_inf,
            exact_margin, max_cloning(3, 4) < i_threehalf_inf - exact_margin);

  // the coincidence delta(s=1, r=3) = delta(s=2, r=2) = log2(3/2)
  if (max_s.twice() >= 4) {
    const double lhs = cloning_device_loss(CloningSpec(SpinValue(2), 3));
    const double rhs = cloning_device_loss(CloningSpec(SpinValue(4), 2));
    add_check("equality: delta(s=1,r=3) == delta(s=2,r=2)", lhs, rhs, exact_margin,
              std::abs(lhs - rhs) <= exact_margin);
  }

  return report;
}

}  // namespace murspin
