#pragma once

#include "murspin/minimize.hpp"

namespace murspin {

/// Approximate joint measurement of r orthogonal spin components obtained
/// from the optimal r-cloning channel.
struct CloningSpec {
  SpinValue s;
  int components;  // 2 or 3

  CloningSpec(SpinValue spin, int r);

  /// Mixing weight lambda_{d,r} = (d+r)/(r(d+1)) with d = 2s+1.
  double mixing_weight() const;
  /// Visibility of the marginal as a noisy version with the orthogonal
  /// noise (1 - X_i(m))/(2s): eta = (s+r)/(r(s+1)).
  double visibility() const;
};

/// Univariate marginal of the cloning multi-observable along axis
/// i in {0,1,2} (the z axis only for three components):
/// lambda_{d,r} X_i(m) + (1 - lambda_{d,r}) 1/d.
Matrix cloning_marginal(const CloningSpec& spec, int axis, MagneticIndex m);

/// Device information loss of the cloning measurement, closed form:
/// r=3: log2(3(s+1)/(s+3)), r=2: log2(2(s+1)/(s+2)). Bits.
double cloning_device_loss(const CloningSpec& spec);

/// The same loss obtained by maximizing the relative entropy over the
/// eigenstates of one target component, computed from the matrices.
double cloning_device_loss_by_states(const CloningSpec& spec);

/// Covariant spin-1/2 joint-measurement family for 2 or 3 orthogonal
/// components; the univariate marginals are 1/2 + 2 c m S_i, |c| <= 1/sqrt(r).
struct SpinHalfFamilyParam {
  double c;
  int components;

  SpinHalfFamilyParam(double c_value, int r);
};

Matrix spinhalf_family_marginal(const SpinHalfFamilyParam& param, int axis, MagneticIndex m);

/// Device loss of the family member, log2(2/(1+c)) for c >= 0.
double spinhalf_family_device_loss(const SpinHalfFamilyParam& param);

/// Minimum information loss for spin 1/2 with r orthogonal components:
/// I = log2(2/(1 + 1/sqrt(r))), visibility eta = (1 + 1/sqrt(r))/2.
struct SpinHalfMinLoss {
  double info_loss = 0.0;
  double visibility = 0.0;
};

SpinHalfMinLoss spinhalf_min_loss(int r);

/// One tabulated quantity of the ordering report.
struct OrderingRow {
  int twice_s = 0;
  std::string quantity;
  double value = 0.0;
  std::string kind;  // "exact", "upper-bound" or "numeric"
};

/// One inequality check, pass/fail with the compared values.
struct OrderingCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // required lhs <= rhs - margin (or < rhs for margin 0)
  bool pass = false;
};

struct OrderingReport {
  std::vector<OrderingRow> rows;
  std::vector<OrderingCheck> checks;

  bool all_pass() const;
  std::string to_csv() const;
  std::string checks_csv() const;
  std::string to_json_string() const;
};

struct OrderingOptions {
  double numeric_tol = 1e-8;
  /// numeric outer_search for the all-components loss is run for
  /// s <= this cap (doubled); beyond it only bounds are tabulated.
  int numeric_infinity_twice_cap = 6;
  int threads = 1;
  std::uint64_t seed = 12345;
};

/// Tabulates, for every half-integer s up to max_s, the cloning losses
/// (upper bounds on the 2- and 3-component minimum losses), the exact
/// spin-1/2 values and the all-components minimum loss, then evaluates
/// the chain/ordering inequalities over their stated ranges.
OrderingReport ordering_report(SpinValue max_s, const OrderingOptions& options = {});

}  // namespace murspin
