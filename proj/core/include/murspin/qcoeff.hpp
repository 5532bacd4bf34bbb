#pragma once

#include "murspin/wigner.hpp"

#include <span>

namespace murspin {

/// Symmetric discretization of [0, pi] into 2s+1 angle bins, stored as
/// the strictly decreasing cosine vector c_0=1 > c_1 > ... > c_{2s+1}=-1
/// with the mirror symmetry c_{2s+1-k} = -c_k. The floor(s) interior
/// cosines above the midpoint are the free parameters.
class AngleGrid {
 public:
  /// Builds the full grid from the free interior cosines (descending,
  /// strictly inside (0,1)). For half-integer spins the midpoint cosine 0
  /// is inserted automatically.
  static AngleGrid from_free_cosines(SpinValue s, std::span<const double> upper);

  /// Validates a full cosine vector of length 2s+2 (endpoints, strict
  /// monotonicity, mirror symmetry within tolerances().unitarity) and
  /// symmetrizes it exactly.
  static AngleGrid from_cosines(SpinValue s, const std::vector<double>& cosines);

  /// cos(theta_k) = (2s+1-2k)/(2s+1): uniform outcomes on the maximally
  /// mixed state.
  static AngleGrid unbiased(SpinValue s);

  /// Grid for the one-free-parameter spins (s = 1, 3/2) with c_1 = a.
  static AngleGrid single_parameter(SpinValue s, double a);

  SpinValue spin() const { return s_; }
  int bins() const { return s_.twice() + 1; }
  double cosine(int k) const { return cosines_.at(k); }
  double theta(int k) const;
  const std::vector<double>& cosines() const { return cosines_; }

  /// The x-interval [c_{j+1}, c_j] of bin j = s - m.
  std::pair<double, double> bin(int j) const;

  std::vector<double> free_cosines() const;

 private:
  AngleGrid(SpinValue s, std::vector<double> cosines);

  SpinValue s_;
  std::vector<double> cosines_;
};

/// Simplex weights lambda_l over l in {-s, ..., s}.
class LambdaWeights {
 public:
  static LambdaWeights uniform(SpinValue s);
  static LambdaWeights point_mass(SpinValue s, MagneticIndex l);
  /// values ordered from l = s down to l = -s; renormalizes drifts below
  /// tolerances().probability, rejects anything worse.
  static LambdaWeights from_values(SpinValue s, std::vector<double> values);

  SpinValue spin() const { return s_; }
  double at(MagneticIndex l) const { return weights_[l.offset(s_)]; }
  double at_offset(int k) const { return weights_.at(k); }
  const std::vector<double>& values() const { return weights_; }

 private:
  LambdaWeights(SpinValue s, std::vector<double> weights);

  SpinValue s_;
  std::vector<double> weights_;
};

/// The transition probabilities q(m|l,h) of one discretization grid:
/// q(m|l,h) = (s+1/2) * integral of |d_{l,h}|^2 over the cosine bin of m.
class QTable {
 public:
  static QTable build(SpinValue s, const AngleGrid& grid, int threads = 1);
  /// Reuses an existing polynomial table (the grid only moves the
  /// integration bounds, the polynomials are grid independent).
  static QTable build(const DSquaredTable& polys, const AngleGrid& grid, int threads = 1);

  SpinValue spin() const { return s_; }
  const AngleGrid& grid() const { return grid_; }

  double q(MagneticIndex m, MagneticIndex l, MagneticIndex h) const;
  double q_offset(int m_off, int l_off, int h_off) const;

  /// sum_l lambda_l q(m|l,m), the visibility row of outcome m.
  double diagonal_sum(const LambdaWeights& lambdas, MagneticIndex m) const;
  /// min_m diagonal_sum.
  double min_diagonal_sum(const LambdaWeights& lambdas) const;

  std::string to_csv() const;
  std::string to_json_string() const;
  static QTable from_json_string(const std::string& text);

 private:
  QTable(SpinValue s, AngleGrid grid, std::vector<double> q);

  SpinValue s_;
  AngleGrid grid_;
  std::vector<double> q_;  // (m_off * dim + l_off) * dim + h_off
};

/// Closed-form q(m|l,h) for s in {1/2, 1, 3/2}, straight from the
/// polynomial tables in a = cos(theta_1), completed by the symmetry
/// relations. Kept independent of QTable::build on purpose: it is the
/// oracle that pins the numeric pipeline down.
double q_closed_form(SpinValue s, double a, MagneticIndex m, MagneticIndex l,
                     MagneticIndex h);

/// The approximating spin component along n:
/// M_{lambda,[n]}(m) = sum_{l,h} q(m|l,h) lambda_l A_n(h),
/// returned as 2s+1 positive matrices summing to the identity,
/// ordered m = s, ..., -s.
std::vector<Matrix> marginal_povm(const QTable& table, const LambdaWeights& lambdas,
                                  const Vec3& n);

/// Outcome distribution of the approximating component in a state,
/// ordered m = s, ..., -s.
std::vector<double> marginal_distribution(const QTable& table, const LambdaWeights& lambdas,
                                          const Vec3& n, const Matrix& state);

}  // namespace murspin
