#pragma once

#include "murspin/spin.hpp"

namespace murspin {

/// |d^(s)_{l,h}(theta)|^2 as an exact polynomial in x = cos(theta),
/// degree <= 2s, coefficients in the monomial basis (ascending).
class DSquaredPoly {
 public:
  explicit DSquaredPoly(std::vector<double> coeffs);

  double operator()(double x) const;

  /// Exact integral over [lo, hi] via the polynomial antiderivative.
  double integral(double lo, double hi) const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// Wigner small-d matrix element <l| exp(-i theta Sy) |h>, real-valued.
double d_small(SpinValue s, MagneticIndex l, MagneticIndex h, double theta);

/// Full small-d matrix at one angle, rows/cols ordered s, s-1, ..., -s.
Eigen::MatrixXd d_matrix(SpinValue s, double theta);

/// Builds the |d|^2 polynomial for one (l, h) pair by degree-2s
/// interpolation at Chebyshev nodes in x = cos(theta).
DSquaredPoly d_squared_poly(SpinValue s, MagneticIndex l, MagneticIndex h);

/// All (l, h) polynomials of one spin, built from a single set of
/// matrix evaluations. Construction may run on several threads; the
/// result does not depend on the thread count.
class DSquaredTable {
 public:
  static DSquaredTable build(SpinValue s, int threads = 1);

  const DSquaredPoly& at(MagneticIndex l, MagneticIndex h) const;
  SpinValue spin() const { return s_; }

 private:
  DSquaredTable(SpinValue s, std::vector<DSquaredPoly> polys);

  SpinValue s_;
  std::vector<DSquaredPoly> polys_;  // offset(l) * dim + offset(h)
};

/// Residuals of the standard small-d identities, evaluated on a theta grid:
/// symmetry d_{m',m} = (-1)^{m-m'} d_{m,m'} = d_{-m,-m'},
/// reflection |d_{l,m}(theta)|^2 = |d_{-m,l}(pi - theta)|^2,
/// and row/column orthonormality of the matrix.
struct DIdentityReport {
  double symmetry = 0.0;
  double reflection = 0.0;
  double orthonormality = 0.0;

  double max_violation() const;
};

DIdentityReport check_d_identities(SpinValue s, int theta_samples = 50);

}  // namespace murspin
