#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace murspin {

using Matrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

/// Numeric tolerances shared by the structural checks of the library.
/// Structural identities (projector completeness, covariance, POVM
/// normalization) are held to `structural`; unitarity and exact algebraic
/// identities to `unitarity`; probability vectors may drift by `probability`
/// before being rejected.
struct Tolerances {
  double structural = 1e-10;
  double unitarity = 1e-12;
  double probability = 1e-10;
};

/// Mutable module-level tolerance set.
Tolerances& tolerances();

/// Half-integer spin quantum number s, stored exactly as 2s.
/// Valid spins are 1/2, 1, 3/2, ... so twice() is a positive integer.
class SpinValue {
 public:
  explicit SpinValue(int twice_s);

  /// Parses "3/2", "1.5" or "2". Rejects values that are not positive
  /// half-integers.
  static SpinValue parse(std::string_view text);

  int twice() const { return twice_s_; }
  double value() const { return 0.5 * twice_s_; }
  int dimension() const { return twice_s_ + 1; }
  bool is_integer() const { return twice_s_ % 2 == 0; }

  /// Number of free interior discretization cosines, floor(s).
  int free_angle_count() const { return twice_s_ / 2; }

  std::string str() const;

  friend bool operator==(SpinValue a, SpinValue b) { return a.twice_s_ == b.twice_s_; }
  friend bool operator!=(SpinValue a, SpinValue b) { return !(a == b); }

 private:
  int twice_s_;
};

/// Magnetic quantum number m in {-s, ..., s}, stored exactly as 2m.
class MagneticIndex {
 public:
  MagneticIndex(SpinValue s, int twice_m);

  /// The k-th index counted from the top: k=0 is m=s, k=2s is m=-s.
  static MagneticIndex from_offset(SpinValue s, int offset);

  int twice() const { return twice_m_; }
  double value() const { return 0.5 * twice_m_; }

  /// Array offset s - m in 0..2s (0 is the highest weight).
  int offset(SpinValue s) const { return (s.twice() - twice_m_) / 2; }

  MagneticIndex negated(SpinValue s) const { return MagneticIndex(s, -twice_m_); }

  std::string str() const;

  friend bool operator==(MagneticIndex a, MagneticIndex b) { return a.twice_m_ == b.twice_m_; }
  friend bool operator!=(MagneticIndex a, MagneticIndex b) { return !(a == b); }

 private:
  int twice_m_;
};

/// All magnetic indices of s in descending order s, s-1, ..., -s.
std::vector<MagneticIndex> magnetic_range(SpinValue s);

/// Formats a doubled half-integer as "3/2", "-1/2", "2", ...
std::string half_integer_str(int twice_value);

/// Parses the output of half_integer_str (also accepts decimals like "1.5").
/// Returns the doubled value; throws std::invalid_argument on garbage.
int parse_half_integer(std::string_view text);

/// The standard z-basis spin matrices (hbar = 1).
/// sz is diagonal with entries s, s-1, ..., -s and sx, sy come from the
/// ladder operators, so [sx, sy] = i sz and cyclic permutations hold.
struct SpinMatrices {
  Matrix sx, sy, sz;

  static SpinMatrices build(SpinValue s);
};

Matrix spin_identity(SpinValue s);

/// A rank-one Hermitian eigen-projection.
struct Projection {
  Matrix matrix;

  /// Idempotency and trace deviation, max of the two residuals.
  double residual() const;
};

/// Z(m): projection onto the S_z eigenvector of eigenvalue m. Exact.
Projection z_projection(SpinValue s, MagneticIndex m);

/// V(theta, phi) = exp(-i phi Sz) exp(-i theta Sy) exp(i phi Sz), the
/// rotation bringing the z axis onto the polar direction (theta, phi).
Matrix rotation_v(SpinValue s, double theta, double phi);

/// U(R_u(alpha)) = exp(-i alpha u.S) for a unit axis u.
Matrix rotation_u(SpinValue s, const Vec3& axis, double alpha);

/// Polar unit vector n(theta, phi).
Vec3 polar_direction(double theta, double phi);

/// A_n(m): eigen-projection of n.S for the eigenvalue m.
/// n must be a unit vector (checked against tolerances().structural).
/// The n = +-z paths are exact; other directions go through rotation_v.
Projection eigen_projection(SpinValue s, const Vec3& n, MagneticIndex m);

/// Tr(rho E) for a state rho and a POVM element E.
/// Validates trace-one/positivity of rho and 0 <= E <= 1 up to
/// tolerances().structural and throws std::invalid_argument beyond that.
/// The result is clipped to [0,1] only within the same tolerance.
double outcome_probability(const Matrix& state, const Matrix& povm_element);

/// Spin-1/2 state 1/2 (1 + 2 r.S); requires |r| <= 1.
struct BlochState {
  Vec3 r;

  explicit BlochState(const Vec3& bloch);
  Matrix density() const;
};

/// Maximally mixed state 1/(2s+1).
Matrix maximally_mixed(SpinValue s);

}  // namespace murspin
