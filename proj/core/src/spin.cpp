#include "murspin/spin.hpp"

#include <cmath>
#include <complex>
#include <charconv>
#include <stdexcept>

namespace murspin {

namespace {

using namespace std::complex_literals;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

SpinValue::SpinValue(int twice_s) : twice_s_(twice_s) {
  if (twice_s < 1)
    throw std::invalid_argument("SpinValue: 2s must be a positive integer, got " +
                                std::to_string(twice_s));
}

SpinValue SpinValue::parse(std::string_view text) {
  return SpinValue(parse_half_integer(text));
}

std::string SpinValue::str() const { return half_integer_str(twice_s_); }

MagneticIndex::MagneticIndex(SpinValue s, int twice_m) : twice_m_(twice_m) {
  if (std::abs(twice_m) > s.twice() || (twice_m - s.twice()) % 2 != 0)
    throw std::invalid_argument("MagneticIndex: 2m=" + std::to_string(twice_m) +
                                " invalid for s=" + s.str());
}

MagneticIndex MagneticIndex::from_offset(SpinValue s, int offset) {
  return MagneticIndex(s, s.twice() - 2 * offset);
}

std::string MagneticIndex::str() const { return half_integer_str(twice_m_); }

std::vector<MagneticIndex> magnetic_range(SpinValue s) {
  std::vector<MagneticIndex> out;
  out.reserve(s.dimension());
  for (int k = 0; k < s.dimension(); ++k) out.push_back(MagneticIndex::from_offset(s, k));
  return out;
}

std::string half_integer_str(int twice_value) {
  if (twice_value % 2 == 0) return std::to_string(twice_value / 2);
  return std::to_string(twice_value) + "/2";
}

int parse_half_integer(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    int num = 0, den = 0;
    auto r1 = std::from_chars(text.data(), text.data() + slash, num);
    auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
    if (r1.ec != std::errc() || r1.ptr != text.data() + slash || r2.ec != std::errc() ||
        r2.ptr != text.data() + text.size())
      fail();
    if (den == 2) return num;
    if (den == 1) return 2 * num;
    fail();
  }
  // integer or decimal form
  double v = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) fail();
  const double tv = 2.0 * v;
  const double rounded = std::round(tv);
  if (std::abs(tv - rounded) > 1e-9) fail();
  return static_cast<int>(rounded);
}

SpinMatrices SpinMatrices::build(SpinValue s) {
  const int dim = s.dimension();
  Matrix sz = Matrix::Zero(dim, dim);
  Matrix sp = Matrix::Zero(dim, dim);  // ladder S_+
  const double sv = s.value();
  for (int k = 0; k < dim; ++k) sz(k, k) = sv - k;
  // <m+1| S_+ |m> = sqrt(s(s+1) - m(m+1)); row k-1 is m+1 when row k is m.
  for (int k = 1; k < dim; ++k) {
    const double m = sv - k;
    sp(k - 1, k) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
  }
  const Matrix sm = sp.adjoint();
  SpinMatrices out;
  out.sx = 0.5 * (sp + sm);
  out.sy = -0.5i * (sp - sm);
  out.sz = sz;
  return out;
}

Matrix spin_identity(SpinValue s) { return Matrix::Identity(s.dimension(), s.dimension()); }

double Projection::residual() const {
  const double idem = (matrix * matrix - matrix).cwiseAbs().maxCoeff();
  const double tr = std::abs(matrix.trace() - std::complex<double>(1.0, 0.0));
  return std::max(idem, tr);
}

Projection z_projection(SpinValue s, MagneticIndex m) {
  Matrix p = Matrix::Zero(s.dimension(), s.dimension());
  p(m.offset(s), m.offset(s)) = 1.0;
  return Projection{std::move(p)};
}

namespace {

// exp(-i angle H) for Hermitian H via eigendecomposition.
Matrix hermitian_phase_exp(const Matrix& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& u = es.eigenvectors();
  const auto& ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    phases(k) = std::exp(std::complex<double>(0.0, -angle * ev(k)));
  return u * phases.asDiagonal() * u.adjoint();
}

}  // namespace

Matrix rotation_v(SpinValue s, double theta, double phi) {
  const auto mats = SpinMatrices::build(s);
  const Matrix ey = hermitian_phase_exp(mats.sy, theta);
  if (phi == 0.0) return ey;
  // the S_z exponentials are diagonal, apply them as phase scalings
  const int dim = s.dimension();
  Eigen::VectorXcd zphase(dim);
  for (int k = 0; k < dim; ++k)
    zphase(k) = std::exp(std::complex<double>(0.0, -phi * (s.value() - k)));
  return zphase.asDiagonal() * ey * zphase.conjugate().asDiagonal();
}

Matrix rotation_u(SpinValue s, const Vec3& axis, double alpha) {
  if (!near(axis.norm(), 1.0, tolerances().structural))
    throw std::invalid_argument("rotation_u: axis must be a unit vector");
  const auto mats = SpinMatrices::build(s);
  const Matrix h = axis.x() * mats.sx + axis.y() * mats.sy + axis.z() * mats.sz;
  return hermitian_phase_exp(h, alpha);
}

Vec3 polar_direction(double theta, double phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta));
}

Projection eigen_projection(SpinValue s, const Vec3& n, MagneticIndex m) {
  if (!near(n.norm(), 1.0, tolerances().structural))
    throw std::invalid_argument("eigen_projection: n must be a unit vector, |n|=" +
                                std::to_string(n.norm()));
  const double tol = tolerances().unitarity;
  if (near(n.x(), 0.0, tol) && near(n.y(), 0.0, tol)) {
    if (n.z() > 0) return z_projection(s, m);
    return z_projection(s, m.negated(s));  // A_{-k}(m) = Z(-m)
  }
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  double phi = std::atan2(n.y(), n.x());
  if (phi < 0) phi += 2.0 * M_PI;
  const Matrix v = rotation_v(s, theta, phi);
  const Matrix z = z_projection(s, m).matrix;
  return Projection{v * z * v.adjoint()};
}

double outcome_probability(const Matrix& state, const Matrix& povm_element) {
  const double tol = tolerances().structural;
  if (state.rows() != state.cols() || state.rows() != povm_element.rows() ||
      povm_element.rows() != povm_element.cols())
    throw std::invalid_argument("outcome_probability: dimension mismatch");
  if ((state - state.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("outcome_probability: state is not Hermitian");
  if (std::abs(state.trace() - std::complex<double>(1.0, 0.0)) > tol)
    throw std::invalid_argument("outcome_probability: state trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> rho_eig(state);
  if (rho_eig.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("outcome_probability: state is not positive");
  Eigen::SelfAdjointEigenSolver<Matrix> el_eig(povm_element);
  if (el_eig.eigenvalues().minCoeff() < -tol || el_eig.eigenvalues().maxCoeff() > 1.0 + tol)
    throw std::invalid_argument("outcome_probability: element violates 0 <= E <= 1");
  const double p = (state * povm_element).trace().real();
  if (p < -tol || p > 1.0 + tol)
    throw std::invalid_argument("outcome_probability: probability out of range: " +
                                std::to_string(p));
  return std::clamp(p, 0.0, 1.0);
}

BlochState::BlochState(const Vec3& bloch) : r(bloch) {
  if (r.norm() > 1.0 + tolerances().structural)
    throw std::invalid_argument("BlochState: |r| must be <= 1");
}

Matrix BlochState::density() const {
  const SpinValue half(1);
  const auto mats = SpinMatrices::build(half);
  return 0.5 * (spin_identity(half) + 2.0 * (r.x() * mats.sx + r.y() * mats.sy + r.z() * mats.sz));
}

Matrix maximally_mixed(SpinValue s) {
  return spin_identity(s) / static_cast<double>(s.dimension());
}

}  // namespace murspin
