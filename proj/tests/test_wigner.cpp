#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "murspin/wigner.hpp"

using namespace murspin;

namespace {

// independent route: Pade matrix exponential of -i theta Sy
Eigen::MatrixXd d_matrix_pade(SpinValue s, double theta) {
  const auto mats = SpinMatrices::build(s);
  const Matrix arg = std::complex<double>(0.0, -theta) * mats.sy;
  return Matrix(arg.exp()).real();
}

// |d^(s)_{s,m}|^2 = binom(2s, s+m) ((1+x)/2)^(s+m) ((1-x)/2)^(s-m)
double top_row_closed_form(SpinValue s, MagneticIndex m, double x) {
  const int a = (s.twice() + m.twice()) / 2, b = (s.twice() - m.twice()) / 2;
  double binom = 1.0;
  for (int k = 1; k <= a; ++k) binom *= static_cast<double>(b + k) / k;
  return binom * std::pow(0.5 * (1.0 + x), a) * std::pow(0.5 * (1.0 - x), b);
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("d_small basics") {
  for (const int twice : {1, 2, 3, 4}) {
    const SpinValue s(twice);
    for (const auto l : magnetic_range(s))
      for (const auto h : magnetic_range(s))
        CHECK(d_small(s, l, h, 0.0) == doctest::Approx(l == h ? 1.0 : 0.0).epsilon(1e-14));
  }
  const SpinValue half(1);
  const MagneticIndex up(half, 1);
  const double d = d_small(half, up, up, M_PI / 3.0);
  CHECK(d * d == doctest::Approx(0.75).epsilon(1e-14));  // 1/2 + 2 l h cos = 3/4
}

TEST_CASE("d_small agrees with an independent matrix exponential") {
  std::mt19937_64 rng(8001);
  std::uniform_real_distribution<double> th(0.0, M_PI);
  for (const int twice : {1, 2, 3, 5, 8}) {
    const SpinValue s(twice);
    for (int rep = 0; rep < 5; ++rep) {
      const double theta = th(rng);
      const Eigen::MatrixXd expected = d_matrix_pade(s, theta);
      const Eigen::MatrixXd actual = d_matrix(s, theta);
      CHECK((expected - actual).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("d_squared_poly small-spin closed forms") {
  const SpinValue half(1);
  const auto p_half = d_squared_poly(half, MagneticIndex(half, 1), MagneticIndex(half, 1));
  REQUIRE(p_half.degree() == 1);
  CHECK(p_half.coeffs()[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(p_half.coeffs()[1] == doctest::Approx(0.5).epsilon(1e-13));

  const SpinValue one(2);
  const auto p_one = d_squared_poly(one, MagneticIndex(one, 0), MagneticIndex(one, 0));
  REQUIRE(p_one.degree() == 2);
  CHECK(std::abs(p_one.coeffs()[0]) <= 1e-13);
  CHECK(std::abs(p_one.coeffs()[1]) <= 1e-13);
  CHECK(p_one.coeffs()[2] == doctest::Approx(1.0).epsilon(1e-13));

  const SpinValue threehalf(3);
  const auto p = d_squared_poly(threehalf, MagneticIndex(threehalf, 3), MagneticIndex(threehalf, 1));
  // (3/8)(1+x)(1-x^2) = 3/8 + 3/8 x - 3/8 x^2 - 3/8 x^3
  REQUIRE(p.degree() == 3);
  CHECK(p.coeffs()[0] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(p.coeffs()[1] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(p.coeffs()[2] == doctest::Approx(-0.375).epsilon(1e-12));
  CHECK(p.coeffs()[3] == doctest::Approx(-0.375).epsilon(1e-12));
}

TEST_CASE("polynomial matches pointwise |d|^2 and stays in range") {
  for (const int twice : {1, 2, 3, 4, 6, 8}) {
    const SpinValue s(twice);
    const auto table = DSquaredTable::build(s);
    for (const auto l : magnetic_range(s)) {
      for (const auto h : magnetic_range(s)) {
        const auto& poly = table.at(l, h);
        CHECK(poly.degree() <= s.twice());
        for (int t = 0; t < 200; ++t) {
          const double theta = M_PI * t / 199.0;
          const double d = d_small(s, l, h, theta);
          CHECK(std::abs(poly(std::cos(theta)) - d * d) <= 1e-11);
        }
        for (int t = 0; t < 500; ++t) {
          const double x = -1.0 + 2.0 * t / 499.0;
          const double v = poly(x);
          CHECK(v >= -1e-12);
          CHECK(v <= 1.0 + 1e-12);
        }
        // probability normalization over the full interval
        CHECK(std::abs((s.value() + 0.5) * poly.integral(-1.0, 1.0) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("top-row polynomials match the binomial closed form") {
  for (const int twice : {1, 2, 3, 4, 8}) {
    const SpinValue s(twice);
    const MagneticIndex top(s, twice);
    for (const auto m : magnetic_range(s)) {
      const auto poly = d_squared_poly(s, top, m);
      for (int t = 0; t <= 40; ++t) {
        const double x = -1.0 + 2.0 * t / 40.0;
        CHECK(std::abs(poly(x) - top_row_closed_form(s, m, x)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("identity report") {
  CHECK(check_d_identities(SpinValue(1)).max_violation() <= 1e-12);
  CHECK(check_d_identities(SpinValue(4), 50).max_violation() <= 1e-10);
  for (const int twice : {2, 3, 5, 6, 7, 8}) {
    const auto report = check_d_identities(SpinValue(twice));
    CHECK(report.symmetry <= 1e-10);
    CHECK(report.reflection <= 1e-10);
    CHECK(report.orthonormality <= 1e-10);
  }
  // rows of exp(-i pi/2 Sy) are orthonormal for s = 1
  const Eigen::MatrixXd d = d_matrix(SpinValue(2), M_PI / 2.0);
  for (int r = 0; r < 3; ++r) CHECK(d.row(r).squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("integral antiderivative is exact on monomials") {
  const DSquaredPoly p({0.0, 0.0, 1.0});  // x^2
  CHECK(p.integral(-1.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.integral(0.25, 0.5) == doctest::Approx((0.125 - 0.015625) / 3.0).epsilon(1e-15));
}

}  // TEST_SUITE
