#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "murspin/spin.hpp"

using namespace murspin;
using murspin::testing::random_unit;

namespace {

Eigen::Matrix3d so3_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

Vec3 rotation_axis_of_v(double phi) { return Vec3(-std::sin(phi), std::cos(phi), 0.0); }

}  // namespace

TEST_SUITE("spin") {

TEST_CASE("half-integer parsing and formatting") {
  CHECK(parse_half_integer("3/2") == 3);
  CHECK(parse_half_integer("-1/2") == -1);
  CHECK(parse_half_integer("1.5") == 3);
  CHECK(parse_half_integer("2") == 4);
  CHECK(parse_half_integer("2/1") == 4);
  CHECK(half_integer_str(3) == "3/2");
  CHECK(half_integer_str(-1) == "-1/2");
  CHECK(half_integer_str(4) == "2");
  CHECK_THROWS_AS(parse_half_integer("0.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_half_integer("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_half_integer("3/4"), std::invalid_argument);
  CHECK_THROWS_AS(SpinValue::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(SpinValue::parse("-1"), std::invalid_argument);
  CHECK(SpinValue::parse("3/2").dimension() == 4);
  CHECK(SpinValue::parse("3/2").free_angle_count() == 1);
  CHECK(SpinValue::parse("2").free_angle_count() == 2);
}

TEST_CASE("magnetic index range and offsets") {
  const SpinValue s(3);
  const auto range = magnetic_range(s);
  REQUIRE(range.size() == 4);
  CHECK(range[0].twice() == 3);
  CHECK(range[3].twice() == -3);
  CHECK(range[1].offset(s) == 1);
  CHECK(range[1].negated(s).twice() == -1);
  CHECK_THROWS_AS(MagneticIndex(s, 2), std::invalid_argument);  // parity mismatch
  CHECK_THROWS_AS(MagneticIndex(s, 5), std::invalid_argument);
}

TEST_CASE("spin matrices: Pauli case and diagonal sz") {
  const auto half = SpinMatrices::build(SpinValue(1));
  CHECK((2.0 * half.sz - (Matrix(2, 2) << 1, 0, 0, -1).finished()).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0).epsilon(1e-15));
  Matrix sx_expect(2, 2), sy_expect(2, 2);
  sx_expect << 0, 1, 1, 0;
  sy_expect << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  CHECK((2.0 * half.sx - sx_expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((2.0 * half.sy - sy_expect).cwiseAbs().maxCoeff() < 1e-15);

  const auto one = SpinMatrices::build(SpinValue(2));
  CHECK(one.sz(0, 0).real() == doctest::Approx(1.0));
  CHECK(one.sz(1, 1).real() == doctest::Approx(0.0));
  CHECK(one.sz(2, 2).real() == doctest::Approx(-1.0));
}

TEST_CASE("commutation and Casimir identities up to s = 10") {
  for (int twice = 1; twice <= 20; ++twice) {
    const SpinValue s(twice);
    const auto m = SpinMatrices::build(s);
    const std::complex<double> i(0.0, 1.0);
    CHECK((m.sx * m.sy - m.sy * m.sx - i * m.sz).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((m.sy * m.sz - m.sz * m.sy - i * m.sx).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((m.sz * m.sx - m.sx * m.sz - i * m.sy).cwiseAbs().maxCoeff() <= 1e-12);
    const double c = s.value() * (s.value() + 1.0);
    CHECK((m.sx * m.sx + m.sy * m.sy + m.sz * m.sz - c * spin_identity(s))
              .cwiseAbs()
              .maxCoeff() <= 1e-12 * c);
    CHECK((m.sx - m.sx.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((m.sy - m.sy.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("rotation_v: identity, unitarity, axis transport") {
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> th(0.0, M_PI), ph(0.0, 2.0 * M_PI);
  for (const int twice : {1, 2, 3, 5, 8}) {
    const SpinValue s(twice);
    CHECK((rotation_v(s, 0.0, 1.3) - spin_identity(s)).cwiseAbs().maxCoeff() <= 1e-12);
    const auto mats = SpinMatrices::build(s);
    for (int rep = 0; rep < 10; ++rep) {
      const double theta = th(rng), phi = ph(rng);
      const Matrix v = rotation_v(s, theta, phi);
      CHECK((v * v.adjoint() - spin_identity(s)).cwiseAbs().maxCoeff() <= 1e-12);
      const Vec3 n = polar_direction(theta, phi);
      const Matrix ns = n.x() * mats.sx + n.y() * mats.sy + n.z() * mats.sz;
      CHECK((v * mats.sz * v.adjoint() - ns).cwiseAbs().maxCoeff() <= 1e-11);
      for (const auto m : magnetic_range(s)) {
        const Matrix lhs = v * z_projection(s, m).matrix * v.adjoint();
        const Matrix rhs = eigen_projection(s, n, m).matrix;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("eigen projections: completeness, reflection, covariance") {
  std::mt19937_64 rng(7002);
  for (const int twice : {1, 2, 3, 4}) {
    const SpinValue s(twice);
    for (int rep = 0; rep < 100; ++rep) {
      const Vec3 n = random_unit(rng);
      Matrix sum = Matrix::Zero(s.dimension(), s.dimension());
      for (const auto m : magnetic_range(s)) sum += eigen_projection(s, n, m).matrix;
      CHECK((sum - spin_identity(s)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    // A_{-n}(m) = A_n(-m)
    for (int rep = 0; rep < 10; ++rep) {
      const Vec3 n = random_unit(rng);
      for (const auto m : magnetic_range(s)) {
        const Matrix lhs = eigen_projection(s, -n, m).matrix;
        const Matrix rhs = eigen_projection(s, n, m.negated(s)).matrix;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
    // covariance under a composition of two v-rotations
    std::uniform_real_distribution<double> th(0.0, M_PI), ph(0.0, 2.0 * M_PI);
    for (int rep = 0; rep < 10; ++rep) {
      const double t1 = th(rng), p1 = ph(rng), t2 = th(rng), p2 = ph(rng);
      const Matrix u = rotation_v(s, t1, p1) * rotation_v(s, t2, p2);
      const Eigen::Matrix3d r = so3_rotation(rotation_axis_of_v(p1), t1) *
                                so3_rotation(rotation_axis_of_v(p2), t2);
      const Vec3 n = random_unit(rng);
      for (const auto m : magnetic_range(s)) {
        const Matrix lhs = u * eigen_projection(s, n, m).matrix * u.adjoint();
        const Matrix rhs = eigen_projection(s, Vec3(r * n), m).matrix;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("eigen_projection exact z paths and input validation") {
  const SpinValue s(1);
  const Matrix up = eigen_projection(s, Vec3(0, 0, 1), MagneticIndex(s, 1)).matrix;
  CHECK(up(0, 0).real() == 1.0);
  CHECK(up(1, 1).real() == 0.0);
  const Matrix down = eigen_projection(s, Vec3(0, 0, -1), MagneticIndex(s, 1)).matrix;
  CHECK(down(1, 1).real() == 1.0);
  CHECK_THROWS_AS(eigen_projection(s, Vec3(0, 0, 2), MagneticIndex(s, 1)),
                  std::invalid_argument);
  std::mt19937_64 rng(3);
  CHECK(eigen_projection(SpinValue(4), random_unit(rng), MagneticIndex(SpinValue(4), 0))
            .residual() <= 1e-12);
}

TEST_CASE("outcome probabilities") {
  const SpinValue s(3);
  for (const auto h : magnetic_range(s)) {
    const Matrix z = z_projection(s, h).matrix;
    CHECK(outcome_probability(z, z) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // Bloch formula 1/2 + m n.r for spin 1/2
  std::mt19937_64 rng(7003);
  const SpinValue half(1);
  for (int rep = 0; rep < 25; ++rep) {
    const Vec3 n = random_unit(rng);
    Vec3 r = random_unit(rng) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Matrix rho = BlochState(r).density();
    for (const auto m : magnetic_range(half)) {
      const double p = outcome_probability(rho, eigen_projection(half, n, m).matrix);
      CHECK(p == doctest::Approx(0.5 + m.value() * n.dot(r)).epsilon(1e-11));
    }
  }
  // maximally mixed state: uniform outcomes
  for (const int twice : {1, 2, 5}) {
    const SpinValue sv(twice);
    const Vec3 n = random_unit(rng);
    for (const auto m : magnetic_range(sv)) {
      const double p = outcome_probability(maximally_mixed(sv), eigen_projection(sv, n, m).matrix);
      CHECK(p == doctest::Approx(1.0 / sv.dimension()).epsilon(1e-12));
    }
  }
}

TEST_CASE("outcome_probability rejects invalid inputs") {
  const SpinValue s(1);
  const Matrix z = z_projection(s, MagneticIndex(s, 1)).matrix;
  CHECK_THROWS_AS(outcome_probability(2.0 * z, z), std::invalid_argument);  // trace 2
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(outcome_probability(neg, z), std::invalid_argument);  // not positive
  CHECK_THROWS_AS(outcome_probability(z, 3.0 * z), std::invalid_argument);  // E > 1
  Matrix nonherm = z;
  nonherm(0, 1) = 0.5;
  CHECK_THROWS_AS(outcome_probability(nonherm, z), std::invalid_argument);
}

TEST_CASE("Bloch states") {
  CHECK_THROWS_AS(BlochState(Vec3(1.1, 0, 0)), std::invalid_argument);
  const Matrix rho = BlochState(Vec3(0, 0, 1)).density();
  CHECK(rho(0, 0).real() == doctest::Approx(1.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(BlochState(Vec3(0.3, -0.4, 0.5)).density());
  CHECK(es.eigenvalues().minCoeff() >= -1e-14);
  CHECK(std::abs(es.eigenvalues().sum() - 1.0) <= 1e-14);
}

}  // TEST_SUITE
