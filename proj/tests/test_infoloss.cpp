#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "murspin/infoloss.hpp"
#include "murspin/minimize.hpp"

using namespace murspin;
using namespace murspin::testing;

TEST_SUITE("infoloss") {

TEST_CASE("ProbVector construction") {
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbVector({1.2, -0.2}), std::invalid_argument);
  const ProbVector drift({0.5 + 3e-11, 0.5});
  CHECK(drift[0] + drift[1] == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(ProbVector::uniform(4)[2] == 0.25);
  CHECK(ProbVector::point_mass(3, 1)[1] == 1.0);
}

TEST_CASE("relative entropy basics") {
  const ProbVector p({1.0, 0.0});
  CHECK(relative_entropy(p, p) == 0.0);
  CHECK(relative_entropy(p, ProbVector({0.75, 0.25})) ==
        doctest::Approx(0.41503749927884382).epsilon(1e-15));
  CHECK(std::isinf(relative_entropy(p, ProbVector({0.0, 1.0}))));
  CHECK(std::isinf(relative_entropy(ProbVector({0.0, 1.0}), p)));
}

TEST_CASE("relative entropy nonnegativity, zero iff equal") {
  std::mt19937_64 rng(10001);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(rep % 5);
    std::vector<double> a(n), b(n);
    double sa = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
      a[i] = unif(rng);
      b[i] = unif(rng);
      sa += a[i];
      sb += b[i];
    }
    for (int i = 0; i < n; ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    const ProbVector pa(a), pb(b);
    const double s = relative_entropy(pa, pb);
    CHECK(s >= 0.0);
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) l1 += std::abs(a[i] - b[i]);
    if (l1 > 1e-3) CHECK(s > 0.0);
    CHECK(relative_entropy(pa, pa) == 0.0);
  }
}

TEST_CASE("device loss closed form, spin 1/2 family") {
  const SpinValue half(1);
  const QTable t = QTable::build(half, AngleGrid::unbiased(half));
  std::mt19937_64 rng(10002);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const double lam = unif(rng);
    const auto lambdas = LambdaWeights::from_values(half, {lam, 1.0 - lam});
    CHECK(device_loss_closed(t, lambdas) ==
          doctest::Approx(std::log2(4.0 / (1.0 + 2.0 * lam))).epsilon(1e-13));
  }
  CHECK(device_loss_closed(t, LambdaWeights::from_values(half, {0.0, 1.0})) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(device_loss_closed(t, LambdaWeights::from_values(half, {1.0, 0.0})) ==
        doctest::Approx(0.41503749927884382).epsilon(1e-14));
}

TEST_CASE("device loss spot value: spin 1 at the unbiased grid") {
  const SpinValue one(2);
  const QTable t = QTable::build(one, AngleGrid::single_parameter(one, 1.0 / 3.0));
  const auto top = LambdaWeights::point_mass(one, MagneticIndex(one, 2));
  CHECK(device_loss_closed(t, top) ==
        doctest::Approx(std::log2(27.0 / 13.0)).epsilon(1e-13));
  CHECK(std::log2(27.0 / 13.0) == doctest::Approx(1.0544477840223764).epsilon(1e-15));
}

TEST_CASE("device loss equals the state-maximization route and ignores n") {
  std::mt19937_64 rng(10003);
  for (const int twice : {1, 2, 3, 4, 5, 6}) {
    const SpinValue s(twice);
    const auto polys = DSquaredTable::build(s);
    for (int rep = 0; rep < 4; ++rep) {
      const QTable t = QTable::build(polys, random_grid(s, rng));
      const auto lambdas = random_lambdas(s, rng);
      const double closed = device_loss_closed(t, lambdas);
      const double by_states = device_loss_by_states(t, lambdas, random_unit(rng));
      CHECK(std::abs(closed - by_states) <= 1e-10);
    }
    // direction independence
    const QTable t = QTable::build(polys, random_grid(s, rng));
    const auto lambdas = random_lambdas(s, rng);
    const double ref = device_loss_by_states(t, lambdas, Vec3(0, 0, 1));
    for (int rep = 0; rep < 20; ++rep)
      CHECK(std::abs(device_loss_by_states(t, lambdas, random_unit(rng)) - ref) <= 1e-10);
  }
  const SpinValue half(1);
  const QTable t = QTable::build(half, AngleGrid::unbiased(half));
  CHECK(device_loss_by_states(t, LambdaWeights::point_mass(half, MagneticIndex(half, 1)),
                              random_unit(rng)) ==
        doctest::Approx(0.41503749927884382).epsilon(1e-12));
}

TEST_CASE("noisy decomposition: spin 1/2 flips the projection") {
  const SpinValue half(1);
  const QTable t = QTable::build(half, AngleGrid::unbiased(half));
  const auto lambdas = LambdaWeights::point_mass(half, MagneticIndex(half, 1));
  std::mt19937_64 rng(10004);
  const Vec3 n = random_unit(rng);
  const auto dec = noisy_decomposition(t, lambdas, n);
  CHECK(dec.visibility == doctest::Approx(0.75).epsilon(1e-14));
  for (const auto m : magnetic_range(half)) {
    const Matrix flipped = eigen_projection(half, n, m.negated(half)).matrix;
    CHECK((dec.noise[m.offset(half)] - flipped).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("noisy decomposition: spin 1 optimal structure") {
  const SpinValue one(2);
  const double a0 = spin1_root_trig();
  const QTable t = QTable::build(one, AngleGrid::single_parameter(one, a0));
  const auto lambdas = LambdaWeights::point_mass(one, MagneticIndex(one, 2));
  const auto dec = noisy_decomposition(t, lambdas, Vec3(0, 0, 1));
  CHECK(dec.visibility == doctest::Approx(0.62308263899335024).epsilon(1e-12));
  // N(0) = (1-kappa)(Z(1)+Z(-1)), N(+-1) = Z(0)/2 + kappa Z(-+1),
  // kappa = (1-a0)/(4(2+a0))
  const double kappa = (1.0 - a0) / (4.0 * (2.0 + a0));
  CHECK(kappa == doctest::Approx(0.056785675918542742).epsilon(1e-13));
  const Matrix z1 = z_projection(one, MagneticIndex(one, 2)).matrix;
  const Matrix z0 = z_projection(one, MagneticIndex(one, 0)).matrix;
  const Matrix zm1 = z_projection(one, MagneticIndex(one, -2)).matrix;
  CHECK((dec.noise[0] - 0.5 * z0 - kappa * zm1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((dec.noise[1] - (1.0 - kappa) * (z1 + zm1)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((dec.noise[2] - 0.5 * z0 - kappa * z1).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("noisy decomposition: reconstruction, POVM noise, loss relation") {
  std::mt19937_64 rng(10005);
  for (const int twice : {1, 2, 3, 5}) {
    const SpinValue s(twice);
    const auto polys = DSquaredTable::build(s);
    for (int rep = 0; rep < 4; ++rep) {
      const QTable t = QTable::build(polys, random_grid(s, rng));
      const auto lambdas = random_lambdas(s, rng);
      const Vec3 n = random_unit(rng);
      const auto dec = noisy_decomposition(t, lambdas, n);
      CHECK(dec.visibility > 0.0);
      CHECK(dec.visibility < 1.0);
      CHECK(dec.reconstruction_residual(t, lambdas, n) <= 1e-10);
      Matrix sum = Matrix::Zero(s.dimension(), s.dimension());
      for (const auto& e : dec.noise) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(e);
        CHECK(es.eigenvalues().minCoeff() >= -1e-11);
        sum += e;
      }
      CHECK((sum - spin_identity(s)).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(device_loss_closed(t, lambdas) ==
            doctest::Approx(-std::log2(dec.visibility)).epsilon(1e-14));
    }
  }
}

TEST_CASE("s_cx: values, equivalence, monotonicity") {
  CHECK(s_cx(0.7, 0.0) == 0.0);
  CHECK(s_cx(-0.3, 0.0) == 0.0);
  CHECK(s_cx(0.5, 1.0) == doctest::Approx(0.41503749927884382).epsilon(1e-15));
  CHECK_THROWS_AS(s_cx(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(s_cx(0.5, 1.5), std::invalid_argument);

  // equals the relative entropy of the spin-1/2 target/approximating pair
  std::mt19937_64 rng(10006);
  const SpinValue half(1);
  const QTable t = QTable::build(half, AngleGrid::unbiased(half));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const double lam = unif(rng);
    const auto lambdas = LambdaWeights::from_values(half, {lam, 1.0 - lam});
    const Vec3 n = random_unit(rng);
    const Vec3 r = random_unit(rng) * unif(rng);
    const Matrix rho = BlochState(r).density();
    std::vector<double> target(2);
    for (const auto m : magnetic_range(half))
      target[m.offset(half)] = outcome_probability(rho, eigen_projection(half, n, m).matrix);
    const double direct = relative_entropy(
        ProbVector(std::move(target)), ProbVector(marginal_distribution(t, lambdas, n, rho)));
    CHECK(std::abs(direct - s_cx(lam - 0.5, n.dot(r))) <= 1e-11);
  }

  // nonincreasing in c at fixed x
  for (int xi = 0; xi < 100; ++xi) {
    const double x = -1.0 + 2.0 * xi / 99.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int ci = 0; ci < 100; ++ci) {
      const double c = -0.99 + 1.98 * ci / 99.0;
      const double v = s_cx(c, x);
      CHECK(v <= prev + 1e-13);
      prev = v;
    }
  }
}

TEST_CASE("mixed-state bias") {
  std::mt19937_64 rng(10007);
  // unbiased grids give exactly uniform outcomes on rho_0, bias 0
  for (const int twice : {1, 2, 3, 4}) {
    const SpinValue s(twice);
    CHECK(mixed_state_bias(s, random_lambdas(s, rng), AngleGrid::unbiased(s)) <= 1e-13);
  }
  // lambda independence and the closed forms in a
  const SpinValue one(2);
  const SpinValue th(3);
  std::uniform_real_distribution<double> ua(0.1, 0.9);
  for (int rep = 0; rep < 10; ++rep) {
    const double a = ua(rng);
    const AngleGrid g1 = AngleGrid::single_parameter(one, a);
    const double b1 = mixed_state_bias(one, random_lambdas(one, rng), g1);
    const double b1_expected = std::log2(4.0 / (27.0 * a * (1.0 - a) * (1.0 - a))) / 3.0;
    CHECK(b1 == doctest::Approx(b1_expected).epsilon(1e-11));
    CHECK(std::abs(mixed_state_bias(one, random_lambdas(one, rng), g1) - b1) <= 1e-12);

    const double b32 = mixed_state_bias(th, random_lambdas(th, rng),
                                        AngleGrid::single_parameter(th, a));
    CHECK(b32 == doctest::Approx(0.5 * std::log2(1.0 / (4.0 * a * (1.0 - a)))).epsilon(1e-11));
  }
  // values at the optimal grids
  const double a1 = spin1_root_trig();
  CHECK(mixed_state_bias(one, LambdaWeights::point_mass(one, MagneticIndex(one, 2)),
                         AngleGrid::single_parameter(one, a1)) ==
        doctest::Approx(0.037178772664007225).epsilon(1e-10));
  const double a32 = spin32_root_newton();
  CHECK(mixed_state_bias(th, LambdaWeights::point_mass(th, MagneticIndex(th, 3)),
                         AngleGrid::single_parameter(th, a32)) ==
        doctest::Approx(0.064428065521469229).epsilon(1e-10));
  // nonzero away from the unbiased point
  CHECK(mixed_state_bias(one, LambdaWeights::uniform(one),
                         AngleGrid::single_parameter(one, 0.6)) > 1e-3);
}

}  // TEST_SUITE
