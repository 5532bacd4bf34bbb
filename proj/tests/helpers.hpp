#pragma once

#include <random>

#include "murspin/qcoeff.hpp"

namespace murspin::testing {

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec3 v(gauss(rng), gauss(rng), gauss(rng));
  while (v.norm() < 1e-3) v = Vec3(gauss(rng), gauss(rng), gauss(rng));
  return v.normalized();
}

/// Random grid with all cosine gaps at least `min_gap`, so every bin keeps
/// a nonvanishing share of every |d|^2 polynomial.
inline AngleGrid random_grid(SpinValue s, std::mt19937_64& rng, double min_gap = 0.06) {
  const int d = s.free_angle_count();
  std::uniform_real_distribution<double> unif(min_gap, 1.0 - min_gap);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> u(d);
    for (double& v : u) v = unif(rng);
    std::sort(u.rbegin(), u.rend());
    bool ok = 1.0 - (d ? u.front() : 0.0) >= min_gap;
    for (int i = 0; ok && i + 1 < d; ++i) ok = u[i] - u[i + 1] >= min_gap;
    if (ok && d) ok = u.back() >= min_gap;
    if (ok) return AngleGrid::from_free_cosines(s, u);
  }
  throw std::runtime_error("random_grid: sampling failed");
}

inline LambdaWeights random_lambdas(SpinValue s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(s.dimension());
  double sum = 0.0;
  for (double& v : w) {
    v = unif(rng);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return LambdaWeights::from_values(s, std::move(w));
}

/// Random density matrix (mixture of random pure states).
inline Matrix random_state(SpinValue s, std::mt19937_64& rng) {
  const int dim = s.dimension();
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace murspin::testing
