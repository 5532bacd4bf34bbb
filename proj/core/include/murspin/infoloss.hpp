#pragma once

#include "murspin/qcoeff.hpp"

namespace murspin {

/// A normalized probability vector over the outcomes m = s, ..., -s.
/// Construction renormalizes drifts below tolerances().probability and
/// rejects anything larger; entries must be nonnegative.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> p);

  static ProbVector uniform(int size);
  static ProbVector point_mass(int size, int index);

  double operator[](size_t k) const { return p_[k]; }
  size_t size() const { return p_.size(); }
  const std::vector<double>& values() const { return p_; }

 private:
  std::vector<double> p_;
};

/// S(p||q) = sum_m p(m) log2(p(m)/q(m)) in bits. 0 log 0 = 0; the result
/// is +infinity when p charges a point that q does not. Infinity is a
/// value here, not an error.
double relative_entropy(const ProbVector& p, const ProbVector& q);

/// Device information loss of the covariant measurement (lambda, grid):
/// Delta = log2( 1 / min_m sum_l lambda_l q(m|l,m) ), in bits.
double device_loss_closed(const QTable& table, const LambdaWeights& lambdas);
double device_loss_closed(SpinValue s, const LambdaWeights& lambdas, const AngleGrid& grid);

/// Same quantity computed the long way: the maximum over the
/// eigen-projection states of n.S of the relative entropy between target
/// and approximating distributions. Independent cross-check of
/// device_loss_closed; the value must not depend on n.
double device_loss_by_states(const QTable& table, const LambdaWeights& lambdas, const Vec3& n);

/// Noisy-version split M(m) = eta A_n(m) + (1-eta) N(m) with the largest
/// possible visibility eta.
struct NoisyDecomposition {
  double visibility = 0.0;
  std::vector<Matrix> noise;  // a POVM, ordered m = s, ..., -s

  /// max_m || eta A_n(m) + (1-eta) N(m) - M(m) ||_max
  double reconstruction_residual(const QTable& table, const LambdaWeights& lambdas,
                                 const Vec3& n) const;
};

NoisyDecomposition noisy_decomposition(const QTable& table, const LambdaWeights& lambdas,
                                       const Vec3& n);

/// The spin-1/2 two-point relative entropy
///   s(c,x) = (1+x)/2 log2((1+x)/(1+cx)) + (1-x)/2 log2((1-x)/(1-cx)),
/// |c| < 1, |x| <= 1. Nonincreasing in c for fixed x.
double s_cx(double c, double x);

/// Relative entropy between the uniform distribution and the outcome
/// distribution of the approximating component on the maximally mixed
/// state. Zero exactly when the grid is the unbiased one.
double mixed_state_bias(const QTable& table, const LambdaWeights& lambdas);
double mixed_state_bias(SpinValue s, const LambdaWeights& lambdas, const AngleGrid& grid);

}  // namespace murspin
