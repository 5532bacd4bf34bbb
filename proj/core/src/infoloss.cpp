#include "murspin/infoloss.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace murspin {

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("ProbVector: empty");
  double sum = 0.0;
  for (double& v : p_) {
    if (v < -1e-15) throw std::invalid_argument("ProbVector: negative entry");
    v = std::max(v, 0.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerances().probability)
    throw std::invalid_argument("ProbVector: entries sum to " + std::to_string(sum));
  for (double& v : p_) v /= sum;
}

ProbVector ProbVector::uniform(int size) {
  return ProbVector(std::vector<double>(size, 1.0 / size));
}

ProbVector ProbVector::point_mass(int size, int index) {
  std::vector<double> p(size, 0.0);
  p.at(index) = 1.0;
  return ProbVector(std::move(p));
}

double relative_entropy(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: size mismatch");
  double acc = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) return std::numeric_limits<double>::infinity();
    acc += p[k] * std::log2(p[k] / q[k]);
  }
  return std::max(acc, 0.0);
}

double device_loss_closed(const QTable& table, const LambdaWeights& lambdas) {
  return -std::log2(table.min_diagonal_sum(lambdas));
}

double device_loss_closed(SpinValue s, const LambdaWeights& lambdas, const AngleGrid& grid) {
  return device_loss_closed(QTable::build(s, grid), lambdas);
}

double device_loss_by_states(const QTable& table, const LambdaWeights& lambdas, const Vec3& n) {
  const SpinValue s = table.spin();
  double worst = 0.0;
  for (const auto m : magnetic_range(s)) {
    const Matrix state = eigen_projection(s, n, m).matrix;
    std::vector<double> target(s.dimension());
    for (const auto mp : magnetic_range(s))
      target[mp.offset(s)] = outcome_probability(state, eigen_projection(s, n, mp).matrix);
    const ProbVector approx(marginal_distribution(table, lambdas, n, state));
    worst = std::max(worst, relative_entropy(ProbVector(std::move(target)), approx));
  }
  return worst;
}

NoisyDecomposition noisy_decomposition(const QTable& table, const LambdaWeights& lambdas,
                                       const Vec3& n) {
  const SpinValue s = table.spin();
  const int dim = s.dimension();
  const double eta = table.min_diagonal_sum(lambdas);
  if (!(eta > 0.0) || !(eta < 1.0))
    throw std::runtime_error("noisy_decomposition: visibility outside (0,1)");

  NoisyDecomposition out;
  out.visibility = eta;
  out.noise.reserve(dim);
  std::vector<Matrix> projections(dim);
  for (int h_off = 0; h_off < dim; ++h_off)
    projections[h_off] = eigen_projection(s, n, MagneticIndex::from_offset(s, h_off)).matrix;

  for (int m_off = 0; m_off < dim; ++m_off) {
    const auto m = MagneticIndex::from_offset(s, m_off);
    Matrix noise = Matrix::Zero(dim, dim);
    noise += (table.diagonal_sum(lambdas, m) - eta) * projections[m_off];
    for (int h_off = 0; h_off < dim; ++h_off) {
      if (h_off == m_off) continue;
      double w = 0.0;
      for (int l_off = 0; l_off < dim; ++l_off)
        w += lambdas.at_offset(l_off) * table.q_offset(m_off, l_off, h_off);
      noise += w * projections[h_off];
    }
    out.noise.push_back(noise / (1.0 - eta));
  }
  return out;
}

double NoisyDecomposition::reconstruction_residual(const QTable& table,
                                                   const LambdaWeights& lambdas,
                                                   const Vec3& n) const {
  const SpinValue s = table.spin();
  const auto povm = marginal_povm(table, lambdas, n);
  double worst = 0.0;
  for (int m_off = 0; m_off < s.dimension(); ++m_off) {
    const Matrix target =
        eigen_projection(s, n, MagneticIndex::from_offset(s, m_off)).matrix;
    const Matrix rebuilt = visibility * target + (1.0 - visibility) * noise[m_off];
    worst = std::max(worst, (rebuilt - povm[m_off]).cwiseAbs().maxCoeff());
  }
  return worst;
}

double s_cx(double c, double x) {
  if (!(std::abs(c) < 1.0)) throw std::invalid_argument("s_cx: need |c| < 1");
  if (std::abs(x) > 1.0) throw std::invalid_argument("s_cx: need |x| <= 1");
  double acc = 0.0;
  for (const double eps : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + eps * x);
    if (p == 0.0) continue;
    acc += p * std::log2((1.0 + eps * x) / (1.0 + eps * c * x));
  }
  return std::max(acc, 0.0);
}

double mixed_state_bias(const QTable& table, const LambdaWeights& lambdas) {
  const SpinValue s = table.spin();
  const Vec3 k(0.0, 0.0, 1.0);
  const ProbVector approx(marginal_distribution(table, lambdas, k, maximally_mixed(s)));
  return relative_entropy(ProbVector::uniform(s.dimension()), approx);
}

double mixed_state_bias(SpinValue s, const LambdaWeights& lambdas, const AngleGrid& grid) {
  return mixed_state_bias(QTable::build(s, grid), lambdas);
}

}  // namespace murspin
