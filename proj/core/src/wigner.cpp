#include "murspin/wigner.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "murspin/detail/parallel.hpp"

namespace murspin {

namespace {

// Real orthogonal exp(-i theta Sy) from one eigendecomposition of Sy.
class SmallDEvaluator {
 public:
  explicit SmallDEvaluator(SpinValue s) : s_(s) {
    const auto mats = SpinMatrices::build(s);
    Eigen::SelfAdjointEigenSolver<Matrix> es(mats.sy);
    u_ = es.eigenvectors();
    ev_ = es.eigenvalues();
  }

  Eigen::MatrixXd at(double theta) const {
    Eigen::VectorXcd phases(ev_.size());
    for (Eigen::Index k = 0; k < ev_.size(); ++k)
      phases(k) = std::exp(std::complex<double>(0.0, -theta * ev_(k)));
    const Matrix d = u_ * phases.asDiagonal() * u_.adjoint();
    return d.real();
  }

 private:
  SpinValue s_;
  Matrix u_;
  Eigen::VectorXd ev_;
};

// Newton interpolation through (x_i, f_i), expanded to monomial
// coefficients. The basis change from Chebyshev nodes to monomials is the
// ill-conditioned step, so it runs in extended precision before the
// coefficients are rounded to double.
std::vector<double> interpolate_monomial(const std::vector<double>& x,
                                         const std::vector<double>& fd) {
  const int n = static_cast<int>(x.size());
  std::vector<long double> f(fd.begin(), fd.end());
  // divided differences in place: f[i] becomes the i-th Newton coefficient
  for (int level = 1; level < n; ++level)
    for (int i = n - 1; i >= level; --i)
      f[i] = (f[i] - f[i - 1]) / (static_cast<long double>(x[i]) - x[i - level]);
  // expand c_0 + (x-x_0)(c_1 + (x-x_1)(...)) from the innermost term
  std::vector<long double> poly{f[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    std::vector<long double> next(poly.size() + 1, 0.0L);
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= x[i] * poly[k];
    }
    next[0] += f[i];
    poly = std::move(next);
  }
  return {poly.begin(), poly.end()};
}

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::cos((2.0 * j + 1.0) * M_PI / (2.0 * n));
  return x;
}

}  // namespace

DSquaredPoly::DSquaredPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("DSquaredPoly: empty coefficient vector");
}

double DSquaredPoly::operator()(double x) const {
  // Horner in extended precision: the coefficients alternate in sign and
  // grow with the degree, while the value stays in [0, 1]
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return static_cast<double>(acc);
}

double DSquaredPoly::integral(double lo, double hi) const {
  auto antiderivative = [this](double x) {
    long double acc = 0.0L;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
      acc = acc * x + static_cast<long double>(coeffs_[k]) / (k + 1);
    return acc * x;
  };
  return static_cast<double>(antiderivative(hi) - antiderivative(lo));
}

double d_small(SpinValue s, MagneticIndex l, MagneticIndex h, double theta) {
  return SmallDEvaluator(s).at(theta)(l.offset(s), h.offset(s));
}

Eigen::MatrixXd d_matrix(SpinValue s, double theta) { return SmallDEvaluator(s).at(theta); }

DSquaredPoly d_squared_poly(SpinValue s, MagneticIndex l, MagneticIndex h) {
  return DSquaredTable::build(s).at(l, h);
}

DSquaredTable::DSquaredTable(SpinValue s, std::vector<DSquaredPoly> polys)
    : s_(s), polys_(std::move(polys)) {}

DSquaredTable DSquaredTable::build(SpinValue s, int threads) {
  const int dim = s.dimension();
  const int n = dim;  // |d|^2 has degree <= 2s, 2s+1 nodes pin it down
  const SmallDEvaluator eval(s);
  const std::vector<double> nodes = chebyshev_nodes(n);

  std::vector<Eigen::MatrixXd> dsq(n);
  for (int j = 0; j < n; ++j) {
    const Eigen::MatrixXd d = eval.at(std::acos(nodes[j]));
    dsq[j] = d.cwiseProduct(d);
  }

  std::vector<DSquaredPoly> polys(dim * dim, DSquaredPoly({0.0}));
  detail::parallel_for(dim * dim, threads, [&](int idx) {
    const int row = idx / dim, col = idx % dim;
    std::vector<double> values(n);
    for (int j = 0; j < n; ++j) values[j] = dsq[j](row, col);
    polys[idx] = DSquaredPoly(interpolate_monomial(nodes, std::move(values)));
  });
  return DSquaredTable(s, std::move(polys));
}

const DSquaredPoly& DSquaredTable::at(MagneticIndex l, MagneticIndex h) const {
  return polys_[l.offset(s_) * s_.dimension() + h.offset(s_)];
}

double DIdentityReport::max_violation() const {
  return std::max({symmetry, reflection, orthonormality});
}

DIdentityReport check_d_identities(SpinValue s, int theta_samples) {
  if (theta_samples < 2) throw std::invalid_argument("check_d_identities: need >= 2 samples");
  const SmallDEvaluator eval(s);
  const int dim = s.dimension();
  DIdentityReport report;
  for (int t = 0; t < theta_samples; ++t) {
    const double theta = M_PI * t / (theta_samples - 1);
    const Eigen::MatrixXd d = eval.at(theta);
    const Eigen::MatrixXd dr = eval.at(M_PI - theta);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        // offsets: a = s - m', b = s - m, so m - m' = a - b
        const double sign = ((a - b) % 2 == 0) ? 1.0 : -1.0;
        report.symmetry = std::max(report.symmetry, std::abs(d(a, b) - sign * d(b, a)));
        // d_{-m,-m'} sits at the mirrored, transposed slot
        report.symmetry =
            std::max(report.symmetry, std::abs(d(a, b) - d(dim - 1 - b, dim - 1 - a)));
        // |d_{l,m}(theta)|^2 = |d_{-m,l}(pi-theta)|^2 with l at offset a, m at offset b
        const double lhs = d(a, b) * d(a, b);
        const double rhs = dr(dim - 1 - b, a) * dr(dim - 1 - b, a);
        report.reflection = std::max(report.reflection, std::abs(lhs - rhs));
      }
    }
    const Eigen::MatrixXd gram_rows = d * d.transpose() - Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd gram_cols = d.transpose() * d - Eigen::MatrixXd::Identity(dim, dim);
    report.orthonormality = std::max(
        {report.orthonormality, gram_rows.cwiseAbs().maxCoeff(), gram_cols.cwiseAbs().maxCoeff()});
  }
  return report;
}

}  // namespace murspin
