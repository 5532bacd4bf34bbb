#include "murspin/qcoeff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "murspin/detail/parallel.hpp"

namespace murspin {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

AngleGrid::AngleGrid(SpinValue s, std::vector<double> cosines)
    : s_(s), cosines_(std::move(cosines)) {}

AngleGrid AngleGrid::from_free_cosines(SpinValue s, std::span<const double> upper) {
  const int d = s.free_angle_count();
  if (static_cast<int>(upper.size()) != d)
    throw std::invalid_argument("AngleGrid: expected " + std::to_string(d) +
                                " free cosines for s=" + s.str());
  double prev = 1.0;
  for (double c : upper) {
    if (!(c < prev) || !(c > 0.0))
      throw std::invalid_argument("AngleGrid: free cosines must satisfy 1 > c_1 > ... > 0");
    prev = c;
  }
  std::vector<double> front{1.0};
  front.insert(front.end(), upper.begin(), upper.end());
  std::vector<double> full(front);
  if ((s.twice() + 2) % 2 == 1) full.push_back(0.0);
  for (auto it = front.rbegin(); it != front.rend(); ++it) full.push_back(-*it);
  return AngleGrid(s, std::move(full));
}

AngleGrid AngleGrid::from_cosines(SpinValue s, const std::vector<double>& cosines) {
  const size_t n = static_cast<size_t>(s.twice()) + 2;
  if (cosines.size() != n)
    throw std::invalid_argument("AngleGrid: expected " + std::to_string(n) + " cosines");
  const double tol = tolerances().unitarity;
  if (std::abs(cosines.front() - 1.0) > tol || std::abs(cosines.back() + 1.0) > tol)
    throw std::invalid_argument("AngleGrid: endpoints must be cos(0)=1 and cos(pi)=-1");
  for (size_t k = 0; k + 1 < n; ++k)
    if (!(cosines[k] > cosines[k + 1]))
      throw std::invalid_argument("AngleGrid: cosines must be strictly decreasing");
  for (size_t k = 0; k < n; ++k)
    if (std::abs(cosines[k] + cosines[n - 1 - k]) > tol)
      throw std::invalid_argument("AngleGrid: grid must be symmetric, c_{2s+1-k} = -c_k");
  // symmetrize exactly
  std::vector<double> fixed(n);
  for (size_t k = 0; k < n; ++k) fixed[k] = 0.5 * (cosines[k] - cosines[n - 1 - k]);
  fixed.front() = 1.0;
  fixed.back() = -1.0;
  return AngleGrid(s, std::move(fixed));
}

AngleGrid AngleGrid::unbiased(SpinValue s) {
  const int n = s.twice() + 2;
  std::vector<double> cosines(n);
  for (int k = 0; k < n; ++k)
    cosines[k] = static_cast<double>(s.twice() + 1 - 2 * k) / (s.twice() + 1);
  return AngleGrid(s, std::move(cosines));
}

AngleGrid AngleGrid::single_parameter(SpinValue s, double a) {
  if (s.free_angle_count() != 1)
    throw std::invalid_argument("AngleGrid::single_parameter needs floor(s) = 1, got s=" +
                                s.str());
  const double upper[] = {a};
  return from_free_cosines(s, upper);
}

double AngleGrid::theta(int k) const {
  return std::acos(std::clamp(cosines_.at(k), -1.0, 1.0));
}

std::pair<double, double> AngleGrid::bin(int j) const {
  return {cosines_.at(j + 1), cosines_.at(j)};
}

std::vector<double> AngleGrid::free_cosines() const {
  return {cosines_.begin() + 1, cosines_.begin() + 1 + s_.free_angle_count()};
}

LambdaWeights::LambdaWeights(SpinValue s, std::vector<double> weights)
    : s_(s), weights_(std::move(weights)) {}

LambdaWeights LambdaWeights::uniform(SpinValue s) {
  return LambdaWeights(s, std::vector<double>(s.dimension(), 1.0 / s.dimension()));
}

LambdaWeights LambdaWeights::point_mass(SpinValue s, MagneticIndex l) {
  std::vector<double> w(s.dimension(), 0.0);
  w[l.offset(s)] = 1.0;
  return LambdaWeights(s, std::move(w));
}

LambdaWeights LambdaWeights::from_values(SpinValue s, std::vector<double> values) {
  if (static_cast<int>(values.size()) != s.dimension())
    throw std::invalid_argument("LambdaWeights: expected " + std::to_string(s.dimension()) +
                                " weights");
  double sum = 0.0;
  for (double& v : values) {
    if (v < -1e-15) throw std::invalid_argument("LambdaWeights: negative weight");
    v = std::max(v, 0.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerances().probability)
    throw std::invalid_argument("LambdaWeights: weights sum to " + std::to_string(sum));
  for (double& v : values) v /= sum;
  return LambdaWeights(s, std::move(values));
}

QTable::QTable(SpinValue s, AngleGrid grid, std::vector<double> q)
    : s_(s), grid_(std::move(grid)), q_(std::move(q)) {}

QTable QTable::build(SpinValue s, const AngleGrid& grid, int threads) {
  return build(DSquaredTable::build(s, threads), grid, threads);
}

QTable QTable::build(const DSquaredTable& polys, const AngleGrid& grid, int threads) {
  const SpinValue s = polys.spin();
  if (grid.spin() != s) throw std::invalid_argument("QTable: grid spin mismatch");
  const int dim = s.dimension();
  const double weight = s.value() + 0.5;
  std::vector<double> q(static_cast<size_t>(dim) * dim * dim);
  detail::parallel_for(dim * dim, threads, [&](int idx) {
    const int l_off = idx / dim, h_off = idx % dim;
    const auto& poly =
        polys.at(MagneticIndex::from_offset(s, l_off), MagneticIndex::from_offset(s, h_off));
    for (int m_off = 0; m_off < dim; ++m_off) {
      const auto [lo, hi] = grid.bin(m_off);
      q[(static_cast<size_t>(m_off) * dim + l_off) * dim + h_off] =
          weight * poly.integral(lo, hi);
    }
  });
  return QTable(s, grid, std::move(q));
}

double QTable::q(MagneticIndex m, MagneticIndex l, MagneticIndex h) const {
  return q_offset(m.offset(s_), l.offset(s_), h.offset(s_));
}

double QTable::q_offset(int m_off, int l_off, int h_off) const {
  const int dim = s_.dimension();
  return q_.at((static_cast<size_t>(m_off) * dim + l_off) * dim + h_off);
}

double QTable::diagonal_sum(const LambdaWeights& lambdas, MagneticIndex m) const {
  const int m_off = m.offset(s_);
  double acc = 0.0;
  for (int l_off = 0; l_off < s_.dimension(); ++l_off)
    acc += lambdas.at_offset(l_off) * q_offset(m_off, l_off, m_off);
  return acc;
}

double QTable::min_diagonal_sum(const LambdaWeights& lambdas) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto m : magnetic_range(s_)) best = std::min(best, diagonal_sum(lambdas, m));
  return best;
}

std::string QTable::to_csv() const {
  std::string out = "m,l,h,q\n";
  for (const auto m : magnetic_range(s_))
    for (const auto l : magnetic_range(s_))
      for (const auto h : magnetic_range(s_))
        out += m.str() + "," + l.str() + "," + h.str() + "," + format_double(q(m, l, h)) + "\n";
  return out;
}

std::string QTable::to_json_string() const {
  nlohmann::json root;
  root["spin"] = s_.str();
  root["grid"]["cosines"] = grid_.cosines();
  nlohmann::json& q = root["q"];
  for (const auto m : magnetic_range(s_)) {
    nlohmann::json& by_l = q[m.str()];
    for (const auto l : magnetic_range(s_)) {
      nlohmann::json& by_h = by_l[l.str()];
      for (const auto h : magnetic_range(s_)) by_h[h.str()] = this->q(m, l, h);
    }
  }
  return root.dump(2);
}

QTable QTable::from_json_string(const std::string& text) {
  const nlohmann::json root = nlohmann::json::parse(text);
  const SpinValue s = SpinValue::parse(root.at("spin").get<std::string>());
  const auto cos_list = root.at("grid").at("cosines").get<std::vector<double>>();
  AngleGrid grid = AngleGrid::from_cosines(s, cos_list);
  const int dim = s.dimension();
  std::vector<double> q(static_cast<size_t>(dim) * dim * dim);
  const nlohmann::json& jq = root.at("q");
  for (const auto m : magnetic_range(s))
    for (const auto l : magnetic_range(s))
      for (const auto h : magnetic_range(s))
        q[(static_cast<size_t>(m.offset(s)) * dim + l.offset(s)) * dim + h.offset(s)] =
            jq.at(m.str()).at(l.str()).at(h.str()).get<double>();
  return QTable(s, std::move(grid), std::move(q));
}

namespace {

double q_spin1(double a, int tm, int tl, int th) {
  // canonical form: m >= 0, then l >= 0
  if (tm < 0) return q_spin1(a, -tm, tl, -th);
  if (tl < 0) return q_spin1(a, tm, -tl, -th);
  const double one_m = 1.0 - a, one_p = 1.0 + a;
  if (tm == 2) {    // m = 1
    if (tl == 2) {  // l = 1
      if (th == 2) return 1.0 - one_p * one_p * one_p / 8.0;
      if (th == 0) return (2.0 + a) * one_m * one_m / 4.0;
      return one_m * one_m * one_m / 8.0;  // h = -1
    }
    // l = 0
    if (th == 0) return (1.0 - a * a * a) / 2.0;
    return (2.0 + a) * one_m * one_m / 4.0;  // h = +-1
  }
  // m = 0
  if (tl == 2) {
    if (th == 0) return 0.5 * a * (3.0 - a * a);
    return 0.25 * a * (3.0 + a * a);  // h = +-1
  }
  if (th == 0) return a * a * a;
  return 0.5 * a * (3.0 - a * a);  // l = 0, h = +-1
}

double q_spin32(double a, int tm, int tl, int th) {
  if (tm < 0) return q_spin32(a, -tm, tl, -th);
  if (tl < 0) return q_spin32(a, tm, -tl, -th);
  const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
  if (tm == 3) {    // m = 3/2
    if (tl == 3) {  // l = 3/2
      switch (th) {
        case 3: return (15.0 - 4.0 * a - 6.0 * a2 - 4.0 * a3 - a4) / 16.0;
        case 1: return (11.0 - 12.0 * a - 6.0 * a2 + 4.0 * a3 + 3.0 * a4) / 16.0;
        case -1: return (5.0 - 12.0 * a + 6.0 * a2 + 4.0 * a3 - 3.0 * a4) / 16.0;
        default: return (1.0 - 4.0 * a + 6.0 * a2 - 4.0 * a3 + a4) / 16.0;
      }
    }
    // l = 1/2
    switch (th) {
      case 1: return (7.0 - 4.0 * a + 10.0 * a2 - 4.0 * a3 - 9.0 * a4) / 16.0;
      case -1: return (9.0 - 4.0 * a - 10.0 * a2 - 4.0 * a3 + 9.0 * a4) / 16.0;
      default: return q_spin32(a, tm, th, tl);  // |h| = 3/2 via q(m|l,h) = q(m|h,l)
    }
  }
  // m = 1/2
  if (tl == 3) {
    switch (th) {
      case 3: return a * (4.0 + 6.0 * a + 4.0 * a2 + a3) / 16.0;
      case 1: return a * (12.0 + 6.0 * a - 4.0 * a2 - 3.0 * a3) / 16.0;
      case -1: return a * (12.0 - 6.0 * a - 4.0 * a2 + 3.0 * a3) / 16.0;
      default: return a * (4.0 - 6.0 * a + 4.0 * a2 - a3) / 16.0;
    }
  }
  // l = 1/2
  switch (th) {
    case 1: return a * (4.0 - 10.0 * a + 4.0 * a2 + 9.0 * a3) / 16.0;
    case -1: return a * (4.0 + 10.0 * a + 4.0 * a2 - 9.0 * a3) / 16.0;
    default: return q_spin32(a, tm, th, tl);
  }
}

}  // namespace

double q_closed_form(SpinValue s, double a, MagneticIndex m, MagneticIndex l,
                     MagneticIndex h) {
  if (s.twice() > 3)
    throw std::invalid_argument("q_closed_form: no closed form beyond s=3/2, got s=" + s.str());
  if (s.twice() == 1) return 0.5 + 2.0 * l.value() * h.value() * m.value();
  if (!(a > 0.0) || !(a < 1.0))
    throw std::invalid_argument("q_closed_form: a must lie in (0,1)");
  if (s.twice() == 2) return q_spin1(a, m.twice(), l.twice(), h.twice());
  return q_spin32(a, m.twice(), l.twice(), h.twice());
}

std::vector<Matrix> marginal_povm(const QTable& table, const LambdaWeights& lambdas,
                                  const Vec3& n) {
  const SpinValue s = table.spin();
  const int dim = s.dimension();
  if (std::abs(n.norm() - 1.0) > tolerances().structural)
    throw std::invalid_argument("marginal_povm: n must be a unit vector");

  std::vector<Matrix> povm;
  povm.reserve(dim);
  const double ztol = tolerances().unitarity;
  const bool plus_k = std::abs(n.x()) <= ztol && std::abs(n.y()) <= ztol && n.z() > 0;
  const bool minus_k = std::abs(n.x()) <= ztol && std::abs(n.y()) <= ztol && n.z() < 0;
  Matrix v;
  if (!plus_k && !minus_k) {
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    double phi = std::atan2(n.y(), n.x());
    if (phi < 0) phi += 2.0 * M_PI;
    v = rotation_v(s, theta, phi);
  }
  for (int m_off = 0; m_off < dim; ++m_off) {
    Matrix diag = Matrix::Zero(dim, dim);
    for (int h_off = 0; h_off < dim; ++h_off) {
      double w = 0.0;
      for (int l_off = 0; l_off < dim; ++l_off)
        w += lambdas.at_offset(l_off) * table.q_offset(m_off, l_off, h_off);
      // A_{-k}(h) = Z(-h): reversed slot on the minus-z axis
      diag(minus_k ? dim - 1 - h_off : h_off, minus_k ? dim - 1 - h_off : h_off) = w;
    }
    povm.push_back(plus_k || minus_k ? diag : Matrix(v * diag * v.adjoint()));
  }
  return povm;
}

std::vector<double> marginal_distribution(const QTable& table, const LambdaWeights& lambdas,
                                          const Vec3& n, const Matrix& state) {
  const SpinValue s = table.spin();
  const int dim = s.dimension();
  std::vector<double> target(dim);
  for (int h_off = 0; h_off < dim; ++h_off) {
    const auto proj = eigen_projection(s, n, MagneticIndex::from_offset(s, h_off));
    target[h_off] = outcome_probability(state, proj.matrix);
  }
  std::vector<double> out(dim, 0.0);
  for (int m_off = 0; m_off < dim; ++m_off)
    for (int h_off = 0; h_off < dim; ++h_off) {
      double w = 0.0;
      for (int l_off = 0; l_off < dim; ++l_off)
        w += lambdas.at_offset(l_off) * table.q_offset(m_off, l_off, h_off);
      out[m_off] += w * target[h_off];
    }
  return out;
}

}  // namespace murspin
