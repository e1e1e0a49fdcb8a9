#include "aperture/forward.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "aperture/errors.hpp"
#include "aperture/specfun.hpp"

namespace aperture {
namespace {

using std::complex;
using namespace std::complex_literals;

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606;

// Quadrature weights R_{|i-j|} for the 2pi-periodic kernel
// ln(4 sin^2((t - tau)/2)) on 2n equispaced nodes:
//   R_l = -(2 pi / n) sum_{m=1}^{n-1} cos(m l pi / n)/m - (-1)^l pi / n^2.
std::vector<double> kress_log_weights(int n_q) {
  const int n = n_q / 2;
  std::vector<double> r(n_q);
  for (int l = 0; l < n_q; ++l) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * l * kPi / n) / m;
    r[l] = -(2.0 * kPi / n) * s - (l % 2 == 0 ? 1.0 : -1.0) * kPi / (n * n);
  }
  return r;
}

}  // namespace

BoundaryOperator::BoundaryOperator(const ScatteringProblem& problem, int n_q)
    : k_(problem.k), eta_(problem.k), bnd_(discretize(problem.obstacle, n_q)) {
  if (!(k_ > 0.0)) throw ConfigError("wavenumber must be positive");
  const int n = n_q;

  const Vec2 raw0(bnd_.tangents[0].y(), -bnd_.tangents[0].x());
  orientation_ = bnd_.normals[0].dot(raw0) > 0.0 ? 1 : -1;

  // Kernel splitting K(t_i, t_j) = K1 ln(4 sin^2((t_i - t_j)/2)) + K2 with
  // smooth K1, K2; the combined kernel is (double layer) - i eta (single layer).
  Eigen::MatrixXcd a(n, n);
  const std::vector<double> logw = kress_log_weights(n);
  const double trapz = 2.0 * kPi / n;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      complex<double> k1, k2;
      if (i == j) {
        const double sp = bnd_.speeds[j];
        const double w = bnd_.tangents[j].x() * bnd_.second_derivs[j].y() -
                         bnd_.tangents[j].y() * bnd_.second_derivs[j].x();
        const complex<double> l2 = -orientation_ * w / (4.0 * kPi * sp * sp);
        const complex<double> m1 = -sp / (4.0 * kPi);
        const complex<double> m2 =
            (0.25i - (kEulerGamma + std::log(0.5 * k_ * sp)) / (2.0 * kPi)) * sp;
        k1 = -1.0i * eta_ * m1;            // L1 vanishes on the diagonal
        k2 = l2 - 1.0i * eta_ * m2;
      } else {
        const Vec2 diff = bnd_.points[i] - bnd_.points[j];
        const double r = diff.norm();
        const double kr = k_ * r;
        const Vec2 nu_w = bnd_.normals[j] * bnd_.speeds[j];  // unnormalized outward normal
        const double dot = diff.dot(nu_w);
        const complex<double> h0 = specfun::hankel1(0, kr);
        const complex<double> h1 = specfun::hankel1(1, kr);
        const double j0 = h0.real(), j1 = h1.real();

        const complex<double> lker = 0.25i * k_ * h1 * dot / r;
        const complex<double> l1 = -(k_ / (4.0 * kPi)) * j1 * dot / r;
        const complex<double> mker = 0.25i * h0 * bnd_.speeds[j];
        const complex<double> m1 = -(1.0 / (4.0 * kPi)) * j0 * bnd_.speeds[j];

        const double dt = bnd_.params[i] - bnd_.params[j];
        const double lg = std::log(4.0 * std::pow(std::sin(0.5 * dt), 2));
        k1 = (l1 - 1.0i * eta_ * m1);
        k2 = (lker - 1.0i * eta_ * mker) - k1 * lg;
      }
      const int lag = std::abs(i - j);
      a(i, j) = logw[lag] * k1 + trapz * k2;
    }
    a(i, i) += 0.5;
  }

  lu_.compute(a);
  const auto& u = lu_.matrixLU();
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(u(i, i));
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (!(dmin > 0.0) || !std::isfinite(dmax) || dmin < 1e-14 * dmax)
    throw NumericalError("combined-field factorization failed (k=" + std::to_string(k_) +
                         ", n_q=" + std::to_string(n) + ")");
}

Eigen::MatrixXcd BoundaryOperator::solve_densities(const std::vector<Vec2>& incident) const {
  const int n = bnd_.size();
  Eigen::MatrixXcd rhs(n, static_cast<int>(incident.size()));
  for (int c = 0; c < static_cast<int>(incident.size()); ++c)
    for (int j = 0; j < n; ++j)
      rhs(j, c) = -std::exp(1.0i * k_ * bnd_.points[j].dot(incident[c]));
  return lu_.solve(rhs);
}

FarFieldRow BoundaryOperator::far_field(const Vec2& incident,
                                        const std::vector<Vec2>& observations) const {
  FarFieldRow row;
  row.incident = incident;
  row.observations = observations;
  row.values = far_field_matrix({incident}, observations).row(0);
  return row;
}

Eigen::MatrixXcd BoundaryOperator::far_field_matrix(
    const std::vector<Vec2>& incident, const std::vector<Vec2>& observations) const {
  const int n = bnd_.size();
  const int no = static_cast<int>(observations.size());
  const Eigen::MatrixXcd dens = solve_densities(incident);

  // uinf(xhat) = (2 pi / n_q) sum_j [ -ik xhat.nu_j |x'_j| - i eta |x'_j| ]
  //              e^{-ik xhat.y_j} phi_j
  Eigen::MatrixXcd g(no, n);
  const double trapz = 2.0 * kPi / n;
  for (int o = 0; o < no; ++o) {
    const Vec2& xh = observations[o];
    for (int j = 0; j < n; ++j) {
      const complex<double> phase = std::exp(-1.0i * k_ * xh.dot(bnd_.points[j]));
      const double nudot = xh.dot(bnd_.normals[j]) * bnd_.speeds[j];
      g(o, j) = trapz * (-1.0i * k_ * nudot - 1.0i * eta_ * bnd_.speeds[j]) * phase;
    }
  }
  return (g * dens).transpose();
}

BoundaryOperator assemble_operator(const ScatteringProblem& problem, int n_q) {
  return BoundaryOperator(problem, n_q);
}

MsrMatrix assemble_msr(const ScatteringProblem& problem, int m, int n_q) {
  if (m < 1) throw ConfigError("assemble_msr requires m >= 1");
  const BoundaryOperator op(problem, n_q);
  const DirectionGrid grid(m);
  const std::vector<Vec2> dirs = grid.directions();
  const Eigen::MatrixXcd f = op.far_field_matrix(dirs, dirs);
  MsrMatrix out(grid, problem.k);
  out.curve = problem.obstacle.name();
  for (int i = 0; i < grid.count(); ++i)
    for (int j = 0; j < grid.count(); ++j) out.set(i, j, f(i, j), Provenance::measured);
  return out;
}

std::complex<double> circle_far_field_analytic(double k, double radius, const Vec2& xhat,
                                               const Vec2& d, int truncation) {
  if (!(k > 0.0) || !(radius > 0.0))
    throw ConfigError("circle_far_field_analytic requires k > 0 and radius > 0");
  if (truncation < static_cast<int>(std::ceil(k * radius)) + 20)
    std::fprintf(stderr,
                 "circle_far_field_analytic: truncation %d below k*radius + 20, "
                 "result may not be fully converged\n",
                 truncation);
  const double ka = k * radius;
  const std::vector<double> js = specfun::bessel_j_seq(truncation, ka);
  const std::vector<complex<double>> hs = specfun::hankel1_seq(truncation, ka);
  const double phi = std::atan2(xhat.y(), xhat.x()) - std::atan2(d.y(), d.x());

  // uinf = 4i [ J_0/H_0 + 2 sum_{n>=1} (J_n/H_n) cos(n phi) ]
  complex<double> sum = js[0] / hs[0];
  for (int n = 1; n <= truncation; ++n) {
    if (!std::isfinite(hs[n].real()) || !std::isfinite(hs[n].imag())) break;
    sum += 2.0 * (js[n] / hs[n]) * std::cos(n * phi);
  }
  return 4.0i * sum;
}

}  // namespace aperture
