#include "aperture/imaging.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "aperture/errors.hpp"
#include "aperture/parallel.hpp"

namespace aperture {
namespace {

using std::complex;
using namespace std::complex_literals;

// Steering rows e^{-ik z.d_i} for a block of grid points.
Eigen::MatrixXcd steering_block(const MsrMatrix& f, const ImagingGrid& g, int begin, int end) {
  const int n = f.size();
  Eigen::MatrixXcd e(end - begin, n);
  const double k = f.wavenumber();
  for (int idx = begin; idx < end; ++idx) {
    const Vec2 z = g.point(idx % g.n_x, idx / g.n_x);
    for (int i = 0; i < n; ++i)
      e(idx - begin, i) = std::exp(-1.0i * k * z.dot(f.grid().direction(i)));
  }
  return e;
}

constexpr int kChunk = 1024;

ImagingGrid dsm_eval(const MsrMatrix& f, ImagingGrid grid, int cols) {
  const int npts = grid.n_x * grid.n_y;
  grid.values.assign(npts, 0.0);
  const Eigen::MatrixXcd block = f.entries().leftCols(cols);
  const int nchunks = (npts + kChunk - 1) / kChunk;
  parallel_for(nchunks, [&](int c) {
    const int begin = c * kChunk;
    const int end = std::min(npts, begin + kChunk);
    const Eigen::MatrixXcd e = steering_block(f, grid, begin, end);
    const Eigen::MatrixXcd prod = e * block;  // rows: points
    for (int r = 0; r < prod.rows(); ++r) {
      // phi(z; xhat)_j = e^{ik z.xhat_j} = conj of the steering row entry
      const complex<double> v =
          (prod.row(r).array() * e.row(r).head(cols).array().conjugate()).sum();
      grid.values[begin + r] = std::norm(v);
    }
  });
  return grid;
}

Eigen::MatrixXcd hermitian_abs(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("Hermitian eigendecomposition failed");
  return es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

ImagingGrid ImagingGrid::make(double x_min, double x_max, double y_min, double y_max, int n_x,
                              int n_y) {
  if (n_x < 1 || n_y < 1 || !(x_max >= x_min) || !(y_max >= y_min))
    throw ConfigError("invalid imaging grid specification");
  ImagingGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.y_min = y_min;
  g.y_max = y_max;
  g.n_x = n_x;
  g.n_y = n_y;
  g.values.assign(static_cast<std::size_t>(n_x) * n_y, 0.0);
  return g;
}

double ImagingGrid::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

std::pair<int, int> ImagingGrid::argmax() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[i] > values[best]) best = i;
  return {best % n_x, best / n_x};
}

ImagingGrid dsm_full(const MsrMatrix& f, ImagingGrid grid) {
  if (!f.fully_known())
    throw ConfigError("dsm_full requires fully known data; use dsm_limited");
  return dsm_eval(f, std::move(grid), f.size());
}

ImagingGrid dsm_limited(const MsrMatrix& f, ImagingGrid grid) {
  const int l = f.known_column_prefix();
  if (l < 1) throw ConfigError("dsm_limited requires a contiguous known column prefix");
  return dsm_eval(f, std::move(grid), l);
}

Eigen::MatrixXcd fm_sharp(const MsrMatrix& f) {
  if (!f.fully_known()) throw ConfigError("fm_sharp requires fully known data");
  const Eigen::MatrixXcd& a = f.entries();
  const Eigen::MatrixXcd re = 0.5 * (a + a.adjoint());
  const Eigen::MatrixXcd im = (a - a.adjoint()) / 2.0i;
  return hermitian_abs(re) + hermitian_abs(im);
}

ImagingGrid fm_indicator(const MsrMatrix& f, ImagingGrid grid, const FmOptions& opt) {
  if (!f.fully_known()) throw ConfigError("fm_indicator requires fully known data");
  const Eigen::MatrixXcd fsharp = fm_sharp(f);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fsharp);
  if (es.info() != Eigen::Success)
    throw NumericalError("F# eigendecomposition failed");
  const Eigen::VectorXd& sigma = es.eigenvalues();
  const double floor = opt.eigenvalue_floor_rel * sigma.cwiseAbs().maxCoeff();

  std::vector<int> keep;
  for (int i = 0; i < sigma.size(); ++i)
    if (std::abs(sigma(i)) > floor) keep.push_back(i);
  const int nk = static_cast<int>(keep.size());
  Eigen::MatrixXcd psi(f.size(), nk);
  Eigen::VectorXd sig(nk);
  for (int c = 0; c < nk; ++c) {
    psi.col(c) = es.eigenvectors().col(keep[c]);
    sig(c) = std::abs(sigma(keep[c]));
  }

  const int npts = grid.n_x * grid.n_y;
  grid.values.assign(npts, 0.0);
  const int nchunks = (npts + kChunk - 1) / kChunk;
  parallel_for(nchunks, [&](int c) {
    const int begin = c * kChunk;
    const int end = std::min(npts, begin + kChunk);
    const Eigen::MatrixXcd e = steering_block(f, grid, begin, end);
    // phi_z^* psi_n = sum_t conj(phi_z)_t psi_n[t]; the steering row already
    // holds e^{-ik z.d_t} = (phi_z)_t, so take its conjugate.
    const Eigen::MatrixXcd w = e.conjugate() * psi;
    for (int r = 0; r < w.rows(); ++r) {
      double s = 0.0;
      for (int n = 0; n < w.cols(); ++n) s += std::norm(w(r, n)) / sig(n);
      grid.values[begin + r] = s > 0.0 ? 1.0 / s : 0.0;
    }
  });
  return grid;
}

ImagingGrid normalize(ImagingGrid grid) {
  const double m = grid.max_value();
  if (m > 0.0)
    for (double& v : grid.values) v /= m;
  return grid;
}

}  // namespace aperture
