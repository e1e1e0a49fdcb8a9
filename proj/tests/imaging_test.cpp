#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "aperture/errors.hpp"
#include "aperture/imaging.hpp"
#include "aperture/msr.hpp"

using namespace aperture;
using std::complex;
using namespace std::complex_literals;

namespace {

MsrMatrix matrix_from(const Eigen::MatrixXcd& a, double k) {
  const int m = static_cast<int>(a.rows()) / 2;
  MsrMatrix f(DirectionGrid(m), k);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) f.set(i, j, a(i, j), Provenance::measured);
  return f;
}

// Independent dense evaluation of the factorization indicator at one point.
double fm_reference_value(const Eigen::MatrixXcd& a, double k, const DirectionGrid& grid,
                          const Vec2& z, double floor_rel) {
  const Eigen::MatrixXcd re = 0.5 * (a + a.adjoint());
  const Eigen::MatrixXcd im = (a - a.adjoint()) / 2.0i;
  auto habs = [](const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    return Eigen::MatrixXcd(es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
                            es.eigenvectors().adjoint());
  };
  const Eigen::MatrixXcd fsharp = habs(re) + habs(im);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fsharp);
  Eigen::VectorXcd phi(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    phi(i) = std::exp(-1.0i * k * grid.direction(i).dot(z));
  const double floor = floor_rel * es.eigenvalues().cwiseAbs().maxCoeff();
  double s = 0.0;
  for (int n = 0; n < a.rows(); ++n) {
    const double sigma = std::abs(es.eigenvalues()(n));
    if (sigma <= floor) continue;
    s += std::norm(phi.dot(es.eigenvectors().col(n))) / sigma;
  }
  return s > 0.0 ? 1.0 / s : 0.0;
}

}  // namespace

TEST_SUITE("imaging") {

TEST_CASE("grid layout") {
  const ImagingGrid g = ImagingGrid::make(-6, 6, -6, 6, 121, 121);
  CHECK(g.values.size() == 121 * 121);
  CHECK(g.x(0) == -6.0);
  CHECK(g.x(120) == 6.0);
  CHECK(g.x(1) == doctest::Approx(-5.9).epsilon(1e-14));
  CHECK(g.index(3, 0) == 3);
  CHECK(g.index(0, 1) == 121);
  CHECK_THROWS_AS(ImagingGrid::make(0, 1, 0, 1, 0, 5), ConfigError);
}

TEST_CASE("dsm on the zero matrix is zero") {
  MsrMatrix f(DirectionGrid(4), 1.0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) f.set(i, j, {0, 0}, Provenance::measured);
  const ImagingGrid g = dsm_full(f, ImagingGrid::make(-2, 2, -2, 2, 9, 9));
  for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("dsm hand-computed 2x2 value") {
  // m = 1, F = identity, k = 1, z = 0: both steering vectors are all ones,
  // the bilinear form sums the entries (= 2), and the indicator is |2|^2 = 4.
  MsrMatrix f(DirectionGrid(1), 1.0);
  f.set(0, 0, {1, 0}, Provenance::measured);
  f.set(0, 1, {0, 0}, Provenance::measured);
  f.set(1, 0, {0, 0}, Provenance::measured);
  f.set(1, 1, {1, 0}, Provenance::measured);
  const ImagingGrid g = dsm_full(f, ImagingGrid::make(0, 0, 0, 0, 1, 1));
  CHECK(g.values[0] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("dsm scales quadratically with the matrix") {
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = complex<double>(gauss(rng), gauss(rng));
  const ImagingGrid grid = ImagingGrid::make(-1, 1, -1, 1, 5, 5);
  const ImagingGrid base = dsm_full(matrix_from(a, 2.0), grid);
  const ImagingGrid scaled = dsm_full(matrix_from(3.0i * a, 2.0), grid);
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(scaled.values[i] == doctest::Approx(9.0 * base.values[i]).epsilon(1e-12));
}

TEST_CASE("dsm_limited with the full prefix equals dsm_full") {
  std::mt19937 rng(4);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) a(i, j) = complex<double>(gauss(rng), gauss(rng));
  const MsrMatrix f = matrix_from(a, 6.0);
  const ImagingGrid grid = ImagingGrid::make(-2, 2, -2, 2, 7, 7);
  const ImagingGrid va = dsm_full(f, grid);
  const ImagingGrid vb = dsm_limited(f, grid);
  for (std::size_t i = 0; i < va.values.size(); ++i)
    CHECK(std::abs(va.values[i] - vb.values[i]) <= 1e-14 * (1.0 + va.values[i]));
}

TEST_CASE("dsm mask requirements") {
  MsrMatrix f(DirectionGrid(3), 1.0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) f.set(i, j, {1, 0}, Provenance::measured);
  const ImagingGrid grid = ImagingGrid::make(-1, 1, -1, 1, 3, 3);
  CHECK_THROWS_AS(dsm_full(f, grid), ConfigError);
  CHECK_NOTHROW(dsm_limited(f, grid));

  MsrMatrix gap(DirectionGrid(3), 1.0);
  gap.set(0, 3, {1, 0}, Provenance::measured);
  CHECK_THROWS_AS(dsm_limited(gap, grid), ConfigError);
}

TEST_CASE("fm sharp of a self-adjoint diagonal takes absolute eigenvalues") {
  MsrMatrix f(DirectionGrid(1), 1.0);
  f.set(0, 0, {2, 0}, Provenance::measured);
  f.set(0, 1, {0, 0}, Provenance::measured);
  f.set(1, 0, {0, 0}, Provenance::measured);
  f.set(1, 1, {-3, 0}, Provenance::measured);
  const Eigen::MatrixXcd s = fm_sharp(f);
  CHECK(std::abs(s(0, 0) - complex<double>(2, 0)) <= 1e-14);
  CHECK(std::abs(s(1, 1) - complex<double>(3, 0)) <= 1e-14);
  CHECK(std::abs(s(0, 1)) <= 1e-14);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  CHECK(es.eigenvalues()(0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(es.eigenvalues()(1) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("fm sharp is Hermitian positive semi-definite") {
  std::mt19937 rng(9);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) a(i, j) = complex<double>(gauss(rng), gauss(rng));
  const Eigen::MatrixXcd s = fm_sharp(matrix_from(a, 6.0));
  CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < 10; ++i) CHECK(es.eigenvalues()(i) >= -1e-12 * top);
}

TEST_CASE("fm indicator matches an independent dense evaluation") {
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = complex<double>(gauss(rng), gauss(rng));
  const double k = 2.0;
  const MsrMatrix f = matrix_from(a, k);
  const ImagingGrid g = fm_indicator(f, ImagingGrid::make(0.3, 0.3, -0.4, -0.4, 1, 1));
  const double ref = fm_reference_value(a, k, f.grid(), Vec2(0.3, -0.4), 1e-14);
  CHECK(g.values[0] == doctest::Approx(ref).epsilon(1e-12));
  CHECK(g.values[0] > 0.0);
}

TEST_CASE("fm requires full data") {
  MsrMatrix f(DirectionGrid(2), 1.0);
  f.set(0, 0, {1, 0}, Provenance::measured);
  CHECK_THROWS_AS(fm_indicator(f, ImagingGrid::make(-1, 1, -1, 1, 3, 3)), ConfigError);
  CHECK_THROWS_AS(fm_sharp(f), ConfigError);
}

TEST_CASE("normalize") {
  ImagingGrid zero = ImagingGrid::make(0, 1, 0, 1, 3, 3);
  const ImagingGrid still = normalize(zero);
  for (double v : still.values) CHECK(v == 0.0);

  ImagingGrid c = ImagingGrid::make(0, 1, 0, 1, 3, 3);
  for (double& v : c.values) v = 2.5;
  const ImagingGrid ones = normalize(std::move(c));
  for (double v : ones.values) CHECK(v == 1.0);

  ImagingGrid mix = ImagingGrid::make(0, 1, 0, 1, 2, 2);
  mix.values = {1.0, 4.0, 2.0, 0.5};
  const ImagingGrid n = normalize(std::move(mix));
  CHECK(n.max_value() == 1.0);
  CHECK(n.values[1] == 1.0);
  CHECK(n.argmax() == std::pair<int, int>{1, 0});
}

}  // TEST_SUITE
