#include "aperture/msr.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "aperture/errors.hpp"

namespace aperture {

DirectionGrid::DirectionGrid(int m_) : m(m_) {
  if (m < 1) throw ConfigError("direction grid requires m >= 1");
}

double DirectionGrid::angle(int i) const { return std::numbers::pi * i / m; }

Vec2 DirectionGrid::direction(int i) const {
  i %= 2 * m;
  if (i < 0) i += 2 * m;
  if (i >= m) return -direction(i - m);
  const double th = angle(i);
  return {std::cos(th), std::sin(th)};
}

std::vector<Vec2> DirectionGrid::directions() const {
  std::vector<Vec2> d(count());
  for (int i = 0; i < count(); ++i) d[i] = direction(i);
  return d;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::unknown:
      return "unknown";
    case Provenance::measured:
      return "measured";
    case Provenance::symmetry:
      return "symmetry";
    case Provenance::mgf:
      return "mgf";
    case Provenance::mslp:
      return "mslp";
  }
  return "unknown";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "unknown") return Provenance::unknown;
  if (s == "measured") return Provenance::measured;
  if (s == "symmetry") return Provenance::symmetry;
  if (s == "mgf") return Provenance::mgf;
  if (s == "mslp") return Provenance::mslp;
  throw ConfigError("unknown provenance tag: " + std::string(s));
}

MsrMatrix::MsrMatrix(DirectionGrid grid, double wavenumber)
    : grid_(grid), k_(wavenumber) {
  if (!(k_ > 0.0)) throw ConfigError("wavenumber must be positive");
  const int n = grid_.count();
  entries_ = Eigen::MatrixXcd::Zero(n, n);
  mask_ = Mask::Constant(n, n, false);
  prov_ = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Constant(
      n, n, static_cast<std::uint8_t>(Provenance::unknown));
}

void MsrMatrix::set(int i, int j, std::complex<double> v, Provenance p) {
  if (p != Provenance::unknown && (!std::isfinite(v.real()) || !std::isfinite(v.imag())))
    throw NumericalError("refusing to store a non-finite MSR entry");
  entries_(i, j) = v;
  mask_(i, j) = p != Provenance::unknown;
  prov_(i, j) = static_cast<std::uint8_t>(p);
}

bool MsrMatrix::fully_known() const { return mask_.all(); }

int MsrMatrix::known_column_prefix() const {
  const int n = size();
  int l = 0;
  while (l < n && mask_.col(l).all()) ++l;
  for (int j = l; j < n; ++j)
    if (mask_.col(j).any()) return -1;
  return l;
}

std::pair<int, int> sigma_partner(int i, int j, int m) {
  return {(j + m) % (2 * m), (i + m) % (2 * m)};
}

MsrMatrix restrict_columns(const MsrMatrix& full, int l) {
  const int n = full.size();
  if (l < 1 || l >= n) throw ConfigError("column count l must satisfy 1 <= l < 2m");
  for (int j = 0; j < l; ++j)
    if (!full.mask().col(j).all())
      throw ConfigError("restrict_columns requires the first l columns to be fully known");
  MsrMatrix out(full.grid(), full.wavenumber());
  out.curve = full.curve;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < l; ++j) out.set(i, j, full.value(i, j), Provenance::measured);
  return out;
}

MsrBlocks blocks(const MsrMatrix& f) {
  const int m = f.grid().m;
  MsrBlocks b;
  b.f11 = f.entries().topLeftCorner(m, m);
  b.f12 = f.entries().topRightCorner(m, m);
  b.f21 = f.entries().bottomLeftCorner(m, m);
  b.f22 = f.entries().bottomRightCorner(m, m);
  return b;
}

MsrMatrix reciprocity_complete(const MsrMatrix& f, CompletionReport* report) {
  const int n = f.size();
  const int m = f.grid().m;
  MsrMatrix out = f;
  CompletionReport rep;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!f.known(i, j)) continue;
      const auto [p, q] = sigma_partner(i, j, m);
      if (!out.known(p, q)) {
        out.set(p, q, f.value(i, j), Provenance::symmetry);
        ++rep.filled;
      } else if (f.provenance(i, j) == Provenance::measured &&
                 f.provenance(p, q) == Provenance::measured) {
        const double diff = std::abs(f.value(i, j) - f.value(p, q));
        const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(f.value(i, j)), 1.0);
        if (diff > tol) {
          ++rep.measured_conflicts;
          rep.max_mismatch = std::max(rep.max_mismatch, diff);
        }
      }
    }
  }
  if (report) *report = rep;
  return out;
}

MsrMatrix add_noise(const MsrMatrix& f, const NoiseSpec& spec) {
  if (spec.delta < 0.0) throw ConfigError("noise level must be >= 0");
  if (spec.delta == 0.0) return f;
  const int n = f.size();
  const int l = f.known_column_prefix();
  if (l < 1) throw ConfigError("add_noise requires a contiguous known column block");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd r1(n, l), r2(n, l);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < l; ++j) r1(i, j) = gauss(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < l; ++j) r2(i, j) = gauss(rng);

  const Eigen::MatrixXcd noise =
      r1.cast<std::complex<double>>() +
      std::complex<double>(0, 1) * r2.cast<std::complex<double>>();
  const Eigen::MatrixXcd block = f.entries().leftCols(l);
  const double scale = spec.delta * spectral_norm(block) / spectral_norm(noise);

  MsrMatrix out = f;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < l; ++j)
      out.set(i, j, f.value(i, j) + scale * noise(i, j), f.provenance(i, j));
  return out;
}

ErrorMetrics error_metrics(const MsrMatrix& a, const MsrMatrix& b, const Mask& region) {
  if (!(a.grid() == b.grid()) || a.wavenumber() != b.wavenumber())
    throw ConfigError("error_metrics requires matrices on the same grid");
  if (region.rows() != a.size() || region.cols() != a.size())
    throw ConfigError("region mask shape mismatch");
  if (!region.any()) throw ConfigError("error_metrics region is empty");
  ErrorMetrics m;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      if (!region(i, j)) continue;
      const double d = std::abs(a.value(i, j) - b.value(i, j));
      m.max_abs = std::max(m.max_abs, d);
      num += d * d;
      den += std::norm(a.value(i, j));
    }
  }
  m.rel_fro = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return m;
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace aperture
