#include "aperture/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>

#include "aperture/errors.hpp"

namespace aperture {
namespace {

using std::complex;
using namespace std::complex_literals;

std::vector<int> known_indices(const MsrMatrix& f, int row) {
  std::vector<int> idx;
  for (int j = 0; j < f.size(); ++j)
    if (f.known(row, j)) idx.push_back(j);
  return idx;
}

std::vector<Vec2> pick_directions(const DirectionGrid& grid, const std::vector<int>& idx) {
  std::vector<Vec2> d(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) d[i] = grid.direction(idx[i]);
  return d;
}

Eigen::MatrixXcd build_operator(RecoveryMethod method, const ArtificialBoundary& b, double k,
                                const std::vector<Vec2>& obs) {
  return method == RecoveryMethod::mgf ? mgf_operator(b, k, obs) : mslp_operator(b, k, obs);
}

}  // namespace

ArtificialBoundary ArtificialBoundary::disc(double radius, int n_q, const Vec2& center) {
  ArtificialBoundary b;
  b.radius = radius;
  b.center = center;
  b.boundary = discretize(ParametricCurve::circle(center, radius), n_q);
  return b;
}

void ArtificialBoundary::require_contains(const ParametricCurve& obstacle) const {
  const double rc = obstacle.circumradius();
  if (rc >= radius - (obstacle.center() - center).norm())
    throw ConfigError("artificial boundary radius " + std::to_string(radius) +
                      " does not enclose obstacle with circumradius " + std::to_string(rc));
}

RecoveryMethod recovery_method_from_string(std::string_view s) {
  if (s == "mgf") return RecoveryMethod::mgf;
  if (s == "mslp") return RecoveryMethod::mslp;
  throw ConfigError("unknown recovery method: " + std::string(s) + " (expected mgf|mslp)");
}

std::string_view to_string(RecoveryMethod m) {
  return m == RecoveryMethod::mgf ? "mgf" : "mslp";
}

Eigen::MatrixXcd mgf_operator(const ArtificialBoundary& b, double k,
                              const std::vector<Vec2>& observations) {
  if (observations.empty()) throw ConfigError("mgf_operator requires observations");
  const int n = b.boundary.size();
  const int q = static_cast<int>(observations.size());
  Eigen::MatrixXcd a(q, 2 * n);
  for (int o = 0; o < q; ++o) {
    const Vec2& xh = observations[o];
    for (int j = 0; j < n; ++j) {
      const complex<double> e =
          std::exp(-1.0i * k * xh.dot(b.boundary.points[j])) * b.boundary.weights[j];
      a(o, j) = -1.0i * k * xh.dot(b.boundary.normals[j]) * e;
      a(o, n + j) = -e;
    }
  }
  return a;
}

Eigen::MatrixXcd mslp_operator(const ArtificialBoundary& b, double k,
                               const std::vector<Vec2>& observations) {
  if (observations.empty()) throw ConfigError("mslp_operator requires observations");
  const int n = b.boundary.size();
  const int q = static_cast<int>(observations.size());
  Eigen::MatrixXcd a(q, n);
  for (int o = 0; o < q; ++o)
    for (int j = 0; j < n; ++j)
      a(o, j) = std::exp(-1.0i * k * observations[o].dot(b.boundary.points[j])) *
                b.boundary.weights[j];
  return a;
}

TikhonovSolver::TikhonovSolver(const Eigen::MatrixXcd& a) {
  if (!a.allFinite()) throw ConfigError("tikhonov system contains non-finite entries");
  svd_.compute(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

Eigen::VectorXcd TikhonovSolver::solve(const Eigen::VectorXcd& b, double alpha) const {
  if (!(alpha > 0.0)) throw ConfigError("regularization parameter must be positive");
  if (!b.allFinite()) throw ConfigError("tikhonov right-hand side contains non-finite entries");
  const Eigen::VectorXd& s = svd_.singularValues();
  const Eigen::VectorXcd proj = svd_.matrixU().adjoint() * b;
  Eigen::VectorXcd filtered(s.size());
  for (int i = 0; i < s.size(); ++i)
    filtered(i) = proj(i) * (s(i) / (s(i) * s(i) + alpha));
  return svd_.matrixV() * filtered;
}

Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                double alpha) {
  if (a.rows() != b.size()) throw ConfigError("tikhonov_solve shape mismatch");
  return TikhonovSolver(a).solve(b, alpha);
}

MsrMatrix recover_row(const MsrMatrix& f, int row, RecoveryMethod method,
                      const ArtificialBoundary& b, double alpha,
                      const std::vector<int>& targets) {
  if (row < 0 || row >= f.size()) throw ConfigError("row index out of range");
  std::vector<int> open;
  for (int j : targets)
    if (j >= 0 && j < f.size() && !f.known(row, j)) open.push_back(j);
  if (open.empty()) return f;

  const std::vector<int> kn = known_indices(f, row);
  if (kn.empty()) throw ConfigError("recover_row requires at least one known entry");

  const double k = f.wavenumber();
  const Eigen::MatrixXcd a = build_operator(method, b, k, pick_directions(f.grid(), kn));
  Eigen::VectorXcd rhs(kn.size());
  for (std::size_t i = 0; i < kn.size(); ++i) rhs(i) = f.value(row, kn[i]);
  const Eigen::VectorXcd density = TikhonovSolver(a).solve(rhs, alpha);

  const Eigen::MatrixXcd eval = build_operator(method, b, k, pick_directions(f.grid(), open));
  const Eigen::VectorXcd vals = eval * density;
  const Provenance tag = method == RecoveryMethod::mgf ? Provenance::mgf : Provenance::mslp;
  MsrMatrix out = f;
  for (std::size_t i = 0; i < open.size(); ++i) out.set(row, open[i], vals(i), tag);
  return out;
}

MsrMatrix dr_msr(const MsrMatrix& limited, const RecoverySchedule& schedule,
                 const ArtificialBoundary& b, double alpha) {
  const int n = limited.size();
  int l = limited.known_column_prefix();
  if (l < 1 || l >= n)
    throw ConfigError("dr_msr requires a contiguous known column prefix with 1 <= l < 2m");
  if (schedule.t < 1) throw ConfigError("schedule step t must be >= 1");

  const double k = limited.wavenumber();
  const Provenance tag =
      schedule.method == RecoveryMethod::mgf ? Provenance::mgf : Provenance::mslp;

  // The recovery equations are solved on the symmetry-augmented data, so
  // close the mask before the first step.
  MsrMatrix f = reciprocity_complete(limited);

  const int t = schedule.t;
  int s = 0;
  for (int iter = 0; iter < n && !f.fully_known(); ++iter) {
    // New direction block per step: t columns just past the known prefix and
    // t columns marching backwards from the far end.
    std::set<int> target_set;
    for (int j = l; j < std::min(l + t, n); ++j) target_set.insert(j);
    for (int j = std::max(0, n - s * t - t); j < n - s * t; ++j) target_set.insert(j);
    const std::vector<int> targets(target_set.begin(), target_set.end());

    // Rows with identical known sets share the operator and its SVD.
    std::map<std::vector<bool>, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
      std::vector<bool> key(n);
      bool complete = true;
      for (int j = 0; j < n; ++j) {
        key[j] = f.known(i, j);
        complete = complete && key[j];
      }
      if (!complete) groups[std::move(key)].push_back(i);
    }

    for (const auto& [key, rows] : groups) {
      std::vector<int> kn;
      for (int j = 0; j < n; ++j)
        if (key[j]) kn.push_back(j);
      if (kn.empty()) throw ConfigError("dr_msr encountered a row with no known entries");
      std::vector<int> open;
      for (int j : targets)
        if (!key[j]) open.push_back(j);
      if (open.empty()) continue;

      const Eigen::MatrixXcd a =
          build_operator(schedule.method, b, k, pick_directions(f.grid(), kn));
      const TikhonovSolver solver(a);
      const Eigen::MatrixXcd eval =
          build_operator(schedule.method, b, k, pick_directions(f.grid(), open));

      for (int i : rows) {
        Eigen::VectorXcd rhs(kn.size());
        for (std::size_t c = 0; c < kn.size(); ++c) rhs(c) = f.value(i, kn[c]);
        const Eigen::VectorXcd vals = eval * solver.solve(rhs, alpha);
        for (std::size_t c = 0; c < open.size(); ++c) f.set(i, open[c], vals(c), tag);
      }
    }

    f = reciprocity_complete(f);
    l = std::min(l + t, n);
    ++s;
  }

  if (!f.fully_known())
    throw NumericalError("dr_msr failed to complete the matrix within 2m steps");
  return f;
}

}  // namespace aperture
