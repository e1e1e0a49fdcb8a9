#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <complex>
#include <vector>

#include "aperture/geometry.hpp"
#include "aperture/msr.hpp"

namespace aperture {

/// Exterior sound-soft (u = 0 on the boundary) time-harmonic scattering of
/// the plane wave e^{i k x . d}.
struct ScatteringProblem {
  double k;
  ParametricCurve obstacle;
};

/// Far field values of one incident direction at a list of observation
/// directions. Normalization: a point source at z radiates the far field
/// e^{-i k xhat . z}.
struct FarFieldRow {
  Vec2 incident;
  std::vector<Vec2> observations;
  Eigen::VectorXcd values;
};

/// Nystrom discretization of the combined double/single layer equation
///   phi/2 + (K - i eta S) phi = -u^i on the boundary,  eta = k,
/// with the spectrally accurate log-weighted product quadrature for the
/// Hankel kernel singularity. The dense system is LU-factorized once and
/// reused for every incident direction.
class BoundaryOperator {
 public:
  BoundaryOperator(const ScatteringProblem& problem, int n_q);

  const QuadratureBoundary& boundary() const { return bnd_; }
  double wavenumber() const { return k_; }
  double coupling() const { return eta_; }

  /// Layer densities, one column per incident direction.
  Eigen::MatrixXcd solve_densities(const std::vector<Vec2>& incident) const;

  FarFieldRow far_field(const Vec2& incident, const std::vector<Vec2>& observations) const;

  /// Rows indexed by incident direction, columns by observation direction.
  Eigen::MatrixXcd far_field_matrix(const std::vector<Vec2>& incident,
                                    const std::vector<Vec2>& observations) const;

 private:
  double k_, eta_;
  int orientation_;  // +1 when stored normals equal (x2', -x1')/|x'|
  QuadratureBoundary bnd_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

BoundaryOperator assemble_operator(const ScatteringProblem& problem, int n_q);

/// Full MSR matrix F[i][j] = u_inf(xhat_j; d_i) on the 2m-direction grid,
/// every entry tagged "measured". One factorization serves all directions.
MsrMatrix assemble_msr(const ScatteringProblem& problem, int m, int n_q);

/// Separation-of-variables far field of the sound-soft disc of given radius
/// centered at the origin; depends on the directions only through the angle
/// between them. Truncation must reach at least k*radius + 20 for full
/// accuracy (a smaller value emits a warning on stderr).
std::complex<double> circle_far_field_analytic(double k, double radius, const Vec2& xhat,
                                               const Vec2& d, int truncation);

}  // namespace aperture
