#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>
#include <string_view>
#include <vector>

#include "aperture/geometry.hpp"
#include "aperture/msr.hpp"

namespace aperture {

/// Quadrature discretization of the artificial circle enclosing the unknown
/// scatterer; densities of both recovery schemes live on it.
struct ArtificialBoundary {
  double radius = 5.0;
  Vec2 center{0.0, 0.0};
  QuadratureBoundary boundary;

  static ArtificialBoundary disc(double radius, int n_q, const Vec2& center = Vec2(0, 0));

  /// Throws when the named obstacle does not fit inside the disc. Called
  /// with a known obstacle only; blind recovery skips it.
  void require_contains(const ParametricCurve& obstacle) const;
};

enum class RecoveryMethod { mgf, mslp };
RecoveryMethod recovery_method_from_string(std::string_view s);
std::string_view to_string(RecoveryMethod m);

struct RecoverySchedule {
  RecoveryMethod method = RecoveryMethod::mgf;
  int t = 5;  // new directions recovered per side per step
};

/// Far-field operator of the Cauchy-data representation: row for xhat is
/// [ -ik (xhat.nu_j) e^{-ik xhat.y_j} w_j | -e^{-ik xhat.y_j} w_j ], acting
/// on the stacked density (trace || normal derivative). Size |obs| x 2 n_q.
Eigen::MatrixXcd mgf_operator(const ArtificialBoundary& b, double k,
                              const std::vector<Vec2>& observations);

/// Far-field operator of the single layer representation: entries
/// e^{-ik xhat.y_j} w_j (the same kernel is used for fit and evaluation).
/// Size |obs| x n_q.
Eigen::MatrixXcd mslp_operator(const ArtificialBoundary& b, double k,
                               const std::vector<Vec2>& observations);

/// Minimizer of ||A c - b||^2 + alpha ||c||^2 through the SVD filter factors
/// sigma/(sigma^2 + alpha). The decomposition is computed once and serves
/// any number of right-hand sides and alphas.
class TikhonovSolver {
 public:
  explicit TikhonovSolver(const Eigen::MatrixXcd& a);
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b, double alpha) const;
  const Eigen::VectorXd& singular_values() const { return svd_.singularValues(); }

 private:
  Eigen::BDCSVD<Eigen::MatrixXcd> svd_;
};

Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                double alpha);

/// Fits the row's density to its known observation directions, then fills
/// the unknown entries among `targets` by evaluating the full-aperture
/// operator. Known entries are never overwritten.
MsrMatrix recover_row(const MsrMatrix& f, int row, RecoveryMethod method,
                      const ArtificialBoundary& b, double alpha,
                      const std::vector<int>& targets);

/// Stepwise full-aperture recovery: starting from a contiguous column
/// prefix, alternates small-extension recovery (2t new directions per step,
/// marching inwards from both ends of the known aperture) with symmetry
/// closure until the matrix is full. Rows sharing a known set share one SVD.
MsrMatrix dr_msr(const MsrMatrix& limited, const RecoverySchedule& schedule,
                 const ArtificialBoundary& b, double alpha);

}  // namespace aperture
