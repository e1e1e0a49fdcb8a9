#pragma once

#include <utility>
#include <vector>

#include "aperture/msr.hpp"

namespace aperture {

/// Rectangular sampling grid of nonnegative indicator values, stored row
/// major from (x_min, y_min): index = iy * n_x + ix.
struct ImagingGrid {
  double x_min = -6.0, x_max = 6.0, y_min = -6.0, y_max = 6.0;
  int n_x = 121, n_y = 121;
  std::vector<double> values;

  static ImagingGrid make(double x_min, double x_max, double y_min, double y_max, int n_x,
                          int n_y);

  double x(int ix) const { return n_x > 1 ? x_min + ix * (x_max - x_min) / (n_x - 1) : x_min; }
  double y(int iy) const { return n_y > 1 ? y_min + iy * (y_max - y_min) / (n_y - 1) : y_min; }
  int index(int ix, int iy) const { return iy * n_x + ix; }
  Vec2 point(int ix, int iy) const { return {x(ix), y(iy)}; }

  double max_value() const;
  /// (ix, iy) of the largest value (first occurrence in storage order).
  std::pair<int, int> argmax() const;
};

/// Direct sampling indicator on full data:
///   I(z) = | sum_{i,j} e^{-ik z.d_i} F_ij e^{ik z.xhat_j} |^2.
ImagingGrid dsm_full(const MsrMatrix& f, ImagingGrid grid);

/// Same bilinear form with the observation steering vector truncated to the
/// known column prefix.
ImagingGrid dsm_limited(const MsrMatrix& f, ImagingGrid grid);

/// F# = |Re F| + |Im F| where Re F = (F + F*)/2, Im F = (F - F*)/(2i) and
/// the matrix absolute value comes from the Hermitian eigendecomposition.
/// Hermitian positive semi-definite by construction.
Eigen::MatrixXcd fm_sharp(const MsrMatrix& f);

struct FmOptions {
  /// Eigenvalues of F# below this fraction of the largest one are dropped
  /// from the indicator sum; spurious 1/sigma spikes would dominate it
  /// otherwise.
  double eigenvalue_floor_rel = 1e-14;
};

/// Factorization-method indicator: with the eigensystem (sigma_n, psi_n) of
/// F# = |Re F| + |Im F| (matrix absolute values via the Hermitian
/// eigendecompositions),
///   I(z) = [ sum_n |phi_z^* psi_n|^2 / sigma_n ]^{-1},  (phi_z)_n = e^{-ik d_n . z}.
ImagingGrid fm_indicator(const MsrMatrix& f, ImagingGrid grid, const FmOptions& opt = {});

/// Divides by the maximum value when it is positive; otherwise unchanged.
ImagingGrid normalize(ImagingGrid grid);

}  // namespace aperture
