#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "aperture/geometry.hpp"

namespace aperture {

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// 2m equispaced unit directions, theta_i = i pi / m for i = 0..2m-1 (the
/// first angle is exactly 0). Directions in the upper half are stored as
/// exact negations of their antipodes, so d_{i+m} == -d_i bit for bit.
struct DirectionGrid {
  int m;

  explicit DirectionGrid(int m_);
  int count() const { return 2 * m; }
  double angle(int i) const;
  Vec2 direction(int i) const;
  std::vector<Vec2> directions() const;
  bool operator==(const DirectionGrid& o) const { return m == o.m; }
};

enum class Provenance : std::uint8_t { unknown = 0, measured, symmetry, mgf, mslp };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// Multi-static response matrix on a DirectionGrid: rows are incident
/// directions, columns observation directions. Each entry carries a known
/// flag and a provenance tag. Value semantics; operations return new
/// matrices.
class MsrMatrix {
 public:
  MsrMatrix(DirectionGrid grid, double wavenumber);

  const DirectionGrid& grid() const { return grid_; }
  double wavenumber() const { return k_; }
  int size() const { return grid_.count(); }

  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> value(int i, int j) const { return entries_(i, j); }
  bool known(int i, int j) const { return mask_(i, j); }
  Provenance provenance(int i, int j) const { return static_cast<Provenance>(prov_(i, j)); }
  const Mask& mask() const { return mask_; }

  void set(int i, int j, std::complex<double> v, Provenance p);

  bool fully_known() const;
  /// Number of leading fully-known columns if the mask is exactly a
  /// contiguous column prefix (all rows), otherwise -1. A fully known
  /// matrix reports 2m.
  int known_column_prefix() const;

  /// Obstacle name carried as metadata ("" when not applicable).
  std::string curve;

 private:
  DirectionGrid grid_;
  double k_;
  Eigen::MatrixXcd entries_;
  Mask mask_;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> prov_;
};

/// The reciprocity involution on 0-based index pairs:
/// sigma(i, j) = ((j + m) mod 2m, (i + m) mod 2m).
std::pair<int, int> sigma_partner(int i, int j, int m);

/// Keep the first l columns (1 <= l < 2m), which must be fully known, as
/// "measured"; zero and mark unknown everywhere else.
MsrMatrix restrict_columns(const MsrMatrix& full, int l);

struct MsrBlocks {
  Eigen::MatrixXcd f11, f12, f21, f22;
};
MsrBlocks blocks(const MsrMatrix& f);

struct CompletionReport {
  std::size_t filled = 0;
  std::size_t measured_conflicts = 0;  // measured sigma-pairs differing beyond 10 eps
  double max_mismatch = 0.0;
};

/// One-pass symmetry closure: for every known (i, j) whose sigma-partner is
/// unknown, copy the value bit for bit and tag it "symmetry". Known entries
/// are never modified, so measured data always survives. sigma is an
/// involution, hence a single pass closes the mask.
MsrMatrix reciprocity_complete(const MsrMatrix& f, CompletionReport* report = nullptr);

struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

/// F + delta ||F|| (R1 + i R2) / ||R1 + i R2|| on the known block, where
/// ||.|| is the spectral norm of the block as a dense matrix and R1, R2 are
/// i.i.d. standard normal draws from the seeded generator (R1 filled first,
/// row major, then R2). delta = 0 returns the input unchanged.
MsrMatrix add_noise(const MsrMatrix& f, const NoiseSpec& spec);

struct ErrorMetrics {
  double max_abs = 0.0;
  double rel_fro = 0.0;  // ||A - B||_F / ||A||_F over the region
};
ErrorMetrics error_metrics(const MsrMatrix& a, const MsrMatrix& b, const Mask& region);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& a);

}  // namespace aperture
