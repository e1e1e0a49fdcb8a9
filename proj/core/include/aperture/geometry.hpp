#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace aperture {

using Vec2 = Eigen::Vector2d;

enum class CurveKind { kite, peanut, circle };

/// Smooth closed curve t -> x(t), 2pi-periodic, regular (|x'| > 0),
/// parametrized counterclockwise.
class ParametricCurve {
 public:
  static ParametricCurve kite();
  static ParametricCurve peanut();
  static ParametricCurve circle(const Vec2& center, double radius);
  /// "kite" | "peanut" | "circle" (unit disc at the origin).
  static ParametricCurve from_name(const std::string& name);

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;
  Vec2 second_derivative(double t) const;

  /// A point strictly inside the enclosed region; every curve here is
  /// star-shaped about it, which fixes the outward normal orientation.
  Vec2 interior_point() const;

  /// max_t |x(t)| over a fine sample; used for containment checks.
  double circumradius() const;

  CurveKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  ParametricCurve(CurveKind kind, std::string name, Vec2 center, double radius)
      : kind_(kind), name_(std::move(name)), center_(std::move(center)), radius_(radius) {}

  CurveKind kind_;
  std::string name_;
  Vec2 center_{0.0, 0.0};  // circle only
  double radius_ = 0.0;    // circle only
};

/// Uniform trapezoidal discretization of a closed curve: nodes t_j = 2 pi j / n_q,
/// unit outward normals, speeds |x'(t_j)| and weights w_j = (2 pi / n_q) |x'(t_j)|.
struct QuadratureBoundary {
  std::vector<double> params;
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;       // x'(t_j)
  std::vector<Vec2> second_derivs;  // x''(t_j)
  std::vector<Vec2> normals;        // unit, outward
  std::vector<double> speeds;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
  double length() const;
};

/// n_q must be even and >= 8. Outward orientation is fixed by a one-time
/// check of (x_0 - c) . nu_0 > 0 against the curve's interior point c.
QuadratureBoundary discretize(const ParametricCurve& curve, int n_q);

}  // namespace aperture
