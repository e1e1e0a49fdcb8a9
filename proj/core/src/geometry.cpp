#include "aperture/geometry.hpp"

#include <cmath>
#include <numbers>

#include "aperture/errors.hpp"

namespace aperture {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double peanut_r(double t) { return std::sqrt(3.0 * std::cos(t) * std::cos(t) + 1.0); }
}  // namespace

ParametricCurve ParametricCurve::kite() {
  return ParametricCurve(CurveKind::kite, "kite", Vec2(0, 0), 0.0);
}

ParametricCurve ParametricCurve::peanut() {
  return ParametricCurve(CurveKind::peanut, "peanut", Vec2(0, 0), 0.0);
}

ParametricCurve ParametricCurve::circle(const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw ConfigError("circle radius must be positive");
  return ParametricCurve(CurveKind::circle, "circle", center, radius);
}

ParametricCurve ParametricCurve::from_name(const std::string& name) {
  if (name == "kite") return kite();
  if (name == "peanut") return peanut();
  if (name == "circle") return circle(Vec2(0, 0), 1.0);
  throw ConfigError("unknown curve name: " + name + " (expected kite|peanut|circle)");
}

Vec2 ParametricCurve::point(double t) const {
  switch (kind_) {
    case CurveKind::kite:
      return {std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t)};
    case CurveKind::peanut: {
      const double r = peanut_r(t);
      return {r * std::cos(t), r * std::sin(t)};
    }
    case CurveKind::circle:
      return {center_.x() + radius_ * std::cos(t), center_.y() + radius_ * std::sin(t)};
  }
  return {0, 0};
}

Vec2 ParametricCurve::derivative(double t) const {
  switch (kind_) {
    case CurveKind::kite:
      return {-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)};
    case CurveKind::peanut: {
      const double r = peanut_r(t);
      const double rp = -1.5 * std::sin(2 * t) / r;  // from r r' = -(3/2) sin 2t
      return {rp * std::cos(t) - r * std::sin(t), rp * std::sin(t) + r * std::cos(t)};
    }
    case CurveKind::circle:
      return {-radius_ * std::sin(t), radius_ * std::cos(t)};
  }
  return {0, 0};
}

Vec2 ParametricCurve::second_derivative(double t) const {
  switch (kind_) {
    case CurveKind::kite:
      return {-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)};
    case CurveKind::peanut: {
      const double r = peanut_r(t);
      const double rp = -1.5 * std::sin(2 * t) / r;
      const double rpp = (-3.0 * std::cos(2 * t) - rp * rp) / r;
      return {rpp * std::cos(t) - 2 * rp * std::sin(t) - r * std::cos(t),
              rpp * std::sin(t) + 2 * rp * std::cos(t) - r * std::sin(t)};
    }
    case CurveKind::circle:
      return {-radius_ * std::cos(t), -radius_ * std::sin(t)};
  }
  return {0, 0};
}

Vec2 ParametricCurve::interior_point() const {
  switch (kind_) {
    case CurveKind::kite:
      return {-0.5, 0.0};
    case CurveKind::peanut:
      return {0.0, 0.0};
    case CurveKind::circle:
      return center_;
  }
  return {0, 0};
}

double ParametricCurve::circumradius() const {
  if (kind_ == CurveKind::circle) return center_.norm() + radius_;
  double r = 0.0;
  constexpr int n = 2048;
  for (int j = 0; j < n; ++j) r = std::max(r, point(kTwoPi * j / n).norm());
  return r;
}

double QuadratureBoundary::length() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureBoundary discretize(const ParametricCurve& curve, int n_q) {
  if (n_q < 8 || n_q % 2 != 0)
    throw ConfigError("quadrature node count must be even and >= 8");
  QuadratureBoundary b;
  b.params.resize(n_q);
  b.points.resize(n_q);
  b.tangents.resize(n_q);
  b.second_derivs.resize(n_q);
  b.normals.resize(n_q);
  b.speeds.resize(n_q);
  b.weights.resize(n_q);
  const double h = kTwoPi / n_q;
  for (int j = 0; j < n_q; ++j) {
    const double t = h * j;
    b.params[j] = t;
    b.points[j] = curve.point(t);
    b.tangents[j] = curve.derivative(t);
    b.second_derivs[j] = curve.second_derivative(t);
    const double sp = b.tangents[j].norm();
    b.speeds[j] = sp;
    b.weights[j] = h * sp;
    b.normals[j] = Vec2(b.tangents[j].y(), -b.tangents[j].x()) / sp;
  }
  const Vec2 c = curve.interior_point();
  if ((b.points[0] - c).dot(b.normals[0]) < 0.0)
    for (auto& nu : b.normals) nu = -nu;
  return b;
}

}  // namespace aperture
