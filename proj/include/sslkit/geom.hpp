// geom.hpp - planar vector/pose math and field geometry.
//
// Conventions used across the library: millimeters, radians, seconds.
// Field coordinates are centered at the field midpoint with x along the
// field length, so the playable area is [-length/2, length/2] x
// [-width/2, width/2].
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sslkit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Normalizes an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  constexpr bool operator==(const Vec2& o) const = default;

  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm_sq() const { return x * x + y * y; }
  bool is_zero() const { return x == 0.0 && y == 0.0; }

  Vec2 normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("normalized: zero-length vector");
    return {x / n, y / n};
  }

  // Counter-clockwise perpendicular.
  constexpr Vec2 perp() const { return {-y, x}; }

  Vec2 rotated(double angle) const {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }

  double angle() const { return std::atan2(y, x); }
};

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (b - a).norm(); }

struct Pose {
  Vec2 pos;
  double theta{0.0};  // (-pi, pi]
};

struct FieldGeometry {
  double length{12000.0};  // x extent
  double width{9000.0};    // y extent

  double half_length() const { return 0.5 * length; }
  double half_width() const { return 0.5 * width; }

  // Closed containment test: the boundary belongs to the field.
  bool contains(const Vec2& p, double margin = 0.0) const {
    return std::abs(p.x) <= half_length() + margin &&
           std::abs(p.y) <= half_width() + margin;
  }
};

// Unsigned angle between two direction vectors, in [0, pi].
inline double angle_between(const Vec2& a, const Vec2& b) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("angle_between: zero-length vector");
  // atan2 of (|cross|, dot) is numerically stable near 0 and pi.
  return std::atan2(std::abs(a.cross(b)), a.dot(b));
}

// First intersection of the ray origin + t*direction (t >= 0) with the field
// boundary rectangle. The origin must lie inside the (closed) field.
inline Vec2 ray_field_exit(const Vec2& origin, const Vec2& direction,
                           const FieldGeometry& field) {
  if (!field.contains(origin))
    throw std::invalid_argument("ray_field_exit: origin outside field");
  if (direction.is_zero())
    throw std::invalid_argument("ray_field_exit: zero direction");

  double t_exit = std::numeric_limits<double>::infinity();
  if (direction.x > 0.0)
    t_exit = std::min(t_exit, (field.half_length() - origin.x) / direction.x);
  else if (direction.x < 0.0)
    t_exit = std::min(t_exit, (-field.half_length() - origin.x) / direction.x);
  if (direction.y > 0.0)
    t_exit = std::min(t_exit, (field.half_width() - origin.y) / direction.y);
  else if (direction.y < 0.0)
    t_exit = std::min(t_exit, (-field.half_width() - origin.y) / direction.y);

  t_exit = std::max(t_exit, 0.0);
  return origin + direction * t_exit;
}

}  // namespace sslkit
