#pragma once

#include <cmath>

namespace rfk {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

/// Orthonormal basis (e1, e2) of the plane orthogonal to a unit vector d,
/// oriented so that e1 x e2 = d (a viewer on the +d side sees a standard picture).
struct ProjectionFrame {
  Vec3 e1;
  Vec3 e2;
  Vec3 d;

  static ProjectionFrame from_direction(Vec3 direction) {
    const Vec3 d = normalized(direction);
    const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    Vec3 a{1.0, 0.0, 0.0};
    if (ay <= ax && ay <= az) a = {0.0, 1.0, 0.0};
    if (az < ax && az < ay) a = {0.0, 0.0, 1.0};
    if (ax <= ay && ax <= az) a = {1.0, 0.0, 0.0};
    const Vec3 e1 = normalized(a - dot(a, d) * d);
    return {e1, cross(d, e1), d};
  }

  Vec2 project(Vec3 p) const { return {dot(p, e1), dot(p, e2)}; }
  double height(Vec3 p) const { return dot(p, d); }
};

}  // namespace rfk
