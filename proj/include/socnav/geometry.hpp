#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace socnav {

/// Planar vector. Used for positions (m) and for velocities (m/s).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  constexpr double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }

  /// Unit vector, or nothing when the norm is at or below kDegenerateNorm.
  std::optional<Vec2> normalized() const;

  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }

  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline constexpr double kDegenerateNorm = 1e-9;
inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

struct Pose2 {
  Vec2 position;
  double heading = 0.0;  // radians, kept in (-pi, pi]

  Pose2() = default;
  Pose2(Vec2 p, double theta) : position(p), heading(wrap_angle(theta)) {}
  Pose2(double x, double y, double theta) : Pose2(Vec2{x, y}, theta) {}

  friend bool operator==(const Pose2&, const Pose2&) = default;
};

/// Static obstacle edge. Throws std::invalid_argument when a == b.
class Segment2 {
 public:
  Segment2(Vec2 a, Vec2 b);

  Vec2 a() const { return a_; }
  Vec2 b() const { return b_; }
  Vec2 closest_point(Vec2 p) const;

  friend bool operator==(const Segment2&, const Segment2&) = default;

 private:
  Vec2 a_;
  Vec2 b_;
};

// True iff some t > 0 puts origin + t*direction inside or on the closed disc.
// A zero direction degenerates to "origin is inside the disc". Tangency counts.
bool ray_disc_intersects(Vec2 origin, Vec2 direction, Vec2 center, double radius);

// Smallest t >= 0 at which the ray touches the closed disc; 0 when the origin
// is already inside. Empty when ray_disc_intersects is false.
std::optional<double> ray_disc_first_hit(Vec2 origin, Vec2 direction, Vec2 center,
                                         double radius);

double disc_segment_distance(Vec2 center, const Segment2& seg);

}  // namespace socnav
