#include "socnav/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace socnav {

std::optional<Vec2> Vec2::normalized() const {
  const double n = norm();
  if (!(n > kDegenerateNorm)) return std::nullopt;
  return Vec2{x / n, y / n};
}

double wrap_angle(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Segment2::Segment2(Vec2 a, Vec2 b) : a_(a), b_(b) {
  if (a == b) throw std::invalid_argument("Segment2: endpoints coincide");
}

Vec2 Segment2::closest_point(Vec2 p) const {
  const Vec2 ab = b_ - a_;
  const double t = std::clamp((p - a_).dot(ab) / ab.squared_norm(), 0.0, 1.0);
  return a_ + ab * t;
}

bool ray_disc_intersects(Vec2 origin, Vec2 direction, Vec2 center, double radius) {
  const Vec2 w = origin - center;
  const double c = w.squared_norm() - radius * radius;
  if (c <= 0.0) return true;
  if (!(direction.norm() > kDegenerateNorm)) return false;
  const double b = w.dot(direction);
  if (b >= 0.0) return false;  // heading away; both roots are negative
  return b * b - direction.squared_norm() * c >= 0.0;
}

std::optional<double> ray_disc_first_hit(Vec2 origin, Vec2 direction, Vec2 center,
                                         double radius) {
  if (!ray_disc_intersects(origin, direction, center, radius)) return std::nullopt;
  const Vec2 w = origin - center;
  const double c = w.squared_norm() - radius * radius;
  if (c <= 0.0) return 0.0;
  const double a = direction.squared_norm();
  const double b = w.dot(direction);
  const double disc = std::max(0.0, b * b - a * c);
  // Citardauq form of the smaller root avoids cancellation when b << 0.
  return c / (-b + std::sqrt(disc));
}

double disc_segment_distance(Vec2 center, const Segment2& seg) {
  return (center - seg.closest_point(center)).norm();
}

}  // namespace socnav
