#pragma once

#include <feat2map/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace feat2map {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Tolerance for angle equality unless an operation states otherwise.
inline constexpr double kAngleTol = 1e-6;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wrap an angle to the canonical interval (-pi, pi].
inline double wrap_pi(double rad) {
  double a = std::fmod(rad + kPi, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a - kPi;
}

// Wrap an angle to [0, 2*pi).
inline double wrap_two_pi(double rad) {
  double a = std::fmod(rad, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point2&) const = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

inline bool is_finite(Point2 p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

// Unit vector along a heading.
inline Point2 unit_vector(double heading_rad) {
  return {std::cos(heading_rad), std::sin(heading_rad)};
}

// An angle held in the canonical interval (-pi, pi].
class Angle {
 public:
  constexpr Angle() = default;

  static Angle radians(double rad) {
    if (!std::isfinite(rad)) throw NonFiniteNumber("non-finite angle");
    return Angle(wrap_pi(rad));
  }
  static Angle degrees(double deg) { return radians(deg2rad(deg)); }

  double rad() const { return value_; }
  double deg() const { return rad2deg(value_); }

  Angle reversed() const { return Angle(wrap_pi(value_ + kPi)); }

  bool operator==(const Angle&) const = default;

 private:
  explicit constexpr Angle(double canonical) : value_(canonical) {}
  double value_ = 0.0;
};

// Smallest signed difference a - b, in (-pi, pi].
inline double angle_diff(Angle a, Angle b) { return wrap_pi(a.rad() - b.rad()); }

// A single cubic Bezier segment; the travel direction is increasing t.
struct CubicBezier {
  Point2 p0, p1, p2, p3;

  CubicBezier() = default;
  CubicBezier(Point2 a, Point2 b, Point2 c, Point2 d) : p0(a), p1(b), p2(c), p3(d) {
    if (!is_finite(p0) || !is_finite(p1) || !is_finite(p2) || !is_finite(p3))
      throw NonFiniteNumber("non-finite Bezier control point");
    if (p0 == p1 && p1 == p2 && p2 == p3)
      throw ZeroLengthCurve("all four control points coincide");
  }

  bool operator==(const CubicBezier&) const = default;

  // Same shape, opposite travel direction.
  CubicBezier reversed() const { return CubicBezier(p3, p2, p1, p0); }
};

// Build a curve from endpoint poses. The inner control points sit at half the
// endpoint distance along the start/end headings.
inline CubicBezier bezier_from_endpoints(Point2 start, Angle start_heading,
                                         Point2 end, Angle end_heading) {
  const double d = 0.5 * distance(start, end);
  if (d <= 0.0) throw ZeroLengthCurve("start and end coincide");
  const Point2 p1 = start + unit_vector(start_heading.rad()) * d;
  const Point2 p2 = end - unit_vector(end_heading.rad()) * d;
  return CubicBezier(start, p1, p2, end);
}

inline Point2 bezier_eval(const CubicBezier& c, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ParameterOutOfRange("bezier parameter outside [0,1]: t=" + std::to_string(t));
  const double u = 1.0 - t;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * t;
  const double b2 = 3.0 * u * t * t;
  const double b3 = t * t * t;
  return c.p0 * b0 + c.p1 * b1 + c.p2 * b2 + c.p3 * b3;
}

inline Point2 bezier_derivative(const CubicBezier& c, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ParameterOutOfRange("bezier parameter outside [0,1]: t=" + std::to_string(t));
  const double u = 1.0 - t;
  const Point2 d0 = c.p1 - c.p0;
  const Point2 d1 = c.p2 - c.p1;
  const Point2 d2 = c.p3 - c.p2;
  return d0 * (3.0 * u * u) + d1 * (6.0 * u * t) + d2 * (3.0 * t * t);
}

inline Angle bezier_heading(const CubicBezier& c, double t) {
  const Point2 v = bezier_derivative(c, t);
  if (v.norm() < 1e-12) throw DegenerateTangent("zero tangent at t=" + std::to_string(t));
  return Angle::radians(std::atan2(v.y, v.x));
}

// Shift a point sideways; positive offsets go to the right of the heading.
inline Point2 perpendicular_offset(Point2 p, Angle heading, double offset) {
  const double h = heading.rad();
  return p + Point2{std::sin(h), -std::cos(h)} * offset;
}

// Counter-clockwise gaps between consecutive socket angles, starting at the
// socket closest to East in [0, 2*pi) order. The gaps sum to 2*pi.
inline std::vector<double> ccw_gap_angles(const std::vector<Angle>& socket_angles) {
  if (socket_angles.size() < 2) throw Error("ccw_gap_angles: need at least two angles");
  std::vector<double> keys;
  keys.reserve(socket_angles.size());
  for (Angle a : socket_angles) keys.push_back(wrap_two_pi(a.rad()));
  std::sort(keys.begin(), keys.end());
  const std::size_t n = keys.size();
  std::vector<double> gaps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? keys[i + 1] : keys[0] + kTwoPi;
    gaps[i] = next - keys[i];
    if (gaps[i] < kAngleTol)
      throw DuplicateSocketAngle("socket angles coincide within tolerance");
  }
  return gaps;
}

// t-uniform polyline sampling, endpoints included.
inline std::vector<Point2> sample_polyline(const CubicBezier& c, int points = 33) {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out.push_back(bezier_eval(c, static_cast<double>(i) / (points - 1)));
  return out;
}

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

}  // namespace feat2map
