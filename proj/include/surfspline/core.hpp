#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace surfspline {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }

// Every failure raised by the library derives from Error so callers can
// catch the whole family at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularEvaluationError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class ProjectionError : public Error { using Error::Error; };
class ReachViolation : public Error { using Error::Error; };
class StarShapeViolation : public Error { using Error::Error; };
class DensityUnreachable : public Error { using Error::Error; };
class NormingError : public Error { using Error::Error; };
class ExtrapolationDivergence : public Error { using Error::Error; };
class SingularSystemError : public Error { using Error::Error; };
class ResidualTooLarge : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

}  // namespace surfspline
