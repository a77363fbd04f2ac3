#pragma once

#include <cmath>

namespace bohm {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// Column-major 2x2 matrix: column 0 is (m00, m10).
struct Mat2 {
  double m00 = 1.0, m01 = 0.0;
  double m10 = 0.0, m11 = 1.0;
};

inline Vec2 apply(const Mat2& m, Vec2 v) {
  return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
}
inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}
inline double trace(const Mat2& m) { return m.m00 + m.m11; }
inline double det(const Mat2& m) { return m.m00 * m.m11 - m.m01 * m.m10; }

// Wrap an angle into [-pi, pi).
inline double wrap_pi(double a) {
  double w = a - two_pi * std::floor((a + pi) / two_pi);
  if (w >= pi) w -= two_pi;  // guards the floor rounding edge
  return w;
}

// Wrap an angle into [0, 2*pi).
inline double wrap_2pi(double a) {
  double w = a - two_pi * std::floor(a / two_pi);
  if (w >= two_pi) w -= two_pi;
  if (w < 0.0) w += two_pi;
  return w;
}

}  // namespace bohm
