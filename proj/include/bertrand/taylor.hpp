#pragma once

#include <array>
#include <cmath>

namespace bertrand {

/// Truncated Taylor series c0 + c1 h + c2 h² + c3 h³. Enough forward-mode
/// differentiation to get exact third derivatives of closed-form curves.
struct Taylor3 {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  Taylor3() = default;
  Taylor3(double v) : c{v, 0.0, 0.0, 0.0} {}  // NOLINT: implicit from constants
  Taylor3(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {}

  static Taylor3 variable(double t) { return {t, 1.0, 0.0, 0.0}; }

  double value() const { return c[0]; }
  /// k-th derivative, k in 0..3.
  double derivative(int k) const {
    static constexpr double kFact[4] = {1.0, 1.0, 2.0, 6.0};
    return c[k] * kFact[k];
  }
};

inline Taylor3 operator+(const Taylor3& a, const Taylor3& b) {
  return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
}
inline Taylor3 operator-(const Taylor3& a, const Taylor3& b) {
  return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
}
inline Taylor3 operator-(const Taylor3& a) { return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }
inline Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
  return {a.c[0] * b.c[0], a.c[0] * b.c[1] + a.c[1] * b.c[0],
          a.c[0] * b.c[2] + a.c[1] * b.c[1] + a.c[2] * b.c[0],
          a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] + a.c[3] * b.c[0]};
}
inline Taylor3 operator/(const Taylor3& a, const Taylor3& b) {
  Taylor3 q;
  q.c[0] = a.c[0] / b.c[0];
  q.c[1] = (a.c[1] - q.c[0] * b.c[1]) / b.c[0];
  q.c[2] = (a.c[2] - q.c[0] * b.c[2] - q.c[1] * b.c[1]) / b.c[0];
  q.c[3] = (a.c[3] - q.c[0] * b.c[3] - q.c[1] * b.c[2] - q.c[2] * b.c[1]) / b.c[0];
  return q;
}

namespace detail {
// Compose a scalar function with derivatives f, f', f'', f''' at x0 onto a series.
inline Taylor3 compose(const Taylor3& x, double f0, double f1, double f2, double f3) {
  const double a1 = x.c[1], a2 = x.c[2], a3 = x.c[3];
  return {f0, f1 * a1, f1 * a2 + 0.5 * f2 * a1 * a1,
          f1 * a3 + f2 * a1 * a2 + f3 * a1 * a1 * a1 / 6.0};
}
}  // namespace detail

inline Taylor3 sin(const Taylor3& x) {
  const double s = std::sin(x.c[0]), co = std::cos(x.c[0]);
  return detail::compose(x, s, co, -s, -co);
}
inline Taylor3 cos(const Taylor3& x) {
  const double s = std::sin(x.c[0]), co = std::cos(x.c[0]);
  return detail::compose(x, co, -s, -co, s);
}
inline Taylor3 sqrt(const Taylor3& x) {
  const double r = std::sqrt(x.c[0]);
  return detail::compose(x, r, 0.5 / r, -0.25 / (r * x.c[0]), 0.375 / (r * x.c[0] * x.c[0]));
}

}  // namespace bertrand
