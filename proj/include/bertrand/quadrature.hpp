#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bertrand {

namespace detail {
template <class T>
T zero_of() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    return T::Zero();
  }
}
}  // namespace detail

/// Running integral F(x_i) = ∫_{a}^{x_i} f on the uniform grid x_i = a + i(b − a)/(n − 1),
/// composite Simpson on each cell with its midpoint. F(a) = 0.
template <class F>
auto cumulative_simpson(F&& f, double a, double b, int n) {
  using T = std::decay_t<decltype(f(a))>;
  const double h = (b - a) / (n - 1);
  const int m = 2 * n - 1;
  std::vector<T> samples(m);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m; ++k) {
    samples[k] = f(a + 0.5 * h * k);
  }
  std::vector<T> out(n);
  out[0] = detail::zero_of<T>();
  for (int i = 1; i < n; ++i) {
    const int k = 2 * (i - 1);
    out[i] = out[i - 1] + (h / 6.0) * (samples[k] + 4.0 * samples[k + 1] + samples[k + 2]);
  }
  return out;
}

/// Running integral of values sampled on a uniform grid with spacing h. Each cell is
/// integrated with the cubic through the four surrounding nodes (fourth order).
std::vector<double> cumulative_on_grid(std::span<const double> values, double h);

/// Derivative of grid samples at an index with a five-point stencil (one-sided near ends).
double grid_derivative(std::span<const double> values, double h, std::size_t index);

/// Adaptive Gauss–Kronrod quadrature.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tolerance = 1e-13);

}  // namespace bertrand
