#include "bertrand/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bertrand {

std::vector<double> cumulative_on_grid(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (values[i - 1] + values[i]);
    return out;
  }
  // Integral over one cell of the cubic through four equispaced nodes, by cell position.
  static constexpr double kW[3][4] = {
      {9.0, 19.0, -5.0, 1.0}, {-1.0, 13.0, 13.0, -1.0}, {1.0, -5.0, 19.0, 9.0}};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j0 = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(i) - 1, 0,
                                                      static_cast<std::ptrdiff_t>(n) - 4);
    const std::size_t p = i - j0;
    double cell = 0.0;
    for (int k = 0; k < 4; ++k) cell += kW[p][k] * values[j0 + k];
    out[i + 1] = out[i] + cell * h / 24.0;
  }
  return out;
}

double grid_derivative(std::span<const double> v, double h, std::size_t i) {
  const std::size_t n = v.size();
  if (n < 5) throw std::invalid_argument("grid_derivative needs at least five samples");
  if (i >= 2 && i + 2 < n) {
    return (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  }
  if (i == 0) return (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
  if (i == 1) return (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
  if (i == n - 1) {
    return (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) /
           (12.0 * h);
  }
  return (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / (12.0 * h);
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tolerance) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tolerance);
}

}  // namespace bertrand
