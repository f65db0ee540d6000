#include "construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bertrand/quadrature.hpp"
#include "curve_reps.hpp"
#include "frenet_point.hpp"

namespace bertrand::detail {

FramePoint frame_or_nan(const Curve& curve, double s) {
  FramePoint f;
  if (try_frenet_at(curve, s, f)) return f;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  f.T = f.N = f.B = Vec3::Constant(nan);
  f.kappa = f.tau = nan;
  return f;
}

std::vector<Vec3> cumulative_vector(const Curve& curve, const std::function<Vec3(double)>& f) {
  const Interval d = curve.domain();
  return cumulative_simpson(f, d.lo, d.hi, curve.sample_count());
}

void require_finite(const std::vector<Vec3>& points, const std::vector<double>& grid) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) {
      throw Error(ErrorCode::FrameUndefined, "frame undefined inside the construction interval",
                  {grid[i]});
    }
  }
}

std::function<double(double)> interpolate_profile(Interval d, std::vector<double> values) {
  const auto n = values.size();
  std::vector<double> nodes(n);
  std::vector<Vec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = d.at_fraction(static_cast<double>(i) / static_cast<double>(n - 1));
    pts[i] = Vec3(values[i], 0.0, 0.0);
  }
  nodes.back() = d.hi;
  auto rep = std::make_shared<GridPolyRep>(std::move(nodes), pts, 7);
  return [rep, d](double s) { return rep->jet(std::clamp(s, d.lo, d.hi)).p.x(); };
}

Curve grid_curve(const Curve& base, std::vector<Vec3> points, bool unit_speed) {
  return Curve::from_grid(base.domain(), std::move(points), unit_speed, base.sample_count());
}

}  // namespace bertrand::detail
