#pragma once

// Helpers shared by the curve constructions (integral curves, mates, donors, surfaces).

#include <functional>
#include <vector>

#include "bertrand/curve.hpp"
#include "bertrand/frenet.hpp"

namespace bertrand::detail {

/// Frame at s, or NaN-filled when undefined. Safe inside parallel loops.
FramePoint frame_or_nan(const Curve& curve, double s);

/// Running ∫ f ds on curve.grid(), constant 0 at the first node. f must not throw.
std::vector<Vec3> cumulative_vector(const Curve& curve, const std::function<Vec3(double)>& f);

/// Throws FrameUndefined at the first grid node where a point is not finite.
void require_finite(const std::vector<Vec3>& points, const std::vector<double>& grid);

/// Smooth interpolant of values given on a uniform grid over d.
std::function<double(double)> interpolate_profile(Interval d, std::vector<double> values);

/// Curve through points on base.grid() sharing the base parameter.
Curve grid_curve(const Curve& base, std::vector<Vec3> points, bool unit_speed);

}  // namespace bertrand::detail
