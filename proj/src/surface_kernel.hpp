#pragma once

// Row kernel shared by the parallel and serial surface builders.

#include <vector>

#include "bertrand/surface.hpp"

namespace bertrand::detail {

/// ∫T, ∫B and N sampled on the surface's s grid, plus per-row coefficients.
struct SurfacePlan {
  std::vector<double> s;
  std::vector<Vec3> int_T, int_B, N;
  std::vector<double> t, u, w, lambda;
};

/// Integration constant for ∫B ds at s_min.
Vec3 integral_B_anchor(const Curve& base);

SurfacePlan plan_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params);

inline void fill_row(const SurfacePlan& p, std::size_t i, Vec3* row) {
  const double u = p.u[i], w = p.w[i], lam = p.lambda[i];
  for (std::size_t j = 0; j < p.s.size(); ++j) {
    row[j] = u * p.int_T[j] + w * p.int_B[j] + lam * p.N[j];
  }
}

SurfaceGrid empty_grid(const SurfacePlan& p, const BertrandFit& fit, const SurfaceParams& params);

}  // namespace bertrand::detail
