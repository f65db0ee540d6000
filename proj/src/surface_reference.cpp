#include "bertrand/surface.hpp"
#include "surface_kernel.hpp"

namespace bertrand::reference {

SurfaceGrid bertrand_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params) {
  const detail::SurfacePlan plan = detail::plan_surface(base, fit, params);
  SurfaceGrid g = detail::empty_grid(plan, fit, params);
  for (std::size_t i = 0; i < plan.t.size(); ++i) {
    detail::fill_row(plan, i, g.points.data() + i * plan.s.size());
  }
  return g;
}

}  // namespace bertrand::reference
