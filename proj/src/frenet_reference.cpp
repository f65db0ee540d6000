#include "bertrand/frenet.hpp"
#include "frenet_point.hpp"

namespace bertrand::reference {

FrenetData frenet_apparatus(const Curve& curve) {
  const auto grid = curve.grid();
  FrenetData data = detail::allocate(grid.size());
  std::vector<double> bad;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    FramePoint f;
    if (!detail::try_frenet_at(curve, grid[i], f)) bad.push_back(grid[i]);
    detail::store(data, i, grid[i], f);
  }
  if (!bad.empty()) detail::throw_frame_undefined(std::move(bad));
  return data;
}

}  // namespace bertrand::reference
