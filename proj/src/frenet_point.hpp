#pragma once

// Shared pieces of the parallel and serial Frenet kernels.

#include <vector>

#include "bertrand/frenet.hpp"

namespace bertrand::detail {

/// Frame at s; false when κ < kKappaMin and the curve has no normal hint.
bool try_frenet_at(const Curve& curve, double s, FramePoint& out);

FrenetData allocate(std::size_t n);
void store(FrenetData& d, std::size_t i, double s, const FramePoint& f);
[[noreturn]] void throw_frame_undefined(std::vector<double> where);

}  // namespace bertrand::detail
