#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bertrand/curve.hpp"

namespace bertrand {

inline constexpr double kKappaMin = 1e-8;

/// Frenet frame and curvatures at one parameter value.
struct FramePoint {
  Vec3 position = Vec3::Zero();
  Vec3 T = Vec3::UnitX();
  Vec3 N = Vec3::UnitY();
  Vec3 B = Vec3::UnitZ();
  double kappa = 0.0;
  double tau = 0.0;
  double speed = 1.0;  // |γ′| in the curve's own parameter
};

/// Frenet apparatus sampled on a uniform grid.
struct FrenetData {
  std::vector<double> s;
  std::vector<Vec3> position;
  std::vector<Vec3> T, N, B;
  std::vector<double> kappa, tau;
  std::vector<double> speed;

  std::size_t size() const { return s.size(); }
  double spacing() const { return s.size() > 1 ? s[1] - s[0] : 0.0; }
  FramePoint at(std::size_t i) const {
    return {position[i], T[i], N[i], B[i], kappa[i], tau[i], speed[i]};
  }
};

/// Frame at a single parameter. Curves carrying a normal hint fall back to it where
/// κ < kKappaMin; otherwise throws FrameUndefined.
FramePoint frenet_at(const Curve& curve, double s);

/// Apparatus on curve.grid(), evaluated in parallel. Throws FrameUndefined listing every
/// offending grid value.
FrenetData frenet_apparatus(const Curve& curve);

namespace reference {
/// Serial evaluation, kept as the oracle for the parallel kernel.
FrenetData frenet_apparatus(const Curve& curve);
}  // namespace reference

/// Sup-norm Frenet-Serret residuals ‖T′ − κN‖, ‖N′ + κT − τB‖, ‖B′ + τN‖ from grid
/// differences. Only meaningful for unit-speed curves.
std::array<double, 3> frenet_residuals(const FrenetData& data);

/// Worst orthonormality / handedness defect over the grid.
double frame_defect(const FrenetData& data);

struct CurveClass {
  bool is_planar = false;
  bool is_general_helix = false;
  bool is_salkowski = false;
  bool is_anti_salkowski = false;
  double constancy_tolerance = 0.0;
};

/// (max − min) / max(1, mean |v|) < tol.
bool is_constant(const std::vector<double>& values, double tol);

CurveClass classify(const FrenetData& data, double tol);

/// 1e-3 for sampled curves, 1e-6 otherwise.
double default_tolerance(const Curve& curve);

struct Frame {
  Vec3 T = Vec3::UnitX();
  Vec3 N = Vec3::UnitY();
  Vec3 B = Vec3::UnitZ();
};

/// Unit-speed curve on [0, length] with prescribed κ(s) > 0 and τ(s), starting at the
/// origin with the given frame. Fixed-step RK4 with per-step re-orthonormalization.
/// Throws NonPositiveKappa.
Curve integrate_frenet_ode(const std::function<double(double)>& kappa,
                           const std::function<double(double)>& tau, const Frame& initial,
                           double length, int sample_count = kDefaultSampleCount);

}  // namespace bertrand
