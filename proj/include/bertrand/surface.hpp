#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bertrand/bertrand.hpp"
#include "bertrand/curve.hpp"

namespace bertrand {

/// How the normal offset is chosen per row. `fixed` uses the base fit's λ for every row;
/// `per_row` uses λ u − μ w, which keeps every row a mate for non-helical bases too.
enum class OffsetRule { fixed, per_row };

struct SurfaceParams {
  Branch branch = Branch::plus1;
  std::optional<Interval> t_range;  // default: real-branch domain shrunk by `margin`
  int nt = 16;
  int ns = 128;
  OffsetRule rule = OffsetRule::fixed;
  double margin = 1e-3;
};

struct SurfaceGrid {
  std::vector<double> t_values;
  std::vector<double> s_values;
  std::vector<Vec3> points;  // row-major: points[i * ns + j] = φ(t_i, s_j)
  std::vector<double> u, w, row_lambda;  // per row
  Branch branch = Branch::plus1;
  OffsetRule rule = OffsetRule::fixed;
  double theta = 0.0;
  double lambda = 0.0;

  std::size_t nt() const { return t_values.size(); }
  std::size_t ns() const { return s_values.size(); }
  const Vec3& at(std::size_t i, std::size_t j) const { return points[i * ns() + j]; }
};

/// φ(t, s) = u(t)∫T ds + w(t)∫B ds + λN(s) with (u, w) from the f-Bertrand branches at
/// f = t. ∫T ds is anchored at γ(s_min), so it equals the base position. ∫B ds is anchored at
/// (s_min c − τγ)/κ with c = τT + κB at s_min, the exact antiderivative for helices.
/// Throws NotBertrand, OutOfBranchDomain, DegenerateParameters.
SurfaceGrid bertrand_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params);

namespace reference {
/// Serial evaluation of the same grid.
SurfaceGrid bertrand_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params);
}  // namespace reference

/// One constant-t row rebuilt at the base curve's own resolution (same parameter as base).
Curve surface_row(const Curve& base, const SurfaceGrid& grid, std::size_t row);

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based
};

/// Two triangles per grid cell, vertices row-major. Throws IncompleteGrid on non-finite
/// points or zero-area triangles.
Mesh to_mesh(const SurfaceGrid& grid);

struct SurfaceMatePair {
  SurfaceGrid first, second;
  MateReport report;
  BertrandFit fit_first, fit_second;
};

/// Surfaces over a verified mate pair. The second curve's offset and angle come from the
/// mate relation at s_min. Throws NotMates, NotBertrand.
SurfaceMatePair surface_mate_pair(const Curve& base_a, const Curve& base_b,
                                  const SurfaceParams& params,
                                  std::optional<double> tol = std::nullopt);

}  // namespace bertrand
