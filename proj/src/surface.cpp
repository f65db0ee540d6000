#include "bertrand/surface.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "bertrand/quadrature.hpp"
#include "construct.hpp"
#include "surface_kernel.hpp"

namespace bertrand {

namespace detail {

Vec3 integral_B_anchor(const Curve& base) {
  const double s0 = base.domain().lo;
  const FramePoint f = frenet_at(base, s0);
  return (s0 * (f.tau * f.T + f.kappa * f.B) - f.tau * f.position) / f.kappa;
}

SurfacePlan plan_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params) {
  if (!fit.accepted) throw Error(ErrorCode::NotBertrand, "base fit was not accepted");
  if (params.nt < 2 || params.ns < 2) throw Error(ErrorCode::InvalidSpec, "surface resolution must be at least 2 x 2");
  if (std::abs(std::cos(fit.theta)) < 1e-12) {
    throw Error(ErrorCode::DegenerateParameters, "tan θ is infinite for this fit");
  }
  const double tn = std::tan(fit.theta);
  const double bound = std::sqrt(1.0 + tn * tn);
  Interval tr{-bound + params.margin, bound - params.margin};
  if (params.t_range) {
    tr = *params.t_range;
    std::vector<double> bad;
    for (double t : {tr.lo, tr.hi}) {
      if (!(t * t <= 1.0 + tn * tn + 1e-12)) bad.push_back(t);
    }
    if (!bad.empty()) {
      throw Error(ErrorCode::OutOfBranchDomain,
                  "t range must satisfy t² ≤ 1 + tan²θ = " + std::to_string(1.0 + tn * tn), bad);
    }
  }
  if (!(tr.hi >= tr.lo)) throw Error(ErrorCode::OutOfBranchDomain, "empty t range", {tr.lo, tr.hi});

  SurfacePlan p;
  const std::size_t nt = params.nt, ns = params.ns;
  p.t.resize(nt);
  p.u.resize(nt);
  p.w.resize(nt);
  p.lambda.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const double t = tr.at_fraction(static_cast<double>(i) / static_cast<double>(nt - 1));
    // Clamp rounding at the domain edge so the discriminant stays real.
    const double f = std::clamp(t, -bound, bound);
    const FBertrandBranches br = f_bertrand_coefficients(f, fit.theta);
    p.t[i] = t;
    p.u[i] = br.u(params.branch);
    p.w[i] = br.w(params.branch);
    p.lambda[i] = params.rule == OffsetRule::fixed ? fit.lambda
                                                   : fit.lambda * p.u[i] - fit.mu * p.w[i];
  }

  // ∫T and ∫B on a grid at least as fine as the base sampling, then subsampled.
  const Interval d = base.domain();
  const std::size_t r = std::max<std::size_t>(1, (base.sample_count() - 1 + ns - 2) / (ns - 1));
  const int m = static_cast<int>((ns - 1) * r + 1);
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  const auto integ = cumulative_simpson(
      [&](double s) {
        const FramePoint f = frame_or_nan(base, s);
        Vec6 v;
        v << f.T, f.B;
        return v;
      },
      d.lo, d.hi, m);
  p.s.resize(ns);
  p.int_T.resize(ns);
  p.int_B.resize(ns);
  p.N.resize(ns);
  for (std::size_t j = 0; j < ns; ++j) {
    p.s[j] = d.at_fraction(static_cast<double>(j) / static_cast<double>(ns - 1));
    p.int_T[j] = integ[j * r].head<3>();
    p.int_B[j] = integ[j * r].tail<3>();
    p.N[j] = frame_or_nan(base, p.s[j]).N;
  }
  p.s.back() = d.hi;
  const Vec3 anchor_T = base.position(d.lo);
  const Vec3 anchor_B = integral_B_anchor(base);
  for (std::size_t j = 0; j < ns; ++j) {
    p.int_T[j] += anchor_T;
    p.int_B[j] += anchor_B;
  }
  require_finite(p.int_T, p.s);
  require_finite(p.N, p.s);
  return p;
}

SurfaceGrid empty_grid(const SurfacePlan& p, const BertrandFit& fit, const SurfaceParams& params) {
  SurfaceGrid g;
  g.t_values = p.t;
  g.s_values = p.s;
  g.u = p.u;
  g.w = p.w;
  g.row_lambda = p.lambda;
  g.branch = params.branch;
  g.rule = params.rule;
  g.theta = fit.theta;
  g.lambda = fit.lambda;
  g.points.resize(p.t.size() * p.s.size());
  return g;
}

}  // namespace detail

SurfaceGrid bertrand_surface(const Curve& base, const BertrandFit& fit, const SurfaceParams& params) {
  const detail::SurfacePlan plan = detail::plan_surface(base, fit, params);
  SurfaceGrid g = detail::empty_grid(plan, fit, params);
  const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(plan.t.size());
  const std::size_t ns = plan.s.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nt; ++i) {
    detail::fill_row(plan, static_cast<std::size_t>(i), g.points.data() + i * ns);
  }
  return g;
}

Curve surface_row(const Curve& base, const SurfaceGrid& grid, std::size_t row) {
  if (row >= grid.nt()) throw Error(ErrorCode::OutOfDomain, "row index out of range", {double(row)});
  const FrameField field = FrameField::constant(grid.u[row], 0.0, grid.w[row]);
  const double lam = grid.row_lambda[row];
  auto pts = detail::cumulative_vector(base, [&](double s) {
    return field.vector(detail::frame_or_nan(base, s), s);
  });
  const auto s = base.grid();
  detail::require_finite(pts, s);
  const Vec3 anchor = grid.u[row] * base.position(s.front()) + grid.w[row] * detail::integral_B_anchor(base);
  for (std::size_t j = 0; j < s.size(); ++j) pts[j] += anchor + lam * frenet_at(base, s[j]).N;
  return detail::grid_curve(base, std::move(pts), false).with_normal_hint([base](double x) {
    return detail::frame_or_nan(base, x).N;
  });
}

Mesh to_mesh(const SurfaceGrid& g) {
  const std::size_t nt = g.nt(), ns = g.ns();
  if (nt < 2 || ns < 2 || g.points.size() != nt * ns) {
    throw Error(ErrorCode::IncompleteGrid, "surface grid needs at least 2 x 2 points");
  }
  double scale = 1.0;
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    if (!g.points[k].allFinite()) {
      throw Error(ErrorCode::IncompleteGrid, "non-finite grid point",
                  {g.t_values[k / ns], g.s_values[k % ns]});
    }
    scale = std::max(scale, g.points[k].cwiseAbs().maxCoeff());
  }
  Mesh mesh;
  mesh.vertices = g.points;
  mesh.triangles.reserve((nt - 1) * (ns - 1) * 2);
  const double min_area = 1e-14 * scale * scale;
  std::vector<double> bad;
  auto area = [&](int a, int b, int c) {
    const Vec3 &A = g.points[a], &B = g.points[b], &C = g.points[c];
    return 0.5 * (B - A).cross(C - A).norm();
  };
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    for (std::size_t j = 0; j + 1 < ns; ++j) {
      const int v00 = static_cast<int>(i * ns + j), v01 = v00 + 1;
      const int v10 = static_cast<int>((i + 1) * ns + j), v11 = v10 + 1;
      for (const std::array<int, 3>& tri : {std::array<int, 3>{v00, v10, v11}, std::array<int, 3>{v00, v11, v01}}) {
        if (!(area(tri[0], tri[1], tri[2]) > min_area)) {
          bad.push_back(g.t_values[i]);
          bad.push_back(g.s_values[j]);
        }
        mesh.triangles.push_back(tri);
      }
    }
  }
  if (!bad.empty()) {
    throw Error(ErrorCode::IncompleteGrid,
                "degenerate triangles in " + std::to_string(bad.size() / 2) + " cell(s)", bad);
  }
  return mesh;
}

SurfaceMatePair surface_mate_pair(const Curve& base_a, const Curve& base_b,
                                  const SurfaceParams& params, std::optional<double> tol) {
  const Curve a = reparameterize_arclength(base_a);
  const Curve b = reparameterize_arclength(base_b).with_sample_count(a.sample_count());
  MateReport report = verify_mate(a, b);
  if (!report.accepted) {
    throw Error(ErrorCode::NotMates, "curves are not a Bertrand mate pair (" + report.reason + ")");
  }
  const double t = tol.value_or(default_tolerance(base_a));
  const BertrandFit fit_a = fit_bertrand(frenet_apparatus(a), BertrandKind::bertrand, t);
  if (!fit_a.accepted) throw Error(ErrorCode::NotBertrand, "first curve is not Bertrand");

  // The second curve sees the first at offset −λ̄N̄ and angle θ̄ measured in its own frame.
  const double s0 = a.domain().lo, s0b = b.domain().lo;
  const FramePoint fa = frenet_at(a, s0), fb = frenet_at(b, s0b);
  BertrandFit fit_b;
  fit_b.kind = BertrandKind::bertrand;
  fit_b.lambda = (fa.position - fb.position).dot(fb.N);
  fit_b.theta = std::atan2(fa.T.dot(fb.B), fa.T.dot(fb.T));
  fit_b.mu = fit_b.lambda * std::cos(fit_b.theta) / std::sin(fit_b.theta);
  fit_b.accepted = true;

  SurfaceMatePair out{bertrand_surface(a, fit_a, params), bertrand_surface(b, fit_b, params),
                      std::move(report), fit_a, fit_b};
  return out;
}

}  // namespace bertrand
