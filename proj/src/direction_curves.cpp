#include "bertrand/direction_curves.hpp"

#include <algorithm>
#include <cmath>

#include "bertrand/bertrand.hpp"
#include "bertrand/quadrature.hpp"
#include "construct.hpp"

namespace bertrand {

FrameField FrameField::constant(double u, double v, double w) {
  return {[u](double) { return u; }, [v](double) { return v; }, [w](double) { return w; }};
}

void require_unit_field(const Curve& curve, const FrameField& field) {
  std::vector<double> bad;
  for (double s : curve.grid()) {
    if (std::abs(field.coefficients(s).squaredNorm() - 1.0) > 1e-8) bad.push_back(s);
  }
  if (!bad.empty()) throw Error(ErrorCode::NonUnitField, "u² + v² + w² must equal 1", bad);
}

Curve integral_curve(const Curve& curve, const FrameField& field) {
  require_unit_field(curve, field);
  auto pts = detail::cumulative_vector(curve, [&](double s) {
    return field.vector(detail::frame_or_nan(curve, s), s);
  });
  detail::require_finite(pts, curve.grid());
  return detail::grid_curve(curve, std::move(pts), true);
}

TransformedCurvatures transform_curvatures(std::span<const double> kappa,
                                           std::span<const double> tau, double u, double w) {
  if (std::abs(u * u + w * w - 1.0) > 1e-10) {
    throw Error(ErrorCode::NonUnitCoefficients, "u² + w² must equal 1");
  }
  if (kappa.size() != tau.size()) throw Error(ErrorCode::InvalidSpec, "κ and τ grids differ in size");
  TransformedCurvatures out;
  out.kappa_V.resize(kappa.size());
  out.tau_V.resize(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    out.kappa_V[i] = u * kappa[i] - w * tau[i];
    out.tau_V[i] = w * kappa[i] + u * tau[i];
  }
  return out;
}

TransformedCurvatures inverse_transform_curvatures(std::span<const double> kappa_V,
                                                   std::span<const double> tau_V, double u,
                                                   double w) {
  if (std::abs(u * u + w * w - 1.0) > 1e-10) {
    throw Error(ErrorCode::NonUnitCoefficients, "u² + w² must equal 1");
  }
  if (kappa_V.size() != tau_V.size()) throw Error(ErrorCode::InvalidSpec, "κ and τ grids differ in size");
  TransformedCurvatures out;
  out.kappa_V.resize(kappa_V.size());
  out.tau_V.resize(kappa_V.size());
  for (std::size_t i = 0; i < kappa_V.size(); ++i) {
    out.kappa_V[i] = u * kappa_V[i] + w * tau_V[i];
    out.tau_V[i] = -w * kappa_V[i] + u * tau_V[i];
  }
  return out;
}

DonorResult principal_donor(const Curve& curve, bool strict) {
  const Interval d = curve.domain();
  const int n = curve.sample_count();
  // ∫τ on a grid four times finer than the sample grid, then interpolated.
  const int fine = 4 * (n - 1) + 1;
  auto phase_fine = cumulative_simpson(
      [&](double s) { return detail::frame_or_nan(curve, s).tau; }, d.lo, d.hi, fine);
  for (int i = 0; i < fine; ++i) {
    if (!std::isfinite(phase_fine[i])) {
      throw Error(ErrorCode::FrameUndefined, "curvature below 1e-8", {d.at_fraction(double(i) / (fine - 1))});
    }
  }
  const auto phase = detail::interpolate_profile(d, std::move(phase_fine));

  const auto grid = curve.grid();
  std::vector<double> c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) c[i] = std::cos(phase(grid[i]));

  constexpr double kVMin = 1e-6;
  DonorResult out{curve, d, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(c[i]) <= kVMin) {
      out.crossings.push_back(grid[i]);
    } else if (i + 1 < grid.size() && std::abs(c[i + 1]) > kVMin && c[i] * c[i + 1] < 0.0) {
      const double f = c[i] / (c[i] - c[i + 1]);
      out.crossings.push_back(grid[i] + f * (grid[i + 1] - grid[i]));
    }
  }
  if (!out.crossings.empty() && strict) {
    throw Error(ErrorCode::VanishingV, "v = −cos ∫τ vanishes inside the domain", out.crossings);
  }

  // Longest run of nodes with |v| > 1e-6 and a single sign.
  std::size_t best_lo = 0, best_hi = 0, run_lo = 0;
  bool in_run = false;
  for (std::size_t i = 0; i <= grid.size(); ++i) {
    const bool good = i < grid.size() && std::abs(c[i]) > kVMin &&
                      (!in_run || (c[i] > 0.0) == (c[run_lo] > 0.0));
    if (good && !in_run) {
      run_lo = i;
      in_run = true;
    } else if (!good && in_run) {
      if (grid[i - 1] - grid[run_lo] > grid[best_hi] - grid[best_lo]) {
        best_lo = run_lo;
        best_hi = i - 1;
      }
      in_run = false;
      if (i < grid.size() && std::abs(c[i]) > kVMin) {
        run_lo = i;
        in_run = true;
      }
    }
  }
  if (best_hi < best_lo + 4) {
    throw Error(ErrorCode::VanishingV, "no subinterval with |v| > 1e-6", out.crossings);
  }

  Curve base = curve;
  if (best_lo != 0 || best_hi + 1 != grid.size()) {
    out.domain = {grid[best_lo], grid[best_hi]};
    base = curve.with_domain(out.domain);
  }
  FrameField field{[](double) { return 0.0; },
                   [phase](double s) { return -std::cos(phase(s)); },
                   [phase](double s) { return std::sin(phase(s)); }};
  out.donor = integral_curve(base, field);
  for (double s : out.donor.grid()) out.phase.push_back(phase(s));
  return out;
}

TransferReport bertrand_transfer_check(const Curve& curve, double u, double w,
                                       std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(curve));
  const FrenetData base = frenet_apparatus(curve);
  const BertrandFit fit = fit_bertrand(base, BertrandKind::bertrand, t);
  if (!fit.accepted) throw Error(ErrorCode::NotBertrand, "base curve is not Bertrand");

  TransferReport r;
  r.lambda = fit.lambda;
  r.mu = fit.mu;
  r.lambda_bar = fit.lambda * u - fit.mu * w;
  r.mu_bar = fit.lambda * w + fit.mu * u;

  const auto tc = transform_curvatures(base.kappa, base.tau, u, w);
  for (std::size_t i = 0; i < base.size(); ++i) {
    r.algebraic_residual = std::max(
        r.algebraic_residual, std::abs(r.lambda_bar * tc.kappa_V[i] + r.mu_bar * tc.tau_V[i] - 1.0));
  }

  const Curve realized = integral_curve(curve, FrameField::constant(u, 0.0, w));
  const FrenetData meas = frenet_apparatus(realized);
  r.epsilon = meas.N[0].dot(base.N[0]) >= 0.0 ? 1 : -1;
  r.normal_collinearity = 1.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double dot = meas.N[i].dot(base.N[i]);
    r.normal_collinearity = std::min(r.normal_collinearity, std::abs(dot));
    // Measured κ is non-negative; the sign of the transformed value shows up as N_V = −N.
    const double kappa_signed = dot >= 0.0 ? meas.kappa[i] : -meas.kappa[i];
    r.measured_residual = std::max(
        r.measured_residual, std::abs(r.lambda_bar * kappa_signed + r.mu_bar * meas.tau[i] - 1.0));
  }
  r.accepted = r.algebraic_residual < 1e-10 && r.measured_residual < std::max(t, 1e-6) &&
               r.normal_collinearity > 1.0 - kCollinearityTol;
  return r;
}

}  // namespace bertrand
