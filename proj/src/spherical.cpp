#include "bertrand/spherical.hpp"

#include <algorithm>
#include <cmath>

#include "bertrand/quadrature.hpp"
#include "construct.hpp"

namespace bertrand {

namespace {

// Running Simpson integral on a grid from samples on a grid twice as fine.
template <class T>
std::vector<T> simpson_from_fine(const std::vector<T>& fine, double h, const T& start) {
  const std::size_t n = (fine.size() - 1) / 2 + 1;
  std::vector<T> out(n);
  out[0] = start;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t k = 2 * (i - 1);
    out[i] = out[i - 1] + (h / 6.0) * (fine[k] + 4.0 * fine[k + 1] + fine[k + 2]);
  }
  return out;
}

}  // namespace

SphereFit fit_sphere(const FrenetData& d, double tol) {
  const std::size_t n = d.size();
  const double h = d.spacing();
  SphereFit fit;
  std::vector<double> rho(n);
  double max_tau = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = 1.0 / d.kappa[i];
    max_tau = std::max(max_tau, std::abs(d.tau[i]));
  }
  const auto phi = cumulative_on_grid(d.tau, h);

  if (max_tau < tol) {
    fit.radius_degenerate = true;
    fit.theta0 = 0.0;
    fit.R = rho[0];
  } else {
    std::size_t j = 0;
    while (j < n && std::abs(d.tau[j]) < 1e-3 * max_tau) ++j;
    const double drho = grid_derivative(rho, h, j);
    const double psi = std::atan2(-drho / d.tau[j], rho[j]);
    fit.R = std::hypot(rho[j], drho / d.tau[j]);
    fit.theta0 = std::fmod(psi - phi[j], 2.0 * M_PI);
    if (fit.theta0 < 0.0) fit.theta0 += 2.0 * M_PI;
  }
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual, std::abs(rho[i] - fit.R * std::cos(phi[i] + fit.theta0)));
  }
  fit.osculating_ratio = std::cos(fit.theta0);
  fit.center = d.position[0] + fit.R * std::cos(fit.theta0) * d.N[0] -
               fit.R * std::sin(fit.theta0) * d.B[0];
  fit.accepted = fit.residual < tol;
  return fit;
}

std::optional<SphereFit> spherical_test(const FrenetData& data, double tol) {
  SphereFit fit = fit_sphere(data, tol);
  if (!fit.accepted) return std::nullopt;
  return fit;
}

void require_unit_sphere(const Curve& curve) {
  std::vector<double> bad;
  const auto grid = curve.grid();
  const auto pts = curve.positions();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(pts[i].norm() - 1.0) > 1e-6) bad.push_back(grid[i]);
  }
  if (!bad.empty()) throw Error(ErrorCode::NotOnUnitSphere, "curve leaves the unit sphere", bad);
}

std::vector<double> s_m_factor(const Curve& curve, double theta0) {
  require_unit_sphere(curve);
  const Interval d = curve.domain();
  const auto phase = cumulative_simpson(
      [&](double s) {
        const Jet j = curve.jet(s);
        return j.p.dot(j.d1.cross(j.d2)) / j.d1.squaredNorm();
      },
      d.lo, d.hi, curve.sample_count());
  const auto grid = curve.grid();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = curve.jet(grid[i]).d1.norm() * std::cos(phase[i] + theta0);
  }
  return out;
}

SphericalBertrand bertrand_from_spherical(const Curve& M, double theta_c, std::optional<double> tol) {
  // K is doubly integrated on a grid; its measured torsion carries ~1e-6 noise.
  const double t = tol.value_or(std::max(default_tolerance(M), 1e-5));
  const Interval d = M.domain();
  const int n = M.sample_count();
  const double h = d.length() / (n - 1);
  const int m4 = 4 * (n - 1) + 1;

  const auto phi = cumulative_simpson([&](double s) { return detail::frame_or_nan(M, s).tau; },
                                      d.lo, d.hi, m4);
  std::vector<Vec3> g(m4);
  std::vector<double> kappa4(m4);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m4; ++k) {
    const double s = d.at_fraction(static_cast<double>(k) / (m4 - 1));
    const FramePoint f = detail::frame_or_nan(M, s);
    kappa4[k] = f.kappa;
    g[k] = f.kappa * std::cos(phi[k] + theta_c) * f.T;
  }
  for (int k = 0; k < m4; ++k) {
    if (!g[k].allFinite()) {
      throw Error(ErrorCode::FrameUndefined, "curvature below 1e-8", {d.at_fraction(double(k) / (m4 - 1))});
    }
  }

  const FramePoint f0 = frenet_at(M, d.lo);
  const Vec3 start = -std::cos(theta_c) * f0.N + std::sin(theta_c) * f0.B;
  const auto dbeta = simpson_from_fine(g, 0.5 * h, start);  // spacing h/2
  auto beta = simpson_from_fine(dbeta, h, Vec3(Vec3::Zero()));

  double drift = 0.0;
  std::vector<double> where;
  for (std::size_t k = 0; k < dbeta.size(); ++k) {
    const double e = std::abs(dbeta[k].norm() - 1.0);
    drift = std::max(drift, e);
    if (e > 1e-4) where.push_back(d.at_fraction(double(k) / (dbeta.size() - 1)));
  }
  if (!where.empty()) throw Error(ErrorCode::SpeedDrift, "integrated tangent is not unit length", where);

  Curve K = Curve::from_grid(d, std::move(beta), true, n);
  SphericalBertrand out{K, {}, {}, {}, drift};
  out.kappa_bar.resize(n);
  out.tau_bar.resize(n);
  for (int i = 0; i < n; ++i) {
    const double a = phi[4 * i] + theta_c;
    out.kappa_bar[i] = kappa4[4 * i] * std::cos(a);
    out.tau_bar[i] = kappa4[4 * i] * std::sin(a);
  }
  const FrenetData dk = frenet_apparatus(K);
  out.fit = fit_bertrand(dk, BertrandKind::bertrand, t);
  if (!out.fit.accepted) out.fit = fit_bertrand(dk, BertrandKind::b_bertrand, t);
  return out;
}

DualityReport donor_duality_check(const Curve& M, const Curve& K, double theta_c) {
  const FrenetData dm = frenet_apparatus(M);
  const FrenetData dk = frenet_apparatus(K.with_sample_count(M.sample_count()));
  const double h = dm.spacing();
  const auto phi = cumulative_on_grid(dm.tau, h);
  DualityReport r;
  // Signed normal: the measured N̄ flips where κ̄ = κcos(φ + θc) changes sign.
  std::vector<double> sign(dk.size());
  for (std::size_t i = 0; i < dk.size(); ++i) sign[i] = std::cos(phi[i] + theta_c) >= 0.0 ? 1.0 : -1.0;
  r.epsilon = sign[0] * dk.N[0].dot(dm.T[0]) >= 0.0 ? 1 : -1;
  std::vector<double> comp(dk.size());
  std::array<std::vector<double>, 3> integral;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < dk.size(); ++i) comp[i] = sign[i] * dk.N[i][c];
    integral[c] = cumulative_on_grid(comp, h);
  }
  for (std::size_t i = 0; i < dm.size(); ++i) {
    const double a = phi[i] + theta_c;
    const Vec3 expect = -std::cos(a) * dm.N[i] + std::sin(a) * dm.B[i];
    r.tangent_residual = std::max(r.tangent_residual, (dk.T[i] - expect).norm());
    const Vec3 integ(integral[0][i], integral[1][i], integral[2][i]);
    r.normal_integral_residual = std::max(
        r.normal_integral_residual, (r.epsilon * integ - (dm.position[i] - dm.position[0])).norm());
  }
  r.accepted = r.tangent_residual < 1e-5 && r.normal_integral_residual < 1e-5;
  return r;
}

SabbanFrame sabban_frame(const Curve& curve) {
  require_unit_sphere(curve);
  SabbanFrame f;
  f.s = curve.grid();
  const std::size_t n = f.s.size();
  f.gamma.resize(n);
  f.T.resize(n);
  f.Y.resize(n);
  f.kappa_g.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Jet j = curve.jet(f.s[i]);
    const double sp = j.d1.norm();
    f.gamma[i] = j.p;
    f.T[i] = j.d1 / sp;
    f.Y[i] = j.p.cross(f.T[i]);
    const Vec3 dT = (j.d2 - j.d2.dot(f.T[i]) * f.T[i]) / (sp * sp);
    f.kappa_g[i] = j.p.dot(f.T[i].cross(dT));
  }
  return f;
}

SabbanBertrand sabban_bertrand(const Curve& curve, double a, double theta, double tol) {
  if (a == 0.0 || !std::isfinite(a) || std::abs(std::sin(theta)) < 1e-12) {
    throw Error(ErrorCode::DegenerateParameters, "need a ≠ 0 and sin θ ≠ 0");
  }
  require_unit_sphere(curve);
  const double cot = std::cos(theta) / std::sin(theta);
  auto pts = detail::cumulative_vector(curve, [&](double s) -> Vec3 {
    const Jet j = curve.jet(s);
    return a * (j.p + cot * j.p.cross(j.d1.normalized()));
  });
  const Curve raw = detail::grid_curve(curve, std::move(pts), false);
  SabbanBertrand out{reparameterize_arclength(raw), {}};
  const FrenetData data = frenet_apparatus(out.curve);
  out.fit = fit_bertrand(data, BertrandKind::bertrand, tol);
  return out;
}

}  // namespace bertrand
