#pragma once

// Curves and closed forms shared by the unit tests and the acceptance runner.

#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "bertrand/curve.hpp"
#include "bertrand/frenet.hpp"

namespace fixtures {

using bertrand::Curve;
using bertrand::Vec3;

inline Curve helix(double a, double b, int n = bertrand::kDefaultSampleCount, double length = 10.0) {
  bertrand::CurveSpec spec;
  spec.family = bertrand::HelixSpec{a, b};
  spec.domain = bertrand::Interval{0.0, length};
  spec.sample_count = n;
  return bertrand::build_curve(spec);
}

inline Curve circle(double r, double length = 10.0, int n = bertrand::kDefaultSampleCount) {
  bertrand::CurveSpec spec;
  spec.family = bertrand::CircleSpec{r};
  spec.domain = bertrand::Interval{0.0, length};
  spec.sample_count = n;
  return bertrand::build_curve(spec);
}

inline Curve sphere_circle(double rho, double length = 3.0, int n = bertrand::kDefaultSampleCount) {
  bertrand::CurveSpec spec;
  spec.family = bertrand::SphereCircleSpec{rho};
  spec.domain = bertrand::Interval{0.0, length};
  spec.sample_count = n;
  return bertrand::build_curve(spec);
}

/// κ ≡ 1, τ = s.
inline Curve salkowski(double length = 4.0) {
  return bertrand::integrate_frenet_ode([](double) { return 1.0; }, [](double s) { return s; },
                                        {}, length);
}

/// κ = s + 2, τ ≡ 1.
inline Curve anti_salkowski(double length = 4.0) {
  return bertrand::integrate_frenet_ode([](double s) { return s + 2.0; }, [](double) { return 1.0; },
                                        {}, length);
}

/// Curve on a sphere of radius R: 1/κ = R cos(τ s + θ0) with constant τ.
inline Curve spherical_fixture(double R, double theta0, double tau, double length) {
  return bertrand::integrate_frenet_ode(
      [=](double s) { return 1.0 / (R * std::cos(tau * s + theta0)); }, [=](double) { return tau; }, {},
      length);
}

/// Helix(1,1) surface closed form: (a(t) cos(s/√2), a(t) sin(s/√2), b(t) s/√2).
inline Vec3 helix_surface_point(double t, double s) {
  const double r2 = std::sqrt(2.0);
  const double u = (t + std::sqrt(2.0 - t * t)) / 2.0;
  const double w = std::sqrt(std::max(0.0, 1.0 - t * std::sqrt(2.0 - t * t))) / r2;
  const double a = u - w - 1.0, b = u + w;
  return {a * std::cos(s / r2), a * std::sin(s / r2), b * s / r2};
}

/// Largest point distance after the best rigid motion taking `p` onto `q` (Kabsch).
inline double aligned_distance(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  const std::size_t n = p.size();
  Vec3 cp = Vec3::Zero(), cq = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    cp += p[i];
    cq += q[i];
  }
  cp /= double(n);
  cq /= double(n);
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) H += (p[i] - cp) * (q[i] - cq).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  D(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d R = svd.matrixV() * D * svd.matrixU().transpose();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, (R * (p[i] - cp) + cq - q[i]).norm());
  return worst;
}

/// Largest distance after translating `p` so its first point lands on `q`'s first point.
inline double translated_distance(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  const Vec3 shift = q.front() - p.front();
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, (p[i] + shift - q[i]).norm());
  return worst;
}

}  // namespace fixtures
