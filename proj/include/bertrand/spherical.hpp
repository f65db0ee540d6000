#pragma once

#include <optional>
#include <vector>

#include "bertrand/bertrand.hpp"
#include "bertrand/curve.hpp"
#include "bertrand/frenet.hpp"

namespace bertrand {

struct SphereFit {
  double R = 0.0;
  double theta0 = 0.0;  // phase in [0, 2π)
  Vec3 center = Vec3::Zero();
  double residual = 0.0;  // sup |1/κ − R cos(∫τ + θ0)|
  double osculating_ratio = 1.0;  // cos θ0
  bool radius_degenerate = false;  // τ ≡ 0: R and θ0 not separable, θ0 = 0 reported
  bool accepted = false;
};

/// Fits 1/κ = R cos(∫τ ds + θ0) from 1/κ and its derivative where τ is first
/// significant, then checks it on the whole grid.
SphereFit fit_sphere(const FrenetData& data, double tol);
std::optional<SphereFit> spherical_test(const FrenetData& data, double tol);

/// Throws NotOnUnitSphere when |γ| deviates from 1 by more than 1e-6 on the grid.
void require_unit_sphere(const Curve& curve);

/// S_M(s) = |γ′| cos(∫ det(γ, γ′, γ″)/|γ′|² ds + θ0) on the curve grid.
std::vector<double> s_m_factor(const Curve& spherical_curve, double theta0 = 0.0);

struct SphericalBertrand {
  Curve K;
  BertrandFit fit;                  // bertrand kind when accepted, else b_bertrand
  std::vector<double> kappa_bar;    // κ cos(∫τ + θc), signed
  std::vector<double> tau_bar;      // κ sin(∫τ + θc)
  double speed_drift = 0.0;         // max | |β′| − 1 |
};

/// Integrates β″ = κ cos(∫τ + θc) T twice from β′(s_min) = −cos θc N + sin θc B and
/// β(s_min) = 0. Throws SpeedDrift when |β′| leaves 1 by more than 1e-4.
/// The Bertrand fit on K defaults to max(default_tolerance(M), 1e-5).
SphericalBertrand bertrand_from_spherical(const Curve& M, double theta_c,
                                          std::optional<double> tol = std::nullopt);

struct DualityReport {
  double tangent_residual = 0.0;          // T̄ vs −cos(∫τ + θ0)N + sin(∫τ + θ0)B
  double normal_integral_residual = 0.0;  // ε∫sgn(κ̄)N̄ vs M − M(s_min)
  int epsilon = 1;                        // sign(sgn(κ̄)N̄·T) at s_min
  bool accepted = false;
};

/// K must share M's grid (as built by bertrand_from_spherical).
DualityReport donor_duality_check(const Curve& M, const Curve& K, double theta_c);

struct SabbanFrame {
  std::vector<double> s;
  std::vector<Vec3> gamma, T, Y;
  std::vector<double> kappa_g;  // det(γ, T, T′), T′ by arc length
};

SabbanFrame sabban_frame(const Curve& spherical_curve);

struct SabbanBertrand {
  Curve curve;  // arc-length parameterized
  BertrandFit fit;
};

/// γ̃ = a∫γ ds + a cot θ ∫Y ds. Throws NotOnUnitSphere, DegenerateParameters.
SabbanBertrand sabban_bertrand(const Curve& spherical_curve, double a, double theta,
                               double tol = 1e-5);

}  // namespace bertrand
