#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bertrand/curve.hpp"
#include "bertrand/frenet.hpp"

namespace bertrand {

/// V = uT + vN + wB with coefficients given as functions of arc length.
struct FrameField {
  std::function<double(double)> u, v, w;

  static FrameField constant(double u, double v, double w);
  Vec3 coefficients(double s) const { return {u(s), v(s), w(s)}; }
  Vec3 vector(const FramePoint& f, double s) const {
    return u(s) * f.T + v(s) * f.N + w(s) * f.B;
  }
};

/// Throws NonUnitField when u² + v² + w² deviates from 1 by more than 1e-8 on the grid.
void require_unit_field(const Curve& curve, const FrameField& field);

/// γ_V(s) = ∫ V ds from the domain start, same parameter as the base. Throws NonUnitField.
Curve integral_curve(const Curve& curve, const FrameField& field);

struct TransformedCurvatures {
  std::vector<double> kappa_V;
  std::vector<double> tau_V;
};

/// κ_V = uκ − wτ, τ_V = wκ + uτ. Throws NonUnitCoefficients unless u² + w² = 1 within 1e-10.
TransformedCurvatures transform_curvatures(std::span<const double> kappa,
                                           std::span<const double> tau, double u, double w);

/// κ = uκ_V + wτ_V, τ = −wκ_V + uτ_V.
TransformedCurvatures inverse_transform_curvatures(std::span<const double> kappa_V,
                                                   std::span<const double> tau_V, double u,
                                                   double w);

struct DonorResult {
  Curve donor;
  Interval domain;               // subinterval where |v| > 1e-6
  std::vector<double> crossings;  // zeros of v = −cos ∫τ inside the base domain
  std::vector<double> phase;      // ∫τ ds on the donor grid (lower limit: base s_min)
};

/// Curve whose principal-direction curve is the base: v = −cos ∫τ, w = sin ∫τ, u = 0.
/// Clips to the longest run of grid nodes with |v| > 1e-6 and reports crossings; with
/// strict = true a crossing throws VanishingV instead.
DonorResult principal_donor(const Curve& curve, bool strict = false);

struct TransferReport {
  double lambda = 0.0, mu = 0.0;
  double lambda_bar = 0.0, mu_bar = 0.0;
  double algebraic_residual = 0.0;  // sup |λ̄κ_V + μ̄τ_V − 1| with transformed curvatures
  double measured_residual = 0.0;   // same with the realized curve's measured apparatus
  int epsilon = 1;                  // sign(N_V · N) at s_min
  double normal_collinearity = 0.0;
  bool accepted = false;
};

/// Checks that γ_V for the constant field (u, 0, w) is Bertrand with λ̄ = λu − μw,
/// μ̄ = λw + μu. Throws NotBertrand when the base is not Bertrand.
TransferReport bertrand_transfer_check(const Curve& curve, double u, double w,
                                       std::optional<double> tol = std::nullopt);

}  // namespace bertrand
