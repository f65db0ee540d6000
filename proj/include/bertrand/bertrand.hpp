#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bertrand/curve.hpp"
#include "bertrand/direction_curves.hpp"
#include "bertrand/frenet.hpp"

namespace bertrand {

enum class BertrandKind { bertrand, b_bertrand };

struct BertrandFit {
  double lambda = 0.0;
  double mu = 0.0;
  double theta = 0.0;  // atan2(λ, μ): μ = λ cot θ
  BertrandKind kind = BertrandKind::bertrand;
  double residual = 0.0;             // sup |λκ + μτ ∓ 1|
  double structural_residual = 0.0;  // relative defect of the linear κ–τ relation
  bool planar_special = false;
  bool accepted = false;
};

/// Fits constants λ, μ with λκ + μτ = +1 (bertrand) or −1 (b_bertrand) by minimum-norm
/// least squares. A bertrand curve must also satisfy κ + cτ = k with κ the leading term,
/// a b_bertrand curve τ + cκ = k with τ leading; the relative sup defect of that relation
/// is the structural residual. Accepted when both residuals are below tol. Planar curves
/// are accepted for both kinds.
BertrandFit fit_bertrand(const FrenetData& data, BertrandKind kind, double tol);

/// fit_bertrand, empty when rejected.
std::optional<BertrandFit> detect_bertrand(const FrenetData& data, BertrandKind kind, double tol);

struct MateReport {
  double normal_collinearity = 0.0;  // min |N̄·N|
  int epsilon = 1;                   // sign(N̄·N) at s_min
  bool epsilon_uniform = true;
  double theta_mean = 0.0;           // angle from T to T̄ in the (T, B) plane
  double theta_deviation = 0.0;      // standard deviation
  double theta_max_deviation = 0.0;
  double condition_residual = std::numeric_limits<double>::quiet_NaN();
  bool accepted = false;
  std::string reason;
};

inline constexpr double kCollinearityTol = 1e-6;
inline constexpr double kThetaTol = 1e-5;

/// Report for apparatus sampled at corresponding points (same index = same point pair).
MateReport mate_report(const FrenetData& base, const FrenetData& candidate);

/// Pairs the base grid with the arc-length reparameterized candidate at matched fractions
/// of the two domains. A candidate that is a translate of the base is rejected with reason
/// "DegenerateOffset".
MateReport verify_mate(const Curve& base, const Curve& candidate);

struct MateResult {
  Curve mate;  // shares the base parameter; not unit-speed in general
  MateReport report;
  std::vector<double> lambda;  // λ(s) on the base grid
  double theta = 0.0;
};

/// β = ∫V ds + λN with λ(s) = λ0 − ∫v ds. θ defaults to the angle implied at s_min.
/// Throws ConditionViolated when λ(κ tanθ + τ) = u tanθ − w fails beyond tol,
/// DegenerateOffset when λ ≡ 0, NonUnitField, FrameUndefined.
MateResult v_bertrand_mate(const Curve& curve, const FrameField& field,
                           std::optional<double> theta = std::nullopt, double lambda0 = 0.0,
                           std::optional<double> tol = std::nullopt);

enum class Branch { plus1, minus1, plus2, minus2 };

std::string_view to_string(Branch b) noexcept;
std::optional<Branch> parse_branch(std::string_view text) noexcept;
inline constexpr std::array<Branch, 4> kAllBranches{Branch::plus1, Branch::minus1, Branch::plus2,
                                                    Branch::minus2};

struct FBertrandBranches {
  double u_plus = 0.0, u_minus = 0.0;
  double w1_plus = 0.0, w1_minus = 0.0;  // ±√(1 − u₊²)
  double w2_plus = 0.0, w2_minus = 0.0;  // ±√(1 − u₋²)
  std::array<bool, 4> valid{};           // indexed like kAllBranches

  double u(Branch b) const;
  double w(Branch b) const;
  bool is_valid(Branch b) const { return valid[static_cast<int>(b)]; }
};

/// u± = (f tanθ ± √(1 + tan²θ − f²)) / (1 + tan²θ). A branch is valid when it solves
/// u tanθ − w = f. Throws NoRealBranch, DegenerateParameters (cos θ = 0).
FBertrandBranches f_bertrand_coefficients(double f, double theta);

struct FMate {
  Branch branch;
  Curve mate;
  MateReport report;
  double u = 0.0, w = 0.0;  // at s_min
  bool satisfies_f = false;
};

/// Mates ∫(uT + wB) ds + λN with λ = f / (κ tanθ + τ), which must be constant. Every
/// branch whose curve passes mate verification is returned. Throws NoRealBranch,
/// ConditionViolated.
std::vector<FMate> f_bertrand_mates(const Curve& curve, const std::function<double(double)>& f,
                                    double theta, std::optional<double> tol = std::nullopt);
std::vector<FMate> f_bertrand_mates(const Curve& curve, double f, double theta,
                                    std::optional<double> tol = std::nullopt);

}  // namespace bertrand
