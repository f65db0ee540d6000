#include "bertrand/bertrand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "bertrand/quadrature.hpp"
#include "construct.hpp"

namespace bertrand {

namespace {

double wrap_angle(double a) { return std::remainder(a, 2.0 * M_PI); }

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Relative sup defect of y = k + m x, with m forced to 0 when x is constant.
double linear_relation_defect(const std::vector<double>& y, const std::vector<double>& x, double tol) {
  const std::size_t n = y.size();
  double k = mean_of(y), m = 0.0;
  if (!is_constant(x, tol)) {
    Eigen::MatrixX2d A(n, 2);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = x[i];
      b[i] = y[i];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    k = c[0];
    m = c[1];
  }
  if (!(std::abs(k) > 0.0)) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - k - m * x[i]));
  return worst / std::abs(k);
}

}  // namespace

BertrandFit fit_bertrand(const FrenetData& data, BertrandKind kind, double tol) {
  const std::size_t n = data.size();
  const double rhs = kind == BertrandKind::bertrand ? 1.0 : -1.0;
  BertrandFit fit;
  fit.kind = kind;

  double max_tau = 0.0;
  for (double t : data.tau) max_tau = std::max(max_tau, std::abs(t));
  fit.planar_special = max_tau < tol;

  if (fit.planar_special) {
    // λκ = ±1 in the least-squares sense; planar curves do not need constant λ.
    double kk = 0.0, k1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kk += data.kappa[i] * data.kappa[i];
      k1 += data.kappa[i];
    }
    fit.lambda = rhs * k1 / kk;
    fit.mu = 0.0;
  } else {
    Eigen::MatrixX2d A(n, 2);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(n, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      A(i, 0) = data.kappa[i];
      A(i, 1) = data.tau[i];
    }
    // Minimum-norm solution; near-proportional columns (helices) count as rank one.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixX2d> cod;
    cod.setThreshold(1e-9);
    cod.compute(A);
    const Eigen::Vector2d c = cod.solve(b);
    fit.lambda = c[0];
    fit.mu = c[1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    fit.residual = std::max(fit.residual,
                            std::abs(fit.lambda * data.kappa[i] + fit.mu * data.tau[i] - rhs));
  }
  fit.theta = std::atan2(fit.lambda, fit.mu);

  if (fit.planar_special) {
    fit.structural_residual = 0.0;
    fit.accepted = true;
  } else {
    fit.structural_residual = kind == BertrandKind::bertrand
                                  ? linear_relation_defect(data.kappa, data.tau, tol)
                                  : linear_relation_defect(data.tau, data.kappa, tol);
    fit.accepted = fit.residual < tol && fit.structural_residual < tol;
  }
  return fit;
}

std::optional<BertrandFit> detect_bertrand(const FrenetData& data, BertrandKind kind, double tol) {
  BertrandFit fit = fit_bertrand(data, kind, tol);
  if (!fit.accepted) return std::nullopt;
  return fit;
}

// ---------------------------------------------------------------------------

MateReport mate_report(const FrenetData& base, const FrenetData& cand) {
  const std::size_t n = std::min(base.size(), cand.size());
  MateReport r;
  r.normal_collinearity = 1.0;
  r.epsilon = base.N[0].dot(cand.N[0]) >= 0.0 ? 1 : -1;
  std::vector<double> theta(n);
  double sx = 0.0, sy = 0.0;
  double scale = 1.0, drift = 0.0;
  const Vec3 offset0 = cand.position[0] - base.position[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double dot = cand.N[i].dot(base.N[i]);
    r.normal_collinearity = std::min(r.normal_collinearity, std::abs(dot));
    if ((dot >= 0.0 ? 1 : -1) != r.epsilon) r.epsilon_uniform = false;
    theta[i] = std::atan2(cand.T[i].dot(base.B[i]), cand.T[i].dot(base.T[i]));
    sx += std::cos(theta[i]);
    sy += std::sin(theta[i]);
    scale = std::max(scale, base.position[i].norm());
    drift = std::max(drift, (cand.position[i] - base.position[i] - offset0).norm());
  }
  if (!std::isfinite(r.normal_collinearity)) r.normal_collinearity = 0.0;
  r.theta_mean = std::atan2(sy, sx);
  double var = 0.0;
  for (double t : theta) {
    const double d = wrap_angle(t - r.theta_mean);
    var += d * d;
    r.theta_max_deviation = std::max(r.theta_max_deviation, std::abs(d));
  }
  r.theta_deviation = std::sqrt(var / static_cast<double>(n));
  if (!std::isfinite(r.theta_deviation)) r.theta_deviation = r.theta_max_deviation = INFINITY;

  if (drift < 1e-10 * scale) {
    r.reason = "DegenerateOffset";
  } else if (!(r.normal_collinearity > 1.0 - kCollinearityTol)) {
    r.reason = "NormalsNotCollinear";
  } else if (!r.epsilon_uniform) {
    r.reason = "OrientationFlip";
  } else if (!(r.theta_deviation < kThetaTol)) {
    r.reason = "AngleNotConstant";
  }
  r.accepted = r.reason.empty();
  return r;
}

MateReport verify_mate(const Curve& base, const Curve& candidate) {
  const Curve b = reparameterize_arclength(base);
  const Curve c = reparameterize_arclength(candidate).with_sample_count(b.sample_count());
  return mate_report(frenet_apparatus(b), frenet_apparatus(c));
}

namespace {

// ∫V ds + λN on the base grid, carrying the base normal for frames where the mate is straight.
Curve offset_mate(const Curve& curve, const FrenetData& data, const FrameField& field,
                  const std::vector<double>& lambda) {
  auto pts = detail::cumulative_vector(curve, [&](double s) {
    return field.vector(detail::frame_or_nan(curve, s), s);
  });
  detail::require_finite(pts, data.s);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] += lambda[i] * data.N[i];
  return detail::grid_curve(curve, std::move(pts), false).with_normal_hint([curve](double s) {
    return detail::frame_or_nan(curve, s).N;
  });
}

MateReport report_for(const FrenetData& data, const Curve& mate) {
  MateReport r;
  try {
    r = mate_report(data, frenet_apparatus(mate));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FrameUndefined) throw;
    r.reason = "FrameUndefined";
    r.accepted = false;
  }
  return r;
}

}  // namespace

MateResult v_bertrand_mate(const Curve& curve, const FrameField& field, std::optional<double> theta,
                           double lambda0, std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(curve));
  require_unit_field(curve, field);
  const FrenetData data = frenet_apparatus(curve);
  const Interval d = curve.domain();
  const auto vint = cumulative_simpson(field.v, d.lo, d.hi, curve.sample_count());
  std::vector<double> lambda(vint.size());
  double max_lambda = 0.0;
  for (std::size_t i = 0; i < vint.size(); ++i) {
    lambda[i] = lambda0 - vint[i];
    max_lambda = std::max(max_lambda, std::abs(lambda[i]));
  }
  if (max_lambda < 1e-10) {
    throw Error(ErrorCode::DegenerateOffset, "λ vanishes identically; the mate coincides with ∫V ds");
  }

  double th;
  if (theta) {
    th = *theta;
  } else {
    const Vec3 c0 = field.coefficients(d.lo);
    const double y = c0[2] + lambda[0] * data.tau[0], x = c0[0] - lambda[0] * data.kappa[0];
    if (std::hypot(x, y) < 1e-14) {
      throw Error(ErrorCode::DegenerateParameters, "mate tangent vanishes at s_min; pass θ explicitly");
    }
    th = std::atan2(y, x);
  }

  // λ(κ tanθ + τ) = u tanθ − w, multiplied through by cos θ.
  const double sn = std::sin(th), cs = std::cos(th);
  double residual = 0.0, where = data.s[0];
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vec3 c = field.coefficients(data.s[i]);
    const double r = std::abs(lambda[i] * (data.kappa[i] * sn + data.tau[i] * cs) - (c[0] * sn - c[2] * cs));
    if (r > residual) {
      residual = r;
      where = data.s[i];
    }
  }
  if (!(residual < t)) {
    throw Error(ErrorCode::ConditionViolated,
                "λ(κ tanθ + τ) = u tanθ − w fails; residual " + std::to_string(residual), {where});
  }

  MateResult out{offset_mate(curve, data, field, lambda), {}, lambda, th};
  out.report = report_for(data, out.mate);
  out.report.condition_residual = residual;
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::plus1: return "plus1";
    case Branch::minus1: return "minus1";
    case Branch::plus2: return "plus2";
    case Branch::minus2: return "minus2";
  }
  return "?";
}

std::optional<Branch> parse_branch(std::string_view text) noexcept {
  for (Branch b : kAllBranches) {
    if (text == to_string(b)) return b;
  }
  return std::nullopt;
}

double FBertrandBranches::u(Branch b) const {
  return b == Branch::plus1 || b == Branch::minus1 ? u_plus : u_minus;
}

double FBertrandBranches::w(Branch b) const {
  switch (b) {
    case Branch::plus1: return w1_plus;
    case Branch::minus1: return w1_minus;
    case Branch::plus2: return w2_plus;
    case Branch::minus2: return w2_minus;
  }
  return 0.0;
}

namespace {

bool branches_into(double f, double tn, FBertrandBranches& out) {
  const double D = 1.0 + tn * tn - f * f;
  if (D < 0.0) return false;
  const double root = std::sqrt(D), den = 1.0 + tn * tn;
  out.u_plus = (f * tn + root) / den;
  out.u_minus = (f * tn - root) / den;
  out.w1_plus = std::sqrt(std::max(0.0, 1.0 - out.u_plus * out.u_plus));
  out.w1_minus = -out.w1_plus;
  out.w2_plus = std::sqrt(std::max(0.0, 1.0 - out.u_minus * out.u_minus));
  out.w2_minus = -out.w2_plus;
  for (int k = 0; k < 4; ++k) {
    const Branch b = kAllBranches[k];
    const double u = out.u(b);
    out.valid[k] = std::abs(u) <= 1.0 && std::abs(u * tn - out.w(b) - f) < 1e-8;
  }
  return true;
}

}  // namespace

FBertrandBranches f_bertrand_coefficients(double f, double theta) {
  if (std::abs(std::cos(theta)) < 1e-12 || !std::isfinite(f)) {
    throw Error(ErrorCode::DegenerateParameters, "tan θ must be finite");
  }
  FBertrandBranches out;
  if (!branches_into(f, std::tan(theta), out)) {
    throw Error(ErrorCode::NoRealBranch, "1 + tan²θ − f² is negative");
  }
  return out;
}

std::vector<FMate> f_bertrand_mates(const Curve& curve, const std::function<double(double)>& f,
                                    double theta, std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(curve));
  if (std::abs(std::cos(theta)) < 1e-12) {
    throw Error(ErrorCode::DegenerateParameters, "tan θ must be finite");
  }
  const double tn = std::tan(theta);
  const FrenetData data = frenet_apparatus(curve);
  const Interval d = curve.domain();

  // Real branches at every point the integrator will evaluate.
  const int m = 2 * curve.sample_count() - 1;
  std::vector<double> bad;
  for (int k = 0; k < m; ++k) {
    const double s = d.at_fraction(static_cast<double>(k) / (m - 1));
    const double fs = f(s);
    if (1.0 + tn * tn - fs * fs < 0.0) bad.push_back(s);
  }
  if (!bad.empty()) throw Error(ErrorCode::NoRealBranch, "1 + tan²θ − f² is negative", bad);

  std::vector<double> lambda(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double den = data.kappa[i] * tn + data.tau[i];
    if (std::abs(den) < 1e-12) {
      throw Error(ErrorCode::ConditionViolated, "κ tanθ + τ vanishes", {data.s[i]});
    }
    lambda[i] = f(data.s[i]) / den;
  }
  if (!is_constant(lambda, t)) {
    throw Error(ErrorCode::ConditionViolated, "λ = f / (κ tanθ + τ) is not constant");
  }
  const double lam = mean_of(lambda);
  if (std::abs(lam) < 1e-10) throw Error(ErrorCode::DegenerateOffset, "λ vanishes");
  std::fill(lambda.begin(), lambda.end(), lam);

  std::vector<FMate> out;
  for (Branch b : kAllBranches) {
    auto coeff = [f, tn, b](double s) {
      FBertrandBranches br;
      branches_into(f(s), tn, br);
      return br;
    };
    FrameField field{[coeff, b](double s) { return coeff(s).u(b); }, [](double) { return 0.0; },
                     [coeff, b](double s) { return coeff(s).w(b); }};
    bool satisfies = true;
    for (double s : data.s) satisfies = satisfies && coeff(s).is_valid(b);
    Curve mate = offset_mate(curve, data, field, lambda);
    MateReport report = report_for(data, mate);
    if (!report.accepted) continue;
    const FBertrandBranches b0 = coeff(d.lo);
    out.push_back({b, std::move(mate), std::move(report), b0.u(b), b0.w(b), satisfies});
  }
  return out;
}

std::vector<FMate> f_bertrand_mates(const Curve& curve, double f, double theta,
                                    std::optional<double> tol) {
  return f_bertrand_mates(curve, [f](double) { return f; }, theta, tol);
}

}  // namespace bertrand
