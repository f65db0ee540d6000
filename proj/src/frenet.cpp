#include "bertrand/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "bertrand/quadrature.hpp"
#include "frenet_point.hpp"

namespace bertrand {

namespace detail {

namespace {

// B built from the curve tangent and the hint normal.
Vec3 hinted_binormal(const Curve& curve, const NormalHint& hint, double s, Vec3* normal = nullptr) {
  const Vec3 T = curve.jet(s).d1.normalized();
  Vec3 N = hint(s);
  N -= N.dot(T) * T;
  N.normalize();
  if (normal) *normal = N;
  return T.cross(N);
}

}  // namespace

bool try_frenet_at(const Curve& curve, double s, FramePoint& out) {
  const Jet j = curve.jet(s);
  const Vec3 cr = j.d1.cross(j.d2);
  const double sp = j.d1.norm();
  const double cn = cr.norm();
  out.position = j.p;
  out.speed = sp;
  out.kappa = cn / (sp * sp * sp);
  out.T = j.d1 / sp;
  if (out.kappa >= kKappaMin && std::isfinite(out.kappa)) {
    out.B = cr / cn;
    out.N = out.B.cross(out.T);
    out.tau = cr.dot(j.d3) / (cn * cn);
    return true;
  }
  const NormalHint* hint = curve.normal_hint();
  if (!hint || !(sp > 0.0)) return false;
  // Torsion from the hint-derived binormal, B′ = −τ |γ′| N.
  out.B = hinted_binormal(curve, *hint, s, &out.N);
  const Interval d = curve.domain();
  const double h = 1e-5 * std::max(1.0, d.length() / 10.0);
  Vec3 dB;
  if (s - h >= d.lo && s + h <= d.hi) {
    dB = (hinted_binormal(curve, *hint, s + h) - hinted_binormal(curve, *hint, s - h)) / (2.0 * h);
  } else if (s + 2.0 * h <= d.hi) {
    dB = (-3.0 * out.B + 4.0 * hinted_binormal(curve, *hint, s + h) -
          hinted_binormal(curve, *hint, s + 2.0 * h)) / (2.0 * h);
  } else {
    dB = (3.0 * out.B - 4.0 * hinted_binormal(curve, *hint, s - h) +
          hinted_binormal(curve, *hint, s - 2.0 * h)) / (2.0 * h);
  }
  out.tau = -dB.dot(out.N) / sp;
  return true;
}

FrenetData allocate(std::size_t n) {
  FrenetData d;
  d.s.resize(n);
  d.position.resize(n);
  d.T.resize(n);
  d.N.resize(n);
  d.B.resize(n);
  d.kappa.resize(n);
  d.tau.resize(n);
  d.speed.resize(n);
  return d;
}

void store(FrenetData& d, std::size_t i, double s, const FramePoint& f) {
  d.s[i] = s;
  d.position[i] = f.position;
  d.T[i] = f.T;
  d.N[i] = f.N;
  d.B[i] = f.B;
  d.kappa[i] = f.kappa;
  d.tau[i] = f.tau;
  d.speed[i] = f.speed;
}

[[noreturn]] void throw_frame_undefined(std::vector<double> where) {
  std::sort(where.begin(), where.end());
  throw Error(ErrorCode::FrameUndefined,
              "curvature below 1e-8 at " + std::to_string(where.size()) + " grid point(s)",
              std::move(where));
}

}  // namespace detail

FramePoint frenet_at(const Curve& curve, double s) {
  FramePoint f;
  if (!detail::try_frenet_at(curve, s, f)) {
    throw Error(ErrorCode::FrameUndefined, "curvature below 1e-8", {s});
  }
  return f;
}

FrenetData frenet_apparatus(const Curve& curve) {
  const auto grid = curve.grid();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  FrenetData data = detail::allocate(grid.size());
  std::vector<char> ok(grid.size(), 1);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    FramePoint f;
    ok[i] = detail::try_frenet_at(curve, grid[i], f) ? 1 : 0;
    detail::store(data, i, grid[i], f);
  }
  std::vector<double> bad;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!ok[i]) bad.push_back(grid[i]);
  }
  if (!bad.empty()) detail::throw_frame_undefined(std::move(bad));
  return data;
}

std::array<double, 3> frenet_residuals(const FrenetData& d) {
  const std::size_t n = d.size();
  std::array<double, 3> worst{0.0, 0.0, 0.0};
  if (n < 5) return worst;
  const double h = d.spacing();
  std::vector<double> comp(n);
  auto deriv = [&](const std::vector<Vec3>& v, std::size_t i) {
    Vec3 out;
    for (int k = 0; k < 3; ++k) {
      for (std::size_t j = 0; j < n; ++j) comp[j] = v[j][k];
      out[k] = grid_derivative(comp, h, i);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 dT = deriv(d.T, i), dN = deriv(d.N, i), dB = deriv(d.B, i);
    worst[0] = std::max(worst[0], (dT - d.kappa[i] * d.N[i]).norm());
    worst[1] = std::max(worst[1], (dN + d.kappa[i] * d.T[i] - d.tau[i] * d.B[i]).norm());
    worst[2] = std::max(worst[2], (dB + d.tau[i] * d.N[i]).norm());
  }
  return worst;
}

double frame_defect(const FrenetData& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Vec3 &T = d.T[i], &N = d.N[i], &B = d.B[i];
    worst = std::max({worst, std::abs(T.dot(N)), std::abs(T.dot(B)), std::abs(N.dot(B)),
                      std::abs(T.norm() - 1.0), std::abs(N.norm() - 1.0), std::abs(B.norm() - 1.0),
                      std::abs(T.cross(N).dot(B) - 1.0)});
  }
  return worst;
}

bool is_constant(const std::vector<double>& v, double tol) {
  if (v.empty()) return true;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += std::abs(x);
  mean /= static_cast<double>(v.size());
  return (*hi - *lo) / std::max(1.0, mean) < tol;
}

CurveClass classify(const FrenetData& d, double tol) {
  CurveClass c;
  c.constancy_tolerance = tol;
  double max_tau = 0.0;
  for (double t : d.tau) max_tau = std::max(max_tau, std::abs(t));
  c.is_planar = max_tau < tol;
  std::vector<double> ratio(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) ratio[i] = d.tau[i] / d.kappa[i];
  c.is_general_helix = c.is_planar || is_constant(ratio, tol);
  const bool k_const = is_constant(d.kappa, tol);
  const bool t_const = is_constant(d.tau, tol);
  c.is_salkowski = k_const && !t_const;
  c.is_anti_salkowski = t_const && !k_const;
  return c;
}

double default_tolerance(const Curve& curve) {
  return curve.kind() == Curve::Kind::sampled ? 1e-3 : 1e-6;
}

// ---------------------------------------------------------------------------
// Prescribed-curvature integration

namespace {

using State = Eigen::Matrix<double, 12, 1>;

struct FrenetOdeRep final : CurveRep {
  std::function<double(double)> kappa, tau;
  double length = 0.0, step = 0.0;
  std::vector<State> nodes;

  Interval domain() const override { return {0.0, length}; }

  State rhs(double s, const State& y) const {
    const double k = kappa(s), t = tau(s);
    State f;
    f.segment<3>(0) = y.segment<3>(3);
    f.segment<3>(3) = k * y.segment<3>(6);
    f.segment<3>(6) = -k * y.segment<3>(3) + t * y.segment<3>(9);
    f.segment<3>(9) = -t * y.segment<3>(6);
    return f;
  }

  static void orthonormalize(State& y) {
    Vec3 T = y.segment<3>(3).normalized();
    Vec3 N = y.segment<3>(6);
    N = (N - N.dot(T) * T).normalized();
    y.segment<3>(3) = T;
    y.segment<3>(6) = N;
    y.segment<3>(9) = T.cross(N);
  }

  State advance(double s, const State& y, double h) const {
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1);
    const State k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2);
    const State k4 = rhs(s + h, y + h * k3);
    State out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    orthonormalize(out);
    return out;
  }

  State state_at(double s) const {
    const auto last = static_cast<std::ptrdiff_t>(nodes.size()) - 1;
    const auto i = std::clamp<std::ptrdiff_t>(std::lround(s / step), 0, last);
    const double si = static_cast<double>(i) * step;
    if (s == si) return nodes[i];
    return advance(si, nodes[i], s - si);
  }

  Jet jet(double s) const override {
    const State y = state_at(s);
    const Vec3 T = y.segment<3>(3), N = y.segment<3>(6), B = y.segment<3>(9);
    const double k = kappa(s), t = tau(s);
    constexpr double h = 1e-3;
    const double dk = (kappa(s - 2 * h) - 8 * kappa(s - h) + 8 * kappa(s + h) - kappa(s + 2 * h)) / (12 * h);
    Jet j;
    j.p = y.segment<3>(0);
    j.d1 = T;
    j.d2 = k * N;
    j.d3 = dk * N + k * (-k * T + t * B);
    return j;
  }
};

}  // namespace

Curve integrate_frenet_ode(const std::function<double(double)>& kappa,
                           const std::function<double(double)>& tau, const Frame& initial,
                           double length, int sample_count) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::InvalidSpec, "integration length must be positive");
  }
  constexpr int kSteps = 4096;
  auto rep = std::make_shared<FrenetOdeRep>();
  rep->kappa = kappa;
  rep->tau = tau;
  rep->length = length;
  rep->step = length / kSteps;

  std::vector<double> bad;
  for (int i = 0; i <= 2 * kSteps; ++i) {
    const double s = 0.5 * rep->step * i;
    if (!(kappa(s) > 0.0)) bad.push_back(s);
  }
  if (!bad.empty()) throw Error(ErrorCode::NonPositiveKappa, "prescribed curvature must be positive", bad);

  State y;
  y.segment<3>(0).setZero();
  y.segment<3>(3) = initial.T;
  y.segment<3>(6) = initial.N;
  y.segment<3>(9) = initial.B;
  FrenetOdeRep::orthonormalize(y);
  rep->nodes.reserve(kSteps + 1);
  rep->nodes.push_back(y);
  for (int i = 0; i < kSteps; ++i) {
    y = rep->advance(i * rep->step, y, rep->step);
    rep->nodes.push_back(y);
  }
  return Curve(rep, Curve::Kind::constructed, true, sample_count);
}

}  // namespace bertrand
