#include "bertrand/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "bertrand/quadrature.hpp"
#include "curve_reps.hpp"

namespace bertrand {

const Vec3& Jet::derivative(int order) const {
  switch (order) {
    case 0: return p;
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    default: throw Error(ErrorCode::InvalidSpec, "derivative order must be in 0..3");
  }
}

namespace detail {

HelixRep::HelixRep(double a, double b, double z0, Interval domain)
    : a_(a), b_(b), z0_(z0), c_(std::hypot(a, b)), domain_(domain) {}

Jet HelixRep::jet(double s) const {
  const double th = s / c_;
  const double co = std::cos(th), si = std::sin(th);
  const double k1 = a_ / c_, k2 = a_ / (c_ * c_), k3 = a_ / (c_ * c_ * c_);
  Jet j;
  j.p = {a_ * co, a_ * si, z0_ + b_ * th};
  j.d1 = {-k1 * si, k1 * co, b_ / c_};
  j.d2 = {-k2 * co, -k2 * si, 0.0};
  j.d3 = {k3 * si, -k3 * co, 0.0};
  return j;
}

LineRep::LineRep(const Vec3& direction, Interval domain)
    : dir_(direction.normalized()), domain_(domain) {}

Jet LineRep::jet(double s) const {
  Jet j;
  j.p = s * dir_;
  j.d1 = dir_;
  return j;
}

Jet ParametricRep::jet(double t) const {
  const auto x = fn_(Taylor3::variable(t));
  Jet j;
  for (int k = 0; k < 3; ++k) {
    j.p[k] = x[k].derivative(0);
    j.d1[k] = x[k].derivative(1);
    j.d2[k] = x[k].derivative(2);
    j.d3[k] = x[k].derivative(3);
  }
  return j;
}

GridPolyRep::GridPolyRep(std::vector<double> nodes, const std::vector<Vec3>& points, int degree)
    : nodes_(std::move(nodes)), degree_(degree), uniform_(false) {
  const int n = static_cast<int>(nodes_.size());
  if (n < degree_ + 1 || static_cast<int>(points.size()) != n) {
    throw Error(ErrorCode::DegenerateSamples, "not enough nodes for the interpolation degree");
  }
  const double h0 = (nodes_.back() - nodes_.front()) / (n - 1);
  uniform_ = true;
  for (int i = 1; i < n; ++i) {
    if (std::abs(nodes_[i] - nodes_[i - 1] - h0) > 1e-12 * std::abs(h0)) {
      uniform_ = false;
      break;
    }
  }
  const int m = degree_ + 1;
  coeffs_.resize(n - 1);
  Eigen::MatrixXd vander(m, m);
  Eigen::MatrixX3d rhs(m, 3);
  for (int i = 0; i + 1 < n; ++i) {
    const int j0 = std::clamp(i - (degree_ - 1) / 2, 0, n - m);
    const double scale = nodes_[i + 1] - nodes_[i];
    for (int k = 0; k < m; ++k) {
      const double x = (nodes_[j0 + k] - nodes_[i]) / scale;
      double xp = 1.0;
      for (int c = 0; c < m; ++c, xp *= x) vander(k, c) = xp;
      rhs.row(k) = points[j0 + k].transpose();
    }
    coeffs_[i] = vander.fullPivLu().solve(rhs);
  }
}

std::size_t GridPolyRep::cell_of(double t) const {
  const std::size_t cells = nodes_.size() - 1;
  if (uniform_) {
    const double f = (t - nodes_.front()) / (nodes_.back() - nodes_.front());
    const auto i = static_cast<std::ptrdiff_t>(std::floor(f * static_cast<double>(cells)));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, cells - 1));
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const auto i = std::distance(nodes_.begin(), it) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, cells - 1));
}

Jet GridPolyRep::jet(double t) const {
  const std::size_t i = cell_of(t);
  const double scale = nodes_[i + 1] - nodes_[i];
  const double x = (t - nodes_[i]) / scale;
  const auto& c = coeffs_[i];
  // Horner for the value and first three derivatives in x.
  Eigen::RowVector3d v0 = Eigen::RowVector3d::Zero(), v1 = v0, v2 = v0, v3 = v0;
  for (int k = degree_; k >= 0; --k) {
    v3 = v3 * x + v2;
    v2 = v2 * x + v1;
    v1 = v1 * x + v0;
    v0 = v0 * x + c.row(k);
  }
  // v2, v3 above hold f''/2 and f'''/6.
  Jet j;
  j.p = v0.transpose();
  j.d1 = v1.transpose() / scale;
  j.d2 = 2.0 * v2.transpose() / (scale * scale);
  j.d3 = 6.0 * v3.transpose() / (scale * scale * scale);
  return j;
}

namespace {
double speed_at(const CurveRep& rep, double t) { return rep.jet(t).d1.norm(); }
}  // namespace

ArcLengthRep::ArcLengthRep(std::shared_ptr<const CurveRep> inner, std::vector<double> breakpoints)
    : inner_(std::move(inner)) {
  const Interval d = inner_->domain();
  constexpr int kMinCells = 512;
  if (breakpoints.size() < 2) breakpoints = {d.lo, d.hi};
  const int pieces = static_cast<int>(breakpoints.size()) - 1;
  const int refine = std::max(1, (kMinCells + pieces - 1) / pieces);
  nodes_.reserve(pieces * refine + 1);
  for (int p = 0; p < pieces; ++p) {
    for (int r = 0; r < refine; ++r) {
      nodes_.push_back(breakpoints[p] + (breakpoints[p + 1] - breakpoints[p]) * r / refine);
    }
  }
  nodes_.push_back(breakpoints.back());
  cumulative_.assign(nodes_.size(), 0.0);
  const auto speed = [this](double t) { return speed_at(*inner_, t); };
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const double piece =
        boost::math::quadrature::gauss<double, 15>::integrate(speed, nodes_[i - 1], nodes_[i]);
    cumulative_[i] = cumulative_[i - 1] + piece;
  }
}

double ArcLengthRep::partial_length(double t0, double t1) const {
  if (t0 == t1) return 0.0;
  const auto speed = [this](double t) { return speed_at(*inner_, t); };
  return boost::math::quadrature::gauss<double, 10>::integrate(speed, t0, t1);
}

double ArcLengthRep::parameter_at(double s) const {
  const double total = cumulative_.back();
  s = std::clamp(s, 0.0, total);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, nodes_.size() - 2);
  const double target = s - cumulative_[i];
  double lo = nodes_[i], hi = nodes_[i + 1];
  const double cell = cumulative_[i + 1] - cumulative_[i];
  double t = cell > 0.0 ? lo + (hi - lo) * target / cell : lo;
  for (int iter = 0; iter < 60; ++iter) {
    const double g = partial_length(nodes_[i], t) - target;
    if (std::abs(g) <= 1e-15 * std::max(1.0, total)) break;
    if (g > 0.0) hi = t; else lo = t;
    const double step = g / speed_at(*inner_, t);
    double next = t - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

Jet ArcLengthRep::jet(double s) const {
  const double t = parameter_at(s);
  const Jet x = inner_->jet(t);
  const double sig = x.d1.norm();
  const double sig_t = x.d1.dot(x.d2) / sig;
  const double sig_tt = (x.d2.squaredNorm() + x.d1.dot(x.d3) - sig_t * sig_t) / sig;
  const double s2 = sig * sig, s3 = s2 * sig, s4 = s3 * sig, s5 = s4 * sig;
  Jet j;
  j.p = x.p;
  j.d1 = x.d1 / sig;
  j.d2 = x.d2 / s2 - x.d1 * (sig_t / s3);
  j.d3 = x.d3 / s3 - x.d2 * (3.0 * sig_t / s4) - x.d1 * (sig_tt / s4) +
         x.d1 * (3.0 * sig_t * sig_t / s5);
  return j;
}

Jet TransformedRep::jet(double t) const {
  Jet j = inner_->jet(t);
  j.p = rotation_ * j.p + shift_;
  j.d1 = rotation_ * j.d1;
  j.d2 = rotation_ * j.d2;
  j.d3 = rotation_ * j.d3;
  return j;
}

std::vector<double> breakpoints_of(const CurveRep& rep) {
  if (const auto* g = dynamic_cast<const GridPolyRep*>(&rep)) return g->nodes();
  return {};
}

}  // namespace detail

// ---------------------------------------------------------------------------

Curve::Curve(std::shared_ptr<const CurveRep> rep, Kind kind, bool unit_speed, int sample_count)
    : rep_(std::move(rep)), kind_(kind), unit_speed_(unit_speed), sample_count_(sample_count) {
  if (sample_count_ < 2) throw Error(ErrorCode::InvalidSpec, "sample count must be at least 2");
  const Interval d = rep_->domain();
  if (!(d.hi > d.lo)) throw Error(ErrorCode::InvalidSpec, "curve domain is empty");
}

Curve Curve::parametric(ParametricFn fn, Interval t_domain, int sample_count) {
  return Curve(std::make_shared<detail::ParametricRep>(std::move(fn), t_domain), Kind::analytic,
               false, sample_count);
}

Curve Curve::from_grid(Interval domain, std::vector<Vec3> points, bool unit_speed,
                       int sample_count, int order) {
  const auto n = points.size();
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = domain.at_fraction(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  nodes.back() = domain.hi;
  return Curve(std::make_shared<detail::GridPolyRep>(std::move(nodes), points, order),
               Kind::constructed, unit_speed, sample_count);
}

Jet Curve::jet(double s) const {
  const Interval d = rep_->domain();
  const double eps = 1e-9 * std::max(1.0, d.length());
  if (!(s >= d.lo - eps && s <= d.hi + eps)) {
    std::ostringstream msg;
    msg << "parameter " << s << " outside [" << d.lo << ", " << d.hi << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str(), {s});
  }
  return rep_->jet(std::clamp(s, d.lo, d.hi));
}

Vec3 Curve::derivative(double s, int order) const {
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidSpec, "derivative order must be 1..3");
  return jet(s).derivative(order);
}

std::vector<double> Curve::grid() const {
  const Interval d = domain();
  std::vector<double> g(sample_count_);
  for (int i = 0; i < sample_count_; ++i) {
    g[i] = d.at_fraction(static_cast<double>(i) / (sample_count_ - 1));
  }
  g.back() = d.hi;
  return g;
}

std::vector<Vec3> Curve::positions() const {
  const auto g = grid();
  std::vector<Vec3> out(g.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = rep_->jet(g[i]).p;
  return out;
}

double Curve::length() const {
  const Interval d = domain();
  if (unit_speed_) return d.length();
  constexpr int kChunks = 64;
  double total = 0.0;
  for (int k = 0; k < kChunks; ++k) {
    total += adaptive_integral([this](double t) { return rep_->jet(t).d1.norm(); },
                               d.at_fraction(double(k) / kChunks), d.at_fraction(double(k + 1) / kChunks));
  }
  return total;
}

Curve Curve::with_sample_count(int n) const {
  Curve c = *this;
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "sample count must be at least 2");
  c.sample_count_ = n;
  return c;
}

Curve Curve::with_domain(Interval sub) const {
  const Interval d = domain();
  const double eps = 1e-12 * std::max(1.0, d.length());
  if (sub.lo < d.lo - eps || sub.hi > d.hi + eps || !(sub.hi > sub.lo)) {
    throw Error(ErrorCode::OutOfDomain, "sub-interval is not inside the curve domain", {sub.lo, sub.hi});
  }
  Curve c = *this;
  c.rep_ = std::make_shared<detail::RestrictedRep>(rep_, sub);
  return c;
}

Curve Curve::transformed(const Mat3& rotation, const Vec3& translation) const {
  Curve c = *this;
  c.rep_ = std::make_shared<detail::TransformedRep>(rep_, rotation, translation);
  if (hint_) {
    const auto inner = hint_;
    c.hint_ = std::make_shared<const NormalHint>(
        [inner, rotation](double s) -> Vec3 { return rotation * (*inner)(s); });
  }
  return c;
}

Curve Curve::with_normal_hint(NormalHint hint) const {
  Curve c = *this;
  c.hint_ = std::make_shared<const NormalHint>(std::move(hint));
  return c;
}

// ---------------------------------------------------------------------------

namespace {

Interval default_domain(const CurveSpec& spec) {
  const Interval d = spec.domain.value_or(Interval{0.0, 10.0});
  if (!(d.hi > d.lo) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
    throw Error(ErrorCode::InvalidSpec, "domain must satisfy s_max > s_min");
  }
  return d;
}

Curve build_sampled(const SampledSpec& spec, int sample_count) {
  const auto& pts = spec.points;
  if (pts.size() < 8) throw Error(ErrorCode::InvalidSpec, "sampled curves need at least 8 points");
  if (spec.order < 4 || spec.order > 9 || static_cast<std::size_t>(spec.order) >= pts.size()) {
    throw Error(ErrorCode::InvalidSpec, "interpolation order must be in 4..9 and below the point count");
  }
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  std::vector<double> chord(pts.size(), 0.0);
  std::vector<double> bad;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double step = (pts[i] - pts[i - 1]).norm();
    if (!(step > 1e-12 * std::max(1.0, scale))) bad.push_back(static_cast<double>(i));
    chord[i] = chord[i - 1] + step;
  }
  if (!bad.empty()) throw Error(ErrorCode::DegenerateSamples, "coincident consecutive sample points", bad);
  auto poly = std::make_shared<detail::GridPolyRep>(chord, pts, spec.order);
  for (std::size_t i = 0; i < chord.size(); ++i) {
    if (!(poly->jet(chord[i]).d1.norm() > 1e-10)) bad.push_back(static_cast<double>(i));
  }
  if (!bad.empty()) throw Error(ErrorCode::DegenerateSamples, "interpolant is not regular", bad);
  auto arc = std::make_shared<detail::ArcLengthRep>(poly, chord);
  return Curve(arc, Curve::Kind::sampled, true, sample_count);
}

std::array<Taylor3, 3> sphere_wave_point(const Taylor3& t, double amplitude, double frequency) {
  const Taylor3 psi = amplitude * sin(frequency * t);
  const Taylor3 cp = cos(psi);
  return {cos(t) * cp, sin(t) * cp, sin(psi)};
}

}  // namespace

Curve build_curve(const CurveSpec& spec) {
  if (spec.sample_count < kMinSampleCount) {
    throw Error(ErrorCode::InvalidSpec, "sample_count must be at least 64");
  }
  const int n = spec.sample_count;
  return std::visit(
      [&](const auto& fam) -> Curve {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, HelixSpec>) {
          if (!(fam.a > 0.0) || !std::isfinite(fam.b)) throw Error(ErrorCode::InvalidSpec, "helix requires a > 0");
          return Curve(std::make_shared<detail::HelixRep>(fam.a, fam.b, 0.0, default_domain(spec)),
                       Curve::Kind::analytic, true, n);
        } else if constexpr (std::is_same_v<T, CircleSpec>) {
          if (!(fam.r > 0.0)) throw Error(ErrorCode::InvalidSpec, "circle requires r > 0");
          return Curve(std::make_shared<detail::HelixRep>(fam.r, 0.0, 0.0, default_domain(spec)),
                       Curve::Kind::analytic, true, n);
        } else if constexpr (std::is_same_v<T, LineSpec>) {
          if (!(fam.direction.norm() > 0.0)) throw Error(ErrorCode::InvalidSpec, "line direction must be nonzero");
          return Curve(std::make_shared<detail::LineRep>(fam.direction, default_domain(spec)),
                       Curve::Kind::analytic, true, n);
        } else if constexpr (std::is_same_v<T, SphereCircleSpec>) {
          if (!(fam.rho > 0.0 && fam.rho <= 1.0)) throw Error(ErrorCode::InvalidSpec, "sphere circle requires 0 < rho <= 1");
          const double z = std::sqrt(std::max(0.0, 1.0 - fam.rho * fam.rho));
          return Curve(std::make_shared<detail::HelixRep>(fam.rho, 0.0, z, default_domain(spec)),
                       Curve::Kind::analytic, true, n);
        } else if constexpr (std::is_same_v<T, SphereWaveSpec>) {
          if (!std::isfinite(fam.amplitude) || !std::isfinite(fam.frequency) ||
              std::abs(fam.amplitude) >= 1.5) {
            throw Error(ErrorCode::InvalidSpec, "sphere wave amplitude must be below 1.5 rad");
          }
          // Domain is the longitude range; the result is reparameterized by arc length.
          const Interval t = spec.domain.value_or(Interval{0.0, 2.0 * M_PI});
          const double amp = fam.amplitude, freq = fam.frequency;
          const Curve raw = Curve::parametric(
              [amp, freq](const Taylor3& x) { return sphere_wave_point(x, amp, freq); }, t, n);
          return reparameterize_arclength(raw);
        } else {
          return build_sampled(fam, n);
        }
      },
      spec.family);
}

double max_speed_deviation(const Curve& curve) {
  const auto g = curve.grid();
  double worst = 0.0;
  for (double s : g) worst = std::max(worst, std::abs(curve.jet(s).d1.norm() - 1.0));
  return worst;
}

Curve reparameterize_arclength(const Curve& curve) {
  if (curve.unit_speed() && max_speed_deviation(curve) < 1e-6) return curve;
  const auto g = curve.grid();
  std::vector<double> bad;
  for (double t : g) {
    if (!(curve.jet(t).d1.norm() > 1e-10)) bad.push_back(t);
  }
  if (!bad.empty()) throw Error(ErrorCode::NotRegular, "speed vanishes on the sample grid", bad);
  auto arc = std::make_shared<detail::ArcLengthRep>(curve.rep(), detail::breakpoints_of(*curve.rep()));
  Curve out(arc, curve.kind(), true, curve.sample_count());
  if (const NormalHint* hint = curve.normal_hint()) {
    out = out.with_normal_hint([arc, h = *hint](double s) { return h(arc->parameter_at(s)); });
  }
  return out;
}

Vec3 derivative(const Curve& curve, double s, int order) { return curve.derivative(s, order); }

}  // namespace bertrand
