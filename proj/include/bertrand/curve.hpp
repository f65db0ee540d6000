#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "bertrand/error.hpp"
#include "bertrand/taylor.hpp"

namespace bertrand {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kDefaultSampleCount = 1024;
inline constexpr int kMinSampleCount = 64;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  double at_fraction(double f) const { return lo + f * (hi - lo); }
};

/// Position and the first three derivatives with respect to the curve parameter.
struct Jet {
  Vec3 p = Vec3::Zero();
  Vec3 d1 = Vec3::Zero();
  Vec3 d2 = Vec3::Zero();
  Vec3 d3 = Vec3::Zero();

  const Vec3& derivative(int order) const;
};

/// Parameterized space curve backend. Implementations are immutable after construction.
class CurveRep {
 public:
  virtual ~CurveRep() = default;
  virtual Interval domain() const = 0;
  virtual Jet jet(double t) const = 0;
};

// ---------------------------------------------------------------------------
// Curve families

struct HelixSpec {
  double a = 1.0;  // radius
  double b = 1.0;  // pitch / 2π
};
struct CircleSpec {
  double r = 1.0;
};
struct LineSpec {
  Vec3 direction{0.0, 0.0, 1.0};
};
/// Small circle of radius rho on the unit sphere, at height sqrt(1 - rho²).
struct SphereCircleSpec {
  double rho = 1.0;
};
/// Latitude wave on the unit sphere: (cos t cos ψ, sin t cos ψ, sin ψ), ψ = amplitude·sin(frequency·t).
struct SphereWaveSpec {
  double amplitude = 0.3;
  double frequency = 2.0;
};
struct SampledSpec {
  std::vector<Vec3> points;
  int order = 5;  // local polynomial degree
};

using CurveFamily =
    std::variant<HelixSpec, CircleSpec, LineSpec, SphereCircleSpec, SphereWaveSpec, SampledSpec>;

struct CurveSpec {
  CurveFamily family = HelixSpec{};
  /// Arc-length domain; defaults to [0, 10] for closed-form families, [0, L] for samples.
  std::optional<Interval> domain;
  int sample_count = kDefaultSampleCount;
};

/// Normal vector supplied by a construction where the curve's own curvature vanishes.
using NormalHint = std::function<Vec3(double)>;

/// Vector-valued function of a Taylor variable, used for closed-form parametric curves.
using ParametricFn = std::function<std::array<Taylor3, 3>(const Taylor3&)>;

class Curve {
 public:
  enum class Kind { analytic, sampled, constructed };

  Curve(std::shared_ptr<const CurveRep> rep, Kind kind, bool unit_speed,
        int sample_count = kDefaultSampleCount);

  /// Closed-form parametric curve with exact derivatives, not necessarily unit-speed.
  static Curve parametric(ParametricFn fn, Interval t_domain, int sample_count = kDefaultSampleCount);

  /// Curve through points on a uniform parameter grid over `domain`, interpolated by
  /// local polynomials of degree `order`.
  static Curve from_grid(Interval domain, std::vector<Vec3> points, bool unit_speed,
                         int sample_count, int order = 7);

  Interval domain() const { return rep_->domain(); }
  int sample_count() const { return sample_count_; }
  Kind kind() const { return kind_; }
  bool unit_speed() const { return unit_speed_; }

  /// Throws OutOfDomain for parameters outside the domain.
  Jet jet(double s) const;
  Vec3 position(double s) const { return jet(s).p; }
  Vec3 derivative(double s, int order) const;

  /// Uniform grid of sample_count() parameter values spanning the domain.
  std::vector<double> grid() const;
  std::vector<Vec3> positions() const;

  /// Total arc length; quadrature for curves whose parameter is not arc length.
  double length() const;

  Curve with_sample_count(int n) const;
  Curve with_domain(Interval sub) const;
  Curve transformed(const Mat3& rotation, const Vec3& translation) const;
  Curve translated(const Vec3& offset) const { return transformed(Mat3::Identity(), offset); }

  Curve with_normal_hint(NormalHint hint) const;
  const NormalHint* normal_hint() const { return hint_ ? &*hint_ : nullptr; }

  const std::shared_ptr<const CurveRep>& rep() const { return rep_; }

 private:
  std::shared_ptr<const CurveRep> rep_;
  Kind kind_;
  bool unit_speed_;
  int sample_count_;
  std::shared_ptr<const NormalHint> hint_;
};

/// Throws InvalidSpec or DegenerateSamples.
Curve build_curve(const CurveSpec& spec);

/// Arc-length reparameterization. The result starts at s = 0 when a conversion is needed;
/// curves that are already unit-speed are returned unchanged. Throws NotRegular.
Curve reparameterize_arclength(const Curve& curve);

Vec3 derivative(const Curve& curve, double s, int order);

/// Max |‖γ′‖ − 1| over the sample grid.
double max_speed_deviation(const Curve& curve);

}  // namespace bertrand
