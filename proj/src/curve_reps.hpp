#pragma once

// Curve backends shared between translation units. Not part of the public API.

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "bertrand/curve.hpp"

namespace bertrand::detail {

/// (a cos(s/c), a sin(s/c), z0 + b s/c), c = √(a² + b²). Unit speed.
class HelixRep final : public CurveRep {
 public:
  HelixRep(double a, double b, double z0, Interval domain);
  Interval domain() const override { return domain_; }
  Jet jet(double s) const override;

 private:
  double a_, b_, z0_, c_;
  Interval domain_;
};

class LineRep final : public CurveRep {
 public:
  LineRep(const Vec3& direction, Interval domain);
  Interval domain() const override { return domain_; }
  Jet jet(double s) const override;

 private:
  Vec3 dir_;
  Interval domain_;
};

class ParametricRep final : public CurveRep {
 public:
  ParametricRep(ParametricFn fn, Interval domain) : fn_(std::move(fn)), domain_(domain) {}
  Interval domain() const override { return domain_; }
  Jet jet(double t) const override;

 private:
  ParametricFn fn_;
  Interval domain_;
};

/// Piecewise local polynomial through ordered nodes. Each cell uses the degree+1 nodes
/// centred on it.
class GridPolyRep final : public CurveRep {
 public:
  GridPolyRep(std::vector<double> nodes, const std::vector<Vec3>& points, int degree);
  Interval domain() const override { return {nodes_.front(), nodes_.back()}; }
  Jet jet(double t) const override;
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::size_t cell_of(double t) const;

  std::vector<double> nodes_;
  int degree_;
  bool uniform_;
  // Per cell, (degree+1) x 3 coefficients in the local variable (t - t_i) / (t_{i+1} - t_i).
  std::vector<Eigen::MatrixX3d> coeffs_;
};

/// Arc-length view of another representation. Domain is [0, L].
class ArcLengthRep final : public CurveRep {
 public:
  ArcLengthRep(std::shared_ptr<const CurveRep> inner, std::vector<double> breakpoints);
  Interval domain() const override { return {0.0, cumulative_.back()}; }
  Jet jet(double s) const override;
  /// Inner parameter at arc length s.
  double parameter_at(double s) const;

 private:
  double partial_length(double t0, double t1) const;

  std::shared_ptr<const CurveRep> inner_;
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

class TransformedRep final : public CurveRep {
 public:
  TransformedRep(std::shared_ptr<const CurveRep> inner, const Mat3& rotation, const Vec3& shift)
      : inner_(std::move(inner)), rotation_(rotation), shift_(shift) {}
  Interval domain() const override { return inner_->domain(); }
  Jet jet(double t) const override;

 private:
  std::shared_ptr<const CurveRep> inner_;
  Mat3 rotation_;
  Vec3 shift_;
};

class RestrictedRep final : public CurveRep {
 public:
  RestrictedRep(std::shared_ptr<const CurveRep> inner, Interval domain)
      : inner_(std::move(inner)), domain_(domain) {}
  Interval domain() const override { return domain_; }
  Jet jet(double t) const override { return inner_->jet(t); }

 private:
  std::shared_ptr<const CurveRep> inner_;
  Interval domain_;
};

/// Breakpoints of a representation when it is piecewise (empty otherwise).
std::vector<double> breakpoints_of(const CurveRep& rep);

}  // namespace bertrand::detail
