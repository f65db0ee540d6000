#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bertrand/direction_curves.hpp"
#include "bertrand/error.hpp"
#include "fixtures.hpp"

using namespace bertrand;

namespace {

Curve generic_curve() {
  return integrate_frenet_ode([](double s) { return 1.0 + 0.3 * s; }, [](double s) { return std::sin(s); }, {},
                              4.0);
}

}  // namespace

TEST(IntegralCurve, TangentFieldReproducesCurve) {
  const Curve c = fixtures::helix(1, 1);
  const Curve g = integral_curve(c, FrameField::constant(1, 0, 0));
  const Vec3 start = c.position(0.0);
  for (double s : {0.0, 1.0, 5.0, 10.0}) EXPECT_LT((g.position(s) - (c.position(s) - start)).norm(), 1e-9);
  EXPECT_LT(g.position(0.0).norm(), 1e-15);
}

TEST(IntegralCurve, PrincipalDirectionOfHelix) {
  const Curve g = integral_curve(fixtures::helix(1, 1), FrameField::constant(0, 1, 0));
  const FrenetData d = frenet_apparatus(g);
  for (std::size_t i = 0; i < d.size(); i += 17) {
    EXPECT_NEAR(d.kappa[i], 1.0 / std::sqrt(2.0), 1e-7);
    EXPECT_NEAR(d.tau[i], 0.0, 1e-6);
  }
}

TEST(IntegralCurve, BinormalDirectionOfHelix) {
  const Curve g = integral_curve(fixtures::helix(2, 1), FrameField::constant(0, 0, 1));
  const FrenetData d = frenet_apparatus(g);
  for (std::size_t i = 0; i < d.size(); i += 17) {
    EXPECT_NEAR(d.kappa[i], 0.2, 1e-7);  // |τ|
    EXPECT_NEAR(d.tau[i], 0.4, 1e-6);    // κ
  }
}

TEST(IntegralCurve, SameParameterAndTangentEqualsField) {
  const Curve base = generic_curve();
  const double u = 0.6, w = -0.8;
  const Curve g = integral_curve(base, FrameField::constant(u, 0, w));
  EXPECT_DOUBLE_EQ(g.domain().lo, base.domain().lo);
  EXPECT_DOUBLE_EQ(g.domain().hi, base.domain().hi);
  EXPECT_LT(max_speed_deviation(g), 1e-8);
  const FrenetData db = frenet_apparatus(base);
  for (std::size_t i = 0; i < db.size(); i += 11) {
    const Vec3 T = g.derivative(db.s[i], 1);
    EXPECT_LT((T - (u * db.T[i] + w * db.B[i])).norm(), 1e-8);
  }
}

TEST(IntegralCurve, NormalPreservedForConstantInPlaneField) {
  const Curve base = fixtures::helix(2, 1);
  const FrenetData db = frenet_apparatus(base);
  const FrenetData dv = frenet_apparatus(integral_curve(base, FrameField::constant(0.8, 0, 0.6)));
  for (std::size_t i = 0; i < db.size(); ++i) EXPECT_GT(std::abs(db.N[i].dot(dv.N[i])), 1 - 1e-8);
}

TEST(IntegralCurve, RejectsNonUnitField) {
  try {
    integral_curve(fixtures::helix(1, 1), FrameField::constant(1, 1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitField);
  }
}

TEST(Transform, IdentityAndQuarterTurn) {
  const std::vector<double> k{0.5, 0.5}, t{0.5, 0.5};
  const auto id = transform_curvatures(k, t, 1, 0);
  EXPECT_EQ(id.kappa_V, k);
  EXPECT_EQ(id.tau_V, t);
  const auto q = transform_curvatures(k, t, 0, 1);
  EXPECT_DOUBLE_EQ(q.kappa_V[0], -0.5);
  EXPECT_DOUBLE_EQ(q.tau_V[0], 0.5);
}

TEST(Transform, RoundTripAndRotationInvariant) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double phi = a(rng);
    std::vector<double> k(16), t(16);
    for (int i = 0; i < 16; ++i) {
      k[i] = a(rng);
      t[i] = a(rng);
    }
    const auto f = transform_curvatures(k, t, std::cos(phi), std::sin(phi));
    const auto b = inverse_transform_curvatures(f.kappa_V, f.tau_V, std::cos(phi), std::sin(phi));
    for (int i = 0; i < 16; ++i) {
      EXPECT_NEAR(b.kappa_V[i], k[i], 1e-12);
      EXPECT_NEAR(b.tau_V[i], t[i], 1e-12);
      EXPECT_NEAR(f.kappa_V[i] * f.kappa_V[i] + f.tau_V[i] * f.tau_V[i], k[i] * k[i] + t[i] * t[i], 1e-10);
    }
  }
}

TEST(Transform, RejectsNonUnitCoefficients) {
  const std::vector<double> k{1.0}, t{0.0};
  try {
    transform_curvatures(k, t, 0.6, 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitCoefficients);
  }
}

TEST(Transfer, IdentityField) {
  const TransferReport r = bertrand_transfer_check(fixtures::helix(1, 1), 1, 0);
  EXPECT_TRUE(r.accepted);
  EXPECT_NEAR(r.lambda_bar, r.lambda, 1e-15);
  EXPECT_NEAR(r.mu_bar, r.mu, 1e-15);
}

TEST(Transfer, HelixCoefficientsPredicted) {
  const TransferReport r = bertrand_transfer_check(fixtures::helix(1, 1), 0.6, 0.8);
  EXPECT_TRUE(r.accepted);
  EXPECT_NEAR(r.lambda, 1.0, 1e-12);
  EXPECT_NEAR(r.mu, 1.0, 1e-12);
  EXPECT_NEAR(r.lambda_bar, -0.2, 1e-12);
  EXPECT_NEAR(r.mu_bar, 1.4, 1e-12);
  EXPECT_LT(r.algebraic_residual, 1e-10);
  EXPECT_LT(r.measured_residual, 1e-6);
  EXPECT_EQ(r.epsilon, -1);  // κ_V = −0.1 flips the measured normal
}

TEST(Transfer, BinormalFieldOnHelix21) {
  const TransferReport r = bertrand_transfer_check(fixtures::helix(2, 1), 0, 1);
  EXPECT_TRUE(r.accepted);
  EXPECT_LT(r.algebraic_residual, 1e-10);
}

TEST(Transfer, RejectsNonBertrandBase) {
  try {
    bertrand_transfer_check(generic_curve(), 0.6, 0.8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBertrand);
  }
}

TEST(Donor, PlanarCurveDonorIsPlanar) {
  const DonorResult r = principal_donor(fixtures::circle(1.0));
  EXPECT_TRUE(r.crossings.empty());
  const FrenetData d = frenet_apparatus(r.donor);
  for (std::size_t i = 0; i < d.size(); i += 13) {
    EXPECT_NEAR(d.kappa[i], 1.0, 1e-6);
    EXPECT_NEAR(d.tau[i], 0.0, 1e-6);
  }
}

TEST(Donor, HelixBeforeFirstCrossing) {
  const Curve base = fixtures::helix(1, 1).with_domain({0.0, 2.0});
  const DonorResult r = principal_donor(base, true);
  const FrenetData d = frenet_apparatus(r.donor);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(d.kappa[i], 0.5 * std::cos(d.s[i] / 2), 1e-4);
    EXPECT_NEAR(d.tau[i], 0.5 * std::sin(d.s[i] / 2), 1e-4);
  }
}

TEST(Donor, PrincipalDirectionOfDonorIsBase) {
  const Curve base = fixtures::helix(1, 1).with_domain({0.0, 2.0});
  const DonorResult r = principal_donor(base, true);
  const FrenetData db = frenet_apparatus(base), dd = frenet_apparatus(r.donor);
  // The donor's principal normal is the base tangent.
  for (std::size_t i = 0; i < dd.size(); i += 7) EXPECT_GT(std::abs(dd.N[i].dot(db.T[i])), 1 - 1e-6);
}

TEST(Donor, CrossingsClipOrThrow) {
  const Curve base = fixtures::helix(1, 1);  // ∫τ = s/2 reaches π/2 at s = π
  const DonorResult r = principal_donor(base);
  ASSERT_EQ(r.crossings.size(), 2u);
  EXPECT_NEAR(r.crossings[0], M_PI, 1e-6);
  EXPECT_NEAR(r.crossings[1], 3 * M_PI, 1e-6);
  EXPECT_GT(r.domain.lo, M_PI);
  EXPECT_LT(r.domain.hi, 3 * M_PI);
  try {
    principal_donor(base, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VanishingV);
    EXPECT_EQ(e.locations().size(), 2u);
  }
}
