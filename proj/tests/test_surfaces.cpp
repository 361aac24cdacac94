#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "meancurv/surfaces.hpp"

using namespace meancurv;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<SurfaceKind> bundled_surfaces() {
  return {Plane{},         Sphere{1.3},  Cylinder{0.7},
          Torus{2.0, 0.5}, Catenoid{1.0}, Enneper{},
          MongeGraph::saddle(), MongeGraph::paraboloid(), MongeGraph::ripple()};
}

// Finite sampling box inside the admissible domain, kept 1e-3 from edges.
std::pair<Interval, Interval> sampling_box(const SurfaceKind& kind) {
  ParamDomain d = domain(kind);
  auto clamp = [](Interval i) {
    if (!std::isfinite(i.lo)) i.lo = -2.0;
    if (!std::isfinite(i.hi)) i.hi = 2.0;
    return Interval{i.lo + 1e-3, i.hi - 1e-3};
  };
  if (std::holds_alternative<Sphere>(kind)) d.u = {0.05, kPi - 0.05};
  return {clamp(d.u), clamp(d.v)};
}

}  // namespace

TEST(Frame, SphereExample) {
  const SurfaceFrame f = frame(Sphere{2.0}, kPi / 2, 0.0);
  EXPECT_NEAR((f.position - Vec3(2, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((f.N - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(f.H, -1.0, 1e-14);
}

TEST(Frame, PlaneAndCatenoidAreFlatInTheMean) {
  EXPECT_EQ(frame(Plane{}, 0.3, -4.0).H, 0.0);
  for (double s : {-1.9, -0.4, 0.0, 0.8, 2.0}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      EXPECT_NEAR(frame(Catenoid{1.0}, s, phi).H, 0.0, 1e-12);
    }
  }
}

TEST(Frame, CylinderMeanCurvatureVectorPointsToAxis) {
  const SurfaceFrame f = frame(Cylinder{0.5}, 0.3, 0.4);
  const Vec3 radial(std::cos(0.4), std::sin(0.4), 0.0);
  EXPECT_NEAR((f.mean_curvature_vector() + radial / 0.5).norm(), 0.0, 1e-14);
}

TEST(Frame, SpherePoleAndOutsideDomainAreRejected) {
  EXPECT_THROW(frame(Sphere{1.0}, 0.0, 0.3), DegenerateError);
  EXPECT_THROW(frame(Sphere{1.0}, kPi, 0.3), DegenerateError);
  EXPECT_THROW(frame(Catenoid{1.0}, 2.5, 0.0), DegenerateError);
  EXPECT_THROW(frame(Enneper{}, 0.0, 1.6), DegenerateError);
  EXPECT_NO_THROW(frame(Torus{2.0, 0.5}, 100.0, -7.0));
}

TEST(Frame, ShapeParametersMustBePositive) {
  EXPECT_THROW(frame(Sphere{0.0}, 1.0, 1.0), ValidationError);
  EXPECT_THROW(frame(Torus{2.0, -0.1}, 1.0, 1.0), ValidationError);
  EXPECT_THROW(frame(Catenoid{-1.0}, 0.0, 0.0), ValidationError);
  MongeGraph broken = MongeGraph::saddle();
  broken.fxy = nullptr;
  EXPECT_THROW(frame(broken, 0.0, 0.0), ValidationError);
}

TEST(Frame, VanishingAreaElementIsDegenerate) {
  // Spindle torus: the tube passes through the axis where theta = pi.
  EXPECT_THROW(frame(Torus{1.0, 1.0}, kPi, 0.2), DegenerateError);
}

TEST(NumericMeanCurvature, Examples) {
  EXPECT_NEAR(numeric_mean_curvature(Sphere{1.0}, kPi / 3, kPi / 4, 1e-4), -2.0,
              1e-6);
  const Torus torus{2.0, 0.5};
  EXPECT_NEAR(numeric_mean_curvature(torus, kPi / 2, kPi / 2, 1e-4),
              frame(torus, kPi / 2, kPi / 2).H, 1e-5);
  EXPECT_NEAR(numeric_mean_curvature(Plane{}, 0.1, 0.2, 1e-4), 0.0, 1e-8);
}

TEST(NumericMeanCurvature, NeedsMargin) {
  EXPECT_THROW(numeric_mean_curvature(Enneper{}, 1.5, 0.0, 1e-4), DegenerateError);
  EXPECT_THROW(numeric_mean_curvature(Plane{}, 0.0, 0.0, -1.0),
               std::invalid_argument);
}

// Closed-form frame agrees with the finite-difference oracle and satisfies
// the frame invariants at random points of every bundled surface.
TEST(FrameProperty, MatchesFiniteDifferenceOracle) {
  std::mt19937_64 rng(11);
  for (const SurfaceKind& kind : bundled_surfaces()) {
    const auto [bu, bv] = sampling_box(kind);
    std::uniform_real_distribution<double> U(bu.lo + 1e-3, bu.hi - 1e-3);
    std::uniform_real_distribution<double> V(bv.lo + 1e-3, bv.hi - 1e-3);
    for (int i = 0; i < 100; ++i) {
      const double u = U(rng), v = V(rng);
      const SurfaceFrame f = frame(kind, u, v);
      const double fd = numeric_mean_curvature(kind, u, v, 1e-4);
      EXPECT_LE(std::abs(f.H - fd), 1e-5 * (1.0 + std::abs(f.H)))
          << surface_name(kind) << " at (" << u << ", " << v << ")";
      EXPECT_LE(std::abs(f.N.dot(f.S1)), 1e-10);
      EXPECT_LE(std::abs(f.N.dot(f.S2)), 1e-10);
      EXPECT_NEAR(f.N.norm(), 1.0, 1e-12);
      EXPECT_NEAR(f.sqrt_g, f.S1.cross(f.S2).norm(), 1e-10);
    }
  }
}

TEST(FrameProperty, MinimalSurfacesHaveZeroMeanCurvature) {
  std::mt19937_64 rng(12);
  for (const SurfaceKind& kind : {SurfaceKind{Catenoid{1.0}}, SurfaceKind{Catenoid{0.6}},
                                  SurfaceKind{Enneper{}}}) {
    const auto [bu, bv] = sampling_box(kind);
    std::uniform_real_distribution<double> U(bu.lo, bu.hi), V(bv.lo, bv.hi);
    for (int i = 0; i < 200; ++i) {
      EXPECT_LE(std::abs(frame(kind, U(rng), V(rng)).H), 1e-10) << surface_name(kind);
    }
  }
}

TEST(Surfaces, Names) {
  EXPECT_EQ(surface_name(Torus{}), "torus");
  EXPECT_EQ(surface_name(MongeGraph::saddle()), "saddle");
}
