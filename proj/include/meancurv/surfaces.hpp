#pragma once

#include <functional>
#include <string>
#include <variant>

#include "meancurv/numcore.hpp"

namespace meancurv {

// Analytic surface descriptors. Parameter conventions (u, v):
//   Plane      (x, y)           r = (x, y, 0)
//   Sphere     (theta, phi)     polar angle from +z, azimuth
//   Cylinder   (z, phi)
//   Torus      (theta, phi)     tube angle, azimuth around z
//   Catenoid   (s, phi)         r = (c cosh(s/c) cos phi, c cosh(s/c) sin phi, s)
//   Enneper    (u, v)
//   MongeGraph (x, y)           r = (x, y, f(x, y))

struct Plane {};
struct Sphere {
  double R = 1.0;
};
struct Cylinder {
  double R = 1.0;
};
struct Torus {
  double R_major = 2.0;
  double r_minor = 0.5;
};
struct Catenoid {
  double c = 1.0;
};
struct Enneper {};

/// Height field z = f(x, y) with caller-supplied analytic partials.
struct MongeGraph {
  std::string name = "monge";
  std::function<double(double, double)> f, fx, fy, fxx, fxy, fyy;
  Interval x{-1.0, 1.0};
  Interval y{-1.0, 1.0};

  static MongeGraph saddle();      ///< f = x^2 - y^2
  static MongeGraph paraboloid();  ///< f = (x^2 + y^2) / 2
  static MongeGraph ripple();      ///< f = 0.3 sin(2x) cos(y)
};

using SurfaceKind =
    std::variant<Plane, Sphere, Cylinder, Torus, Catenoid, Enneper, MongeGraph>;

/// Position with first and second parameter derivatives.
struct SurfaceJet {
  Vec3 r, r_u, r_v, r_uu, r_uv, r_vv;
};

struct SurfaceFrame {
  Vec3 position;
  Vec3 S1;  ///< dr/du
  Vec3 S2;  ///< dr/dv
  Vec3 N;   ///< (S1 x S2) / |S1 x S2|
  double sqrt_g = 0.0;
  /// Trace of the shape operator with b_ab = r_ab . N; the unit sphere
  /// with outward N has H = -2.
  double H = 0.0;

  Vec3 mean_curvature_vector() const { return H * N; }
};

/// Admissible parameter box. Periodic directions accept any value.
struct ParamDomain {
  Interval u;
  Interval v;
  bool u_periodic = false;
  bool v_periodic = false;
};

inline constexpr double kPoleMargin = 1e-9;
inline constexpr double kMinAreaElement = 1e-12;

std::string surface_name(const SurfaceKind& kind);
ParamDomain domain(const SurfaceKind& kind);
bool contains(const SurfaceKind& kind, double u, double v);

/// Throws ValidationError when a shape parameter is not strictly positive or
/// a Monge graph lacks a partial.
void validate(const SurfaceKind& kind);

SurfaceJet jet(const SurfaceKind& kind, double u, double v);
Vec3 position(const SurfaceKind& kind, double u, double v);

/// Closed-form frame. Throws DegenerateError outside the domain or when the
/// area element falls below kMinAreaElement.
SurfaceFrame frame(const SurfaceKind& kind, double u, double v);

/// Mean curvature from central-difference fundamental forms of the position
/// alone. Independent of the analytic derivatives used by frame().
double numeric_mean_curvature(const SurfaceKind& kind, double u, double v,
                              double h);

}  // namespace meancurv
