#pragma once

#include <variant>
#include <vector>

#include "meancurv/numcore.hpp"
#include "meancurv/surfaces.hpp"

namespace meancurv {

struct RectRegion {
  double u0, u1, v0, v1;
};

/// Disk of radius rho in parameter space, integrated in polar coordinates.
struct DiskRegion {
  double uc, vc, rho;
};

/// Parameter-space patch. Boundaries are traversed counterclockwise in the
/// (u, v) plane.
using ParamRegion = std::variant<RectRegion, DiskRegion>;

/// Latitude cap theta in [kPoleMargin, theta0] with the full azimuth range.
RectRegion sphere_cap(double theta0);

struct BoundaryPoint {
  Vec3 position;
  Vec3 t;  ///< unit tangent in the direction of traversal
  Vec3 n;  ///< unit exterior normal, tangent to the surface
  Vec3 N;  ///< surface normal at the point
  double speed = 0.0;  ///< |d position / ds|
};

struct IdentityReport {
  Vec3 lhs = Vec3::Zero();  ///< integral of N H over the patch
  Vec3 rhs = Vec3::Zero();  ///< integral of n along the boundary
  double abs_err = 0.0;
  double rel_err = 0.0;
  double area = 0.0;
};

struct LimitEstimate {
  std::vector<double> radii;
  std::vector<Vec3> estimates;  ///< (1/A) * boundary integral of n
  Vec3 target = Vec3::Zero();   ///< N H at the center
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(radius); NaN when any
  /// error is exactly zero.
  double observed_order = 0.0;
};

/// Throws ValidationError for empty extents and DegenerateError when the
/// region leaves the surface's domain.
void check_admissible(const SurfaceKind& kind, const ParamRegion& region);

/// Boundary point at s in [0, 1). Rect edges take a quarter of s each,
/// starting with the bottom edge v = v0.
BoundaryPoint boundary_point(const SurfaceKind& kind,
                             const ParamRegion& region, double s);

Vec3 lhs_integral(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule);
Vec3 rhs_integral(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule);
double patch_area(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule);
double contour_length(const SurfaceKind& kind, const ParamRegion& region,
                      const QuadratureRule& rule);

IdentityReport verify_identity(const SurfaceKind& kind,
                               const ParamRegion& region,
                               const QuadratureRule& rule);

LimitEstimate shrinking_limit(const SurfaceKind& kind, Vec2 center,
                              const std::vector<double>& radii,
                              const QuadratureRule& rule);

}  // namespace meancurv
