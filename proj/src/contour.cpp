#include "meancurv/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

namespace meancurv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinSpeed = 1e-12;

// Parameter-space position and derivative d(u, v)/ds along the boundary.
struct ParamTrace {
  Vec2 uv;
  Vec2 duv;
};

ParamTrace trace_rect(const RectRegion& r, double s) {
  const double du = r.u1 - r.u0;
  const double dv = r.v1 - r.v0;
  const int edge = std::min(3, static_cast<int>(std::floor(s * 4.0)));
  const double t = s * 4.0 - edge;
  switch (edge) {
    case 0:
      return {{r.u0 + t * du, r.v0}, {4.0 * du, 0.0}};
    case 1:
      return {{r.u1, r.v0 + t * dv}, {0.0, 4.0 * dv}};
    case 2:
      return {{r.u1 - t * du, r.v1}, {-4.0 * du, 0.0}};
    default:
      return {{r.u0, r.v1 - t * dv}, {0.0, -4.0 * dv}};
  }
}

ParamTrace trace_disk(const DiskRegion& d, double s) {
  const double a = kTwoPi * s;
  return {{d.uc + d.rho * std::cos(a), d.vc + d.rho * std::sin(a)},
          {-kTwoPi * d.rho * std::sin(a), kTwoPi * d.rho * std::cos(a)}};
}

ParamTrace trace(const ParamRegion& region, double s) {
  if (const auto* r = std::get_if<RectRegion>(&region)) return trace_rect(*r, s);
  return trace_disk(std::get<DiskRegion>(region), s);
}

// Integrate g(s) over the boundary parameter, one rule application per
// smooth piece so no panel straddles a rectangle corner.
template <typename G>
auto integrate_boundary(const ParamRegion& region, const QuadratureRule& rule,
                        G&& g) {
  if (std::holds_alternative<DiskRegion>(region)) {
    return integrate_interval(g, 0.0, 1.0, rule);
  }
  auto total = integrate_interval(g, 0.0, 0.25, rule);
  for (int e = 1; e < 4; ++e) {
    total += integrate_interval(g, 0.25 * e, 0.25 * (e + 1), rule);
  }
  return total;
}

// Integrate f(frame) * sqrt_g over the region.
template <typename F>
auto integrate_patch(const SurfaceKind& kind, const ParamRegion& region,
                     const QuadratureRule& rule, F&& f) {
  using Value = detail::plain_t<std::invoke_result_t<F&, const SurfaceFrame&>>;
  if (const auto* r = std::get_if<RectRegion>(&region)) {
    return integrate_rect(
        [&](double u, double v) {
          const SurfaceFrame fr = frame(kind, u, v);
          return Value(f(fr) * fr.sqrt_g);
        },
        {r->u0, r->u1}, {r->v0, r->v1}, rule);
  }
  const auto& d = std::get<DiskRegion>(region);
  return integrate_rect(
      [&](double rho, double angle) {
        const SurfaceFrame fr = frame(kind, d.uc + rho * std::cos(angle),
                                      d.vc + rho * std::sin(angle));
        return Value(f(fr) * (fr.sqrt_g * rho));
      },
      {0.0, d.rho}, {0.0, kTwoPi}, rule);
}

}  // namespace

RectRegion sphere_cap(double theta0) {
  return RectRegion{kPoleMargin, theta0, 0.0, kTwoPi};
}

void check_admissible(const SurfaceKind& kind, const ParamRegion& region) {
  validate(kind);
  const ParamDomain dom = domain(kind);
  std::ostringstream msg;
  msg.precision(17);
  if (const auto* r = std::get_if<RectRegion>(&region)) {
    if (!(r->u1 > r->u0) || !(r->v1 > r->v0)) {
      throw ValidationError("rect region requires u1 > u0 and v1 > v0");
    }
    if ((dom.u_periodic && r->u1 - r->u0 > kTwoPi + 1e-12) ||
        (dom.v_periodic && r->v1 - r->v0 > kTwoPi + 1e-12)) {
      throw ValidationError("rect region wraps a periodic direction");
    }
    for (double u : {r->u0, r->u1}) {
      for (double v : {r->v0, r->v1}) {
        if (!contains(kind, u, v)) {
          msg << "region corner (" << u << ", " << v << ") outside "
              << surface_name(kind) << " domain";
          throw DegenerateError(msg.str());
        }
      }
    }
    return;
  }
  const auto& d = std::get<DiskRegion>(region);
  if (!(d.rho > 0.0)) throw ValidationError("disk region requires rho > 0");
  if ((dom.u_periodic && 2.0 * d.rho > kTwoPi) ||
      (dom.v_periodic && 2.0 * d.rho > kTwoPi)) {
    throw ValidationError("disk region wraps a periodic direction");
  }
  // The bounding box of the disk lies inside the domain box.
  for (double u : {d.uc - d.rho, d.uc + d.rho}) {
    for (double v : {d.vc - d.rho, d.vc + d.rho}) {
      if (!contains(kind, u, v)) {
        msg << "disk region around (" << d.uc << ", " << d.vc
            << ") leaves the " << surface_name(kind) << " domain";
        throw DegenerateError(msg.str());
      }
    }
  }
}

BoundaryPoint boundary_point(const SurfaceKind& kind,
                             const ParamRegion& region, double s) {
  const ParamTrace p = trace(region, s);
  const SurfaceFrame fr = frame(kind, p.uv.x(), p.uv.y());
  const Vec3 velocity = fr.S1 * p.duv.x() + fr.S2 * p.duv.y();
  const double speed = velocity.norm();
  if (!(speed >= kMinSpeed)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "degenerate contour tangent at s = " << s;
    throw DegenerateError(msg.str());
  }
  BoundaryPoint b;
  b.position = fr.position;
  b.t = velocity / speed;
  b.N = fr.N;
  b.n = b.t.cross(fr.N).normalized();
  b.speed = speed;
  return b;
}

Vec3 lhs_integral(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule) {
  check_admissible(kind, region);
  return integrate_patch(kind, region, rule, [](const SurfaceFrame& fr) -> Vec3 {
    return fr.mean_curvature_vector();
  });
}

Vec3 rhs_integral(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule) {
  check_admissible(kind, region);
  return integrate_boundary(region, rule, [&](double s) -> Vec3 {
    const BoundaryPoint b = boundary_point(kind, region, s);
    return b.n * b.speed;
  });
}

double patch_area(const SurfaceKind& kind, const ParamRegion& region,
                  const QuadratureRule& rule) {
  check_admissible(kind, region);
  return integrate_patch(kind, region, rule,
                         [](const SurfaceFrame&) { return 1.0; });
}

double contour_length(const SurfaceKind& kind, const ParamRegion& region,
                      const QuadratureRule& rule) {
  check_admissible(kind, region);
  return integrate_boundary(region, rule, [&](double s) {
    return boundary_point(kind, region, s).speed;
  });
}

IdentityReport verify_identity(const SurfaceKind& kind,
                               const ParamRegion& region,
                               const QuadratureRule& rule) {
  IdentityReport rep;
  rep.lhs = lhs_integral(kind, region, rule);
  rep.rhs = rhs_integral(kind, region, rule);
  rep.area = patch_area(kind, region, rule);
  rep.abs_err = (rep.lhs - rep.rhs).norm();
  rep.rel_err = rep.abs_err / std::max({rep.lhs.norm(), rep.rhs.norm(), 1e-30});
  return rep;
}

LimitEstimate shrinking_limit(const SurfaceKind& kind, Vec2 center,
                              const std::vector<double>& radii,
                              const QuadratureRule& rule) {
  if (radii.empty()) throw ValidationError("shrinking_limit: no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw ValidationError(
          "shrinking_limit: radii must be positive and strictly decreasing");
    }
  }
  LimitEstimate est;
  est.radii = radii;
  est.target = frame(kind, center.x(), center.y()).mean_curvature_vector();
  bool any_zero = false;
  for (double rho : radii) {
    const DiskRegion disk{center.x(), center.y(), rho};
    const Vec3 flux = rhs_integral(kind, disk, rule);
    const double area = patch_area(kind, disk, rule);
    const Vec3 value = flux / area;
    est.estimates.push_back(value);
    est.errors.push_back((value - est.target).norm());
    any_zero = any_zero || est.errors.back() == 0.0;
  }
  if (any_zero || radii.size() < 2) {
    est.observed_order = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    mx += std::log(radii[i]);
    my += std::log(est.errors[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double dx = std::log(radii[i]) - mx;
    sxy += dx * (std::log(est.errors[i]) - my);
    sxx += dx * dx;
  }
  est.observed_order = sxy / sxx;
  return est;
}

}  // namespace meancurv
