#include "meancurv/surfaces.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

namespace meancurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool inside(const Interval& i, double x) { return x >= i.lo && x <= i.hi; }

SurfaceJet jet_of(const Plane&, double u, double v) {
  SurfaceJet j;
  j.r = Vec3(u, v, 0.0);
  j.r_u = Vec3::UnitX();
  j.r_v = Vec3::UnitY();
  j.r_uu = j.r_uv = j.r_vv = Vec3::Zero();
  return j;
}

SurfaceJet jet_of(const Sphere& s, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double R = s.R;
  SurfaceJet j;
  j.r = R * Vec3(st * cp, st * sp, ct);
  j.r_u = R * Vec3(ct * cp, ct * sp, -st);
  j.r_v = R * Vec3(-st * sp, st * cp, 0.0);
  j.r_uu = -j.r;
  j.r_uv = R * Vec3(-ct * sp, ct * cp, 0.0);
  j.r_vv = R * Vec3(-st * cp, -st * sp, 0.0);
  return j;
}

SurfaceJet jet_of(const Cylinder& c, double z, double phi) {
  const double sp = std::sin(phi), cp = std::cos(phi);
  SurfaceJet j;
  j.r = Vec3(c.R * cp, c.R * sp, z);
  j.r_u = Vec3::UnitZ();
  j.r_v = Vec3(-c.R * sp, c.R * cp, 0.0);
  j.r_uu = j.r_uv = Vec3::Zero();
  j.r_vv = Vec3(-c.R * cp, -c.R * sp, 0.0);
  return j;
}

SurfaceJet jet_of(const Torus& t, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double r = t.r_minor;
  const double rho = t.R_major + r * ct;
  SurfaceJet j;
  j.r = Vec3(rho * cp, rho * sp, r * st);
  j.r_u = Vec3(-r * st * cp, -r * st * sp, r * ct);
  j.r_v = Vec3(-rho * sp, rho * cp, 0.0);
  j.r_uu = Vec3(-r * ct * cp, -r * ct * sp, -r * st);
  j.r_uv = Vec3(r * st * sp, -r * st * cp, 0.0);
  j.r_vv = Vec3(-rho * cp, -rho * sp, 0.0);
  return j;
}

SurfaceJet jet_of(const Catenoid& k, double s, double phi) {
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double rho = k.c * std::cosh(s / k.c);
  const double drho = std::sinh(s / k.c);
  const double ddrho = std::cosh(s / k.c) / k.c;
  SurfaceJet j;
  j.r = Vec3(rho * cp, rho * sp, s);
  j.r_u = Vec3(drho * cp, drho * sp, 1.0);
  j.r_v = Vec3(-rho * sp, rho * cp, 0.0);
  j.r_uu = Vec3(ddrho * cp, ddrho * sp, 0.0);
  j.r_uv = Vec3(-drho * sp, drho * cp, 0.0);
  j.r_vv = Vec3(-rho * cp, -rho * sp, 0.0);
  return j;
}

SurfaceJet jet_of(const Enneper&, double u, double v) {
  SurfaceJet j;
  j.r = Vec3(u - u * u * u / 3.0 + u * v * v, v - v * v * v / 3.0 + u * u * v,
             u * u - v * v);
  j.r_u = Vec3(1.0 - u * u + v * v, 2.0 * u * v, 2.0 * u);
  j.r_v = Vec3(2.0 * u * v, 1.0 - v * v + u * u, -2.0 * v);
  j.r_uu = Vec3(-2.0 * u, 2.0 * v, 2.0);
  j.r_uv = Vec3(2.0 * v, 2.0 * u, 0.0);
  j.r_vv = Vec3(2.0 * u, -2.0 * v, -2.0);
  return j;
}

SurfaceJet jet_of(const MongeGraph& m, double x, double y) {
  SurfaceJet j;
  j.r = Vec3(x, y, m.f(x, y));
  j.r_u = Vec3(1.0, 0.0, m.fx(x, y));
  j.r_v = Vec3(0.0, 1.0, m.fy(x, y));
  j.r_uu = Vec3(0.0, 0.0, m.fxx(x, y));
  j.r_uv = Vec3(0.0, 0.0, m.fxy(x, y));
  j.r_vv = Vec3(0.0, 0.0, m.fyy(x, y));
  return j;
}

// H = g^{ab} b_ab from the two fundamental forms.
double trace_shape_operator(const Vec3& ru, const Vec3& rv, const Vec3& ruu,
                            const Vec3& ruv, const Vec3& rvv, const Vec3& N) {
  const double E = ru.dot(ru), F = ru.dot(rv), G = rv.dot(rv);
  const double b11 = ruu.dot(N), b12 = ruv.dot(N), b22 = rvv.dot(N);
  return (G * b11 - 2.0 * F * b12 + E * b22) / (E * G - F * F);
}

[[noreturn]] void throw_outside(const SurfaceKind& kind, double u, double v) {
  std::ostringstream msg;
  msg.precision(17);
  msg << surface_name(kind) << ": parameter (" << u << ", " << v
      << ") outside the admissible domain";
  throw DegenerateError(msg.str());
}

}  // namespace

MongeGraph MongeGraph::saddle() {
  MongeGraph m;
  m.name = "saddle";
  m.f = [](double x, double y) { return x * x - y * y; };
  m.fx = [](double x, double) { return 2.0 * x; };
  m.fy = [](double, double y) { return -2.0 * y; };
  m.fxx = [](double, double) { return 2.0; };
  m.fxy = [](double, double) { return 0.0; };
  m.fyy = [](double, double) { return -2.0; };
  return m;
}

MongeGraph MongeGraph::paraboloid() {
  MongeGraph m;
  m.name = "paraboloid";
  m.f = [](double x, double y) { return 0.5 * (x * x + y * y); };
  m.fx = [](double x, double) { return x; };
  m.fy = [](double, double y) { return y; };
  m.fxx = [](double, double) { return 1.0; };
  m.fxy = [](double, double) { return 0.0; };
  m.fyy = [](double, double) { return 1.0; };
  return m;
}

MongeGraph MongeGraph::ripple() {
  MongeGraph m;
  m.name = "ripple";
  m.f = [](double x, double y) { return 0.3 * std::sin(2.0 * x) * std::cos(y); };
  m.fx = [](double x, double y) { return 0.6 * std::cos(2.0 * x) * std::cos(y); };
  m.fy = [](double x, double y) { return -0.3 * std::sin(2.0 * x) * std::sin(y); };
  m.fxx = [](double x, double y) { return -1.2 * std::sin(2.0 * x) * std::cos(y); };
  m.fxy = [](double x, double y) { return -0.6 * std::cos(2.0 * x) * std::sin(y); };
  m.fyy = [](double x, double y) { return -0.3 * std::sin(2.0 * x) * std::cos(y); };
  return m;
}

std::string surface_name(const SurfaceKind& kind) {
  return std::visit(
      Overloaded{[](const Plane&) -> std::string { return "plane"; },
                 [](const Sphere&) -> std::string { return "sphere"; },
                 [](const Cylinder&) -> std::string { return "cylinder"; },
                 [](const Torus&) -> std::string { return "torus"; },
                 [](const Catenoid&) -> std::string { return "catenoid"; },
                 [](const Enneper&) -> std::string { return "enneper"; },
                 [](const MongeGraph& m) -> std::string { return m.name; }},
      kind);
}

ParamDomain domain(const SurfaceKind& kind) {
  return std::visit(
      Overloaded{
          [](const Plane&) {
            return ParamDomain{{-kInf, kInf}, {-kInf, kInf}, false, false};
          },
          [](const Sphere&) {
            return ParamDomain{{kPoleMargin, std::numbers::pi - kPoleMargin},
                               {0.0, kTwoPi},
                               false,
                               true};
          },
          [](const Cylinder&) {
            return ParamDomain{{-kInf, kInf}, {0.0, kTwoPi}, false, true};
          },
          [](const Torus&) {
            return ParamDomain{{0.0, kTwoPi}, {0.0, kTwoPi}, true, true};
          },
          [](const Catenoid&) {
            return ParamDomain{{-2.0, 2.0}, {0.0, kTwoPi}, false, true};
          },
          [](const Enneper&) {
            return ParamDomain{{-1.5, 1.5}, {-1.5, 1.5}, false, false};
          },
          [](const MongeGraph& m) { return ParamDomain{m.x, m.y, false, false}; }},
      kind);
}

bool contains(const SurfaceKind& kind, double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) return false;
  const ParamDomain d = domain(kind);
  return (d.u_periodic || inside(d.u, u)) && (d.v_periodic || inside(d.v, v));
}

void validate(const SurfaceKind& kind) {
  auto positive = [](double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError(std::string(what) + " must be strictly positive");
    }
  };
  std::visit(Overloaded{[](const Plane&) {},
                        [&](const Sphere& s) { positive(s.R, "sphere R"); },
                        [&](const Cylinder& c) { positive(c.R, "cylinder R"); },
                        [&](const Torus& t) {
                          positive(t.R_major, "torus R_major");
                          positive(t.r_minor, "torus r_minor");
                        },
                        [&](const Catenoid& k) { positive(k.c, "catenoid c"); },
                        [](const Enneper&) {},
                        [](const MongeGraph& m) {
                          if (!m.f || !m.fx || !m.fy || !m.fxx || !m.fxy ||
                              !m.fyy) {
                            throw ValidationError(
                                "monge graph requires f and all first and "
                                "second partials");
                          }
                          if (!(m.x.lo < m.x.hi) || !(m.y.lo < m.y.hi)) {
                            throw ValidationError(
                                "monge graph rectangle must be nonempty");
                          }
                        }},
             kind);
}

SurfaceJet jet(const SurfaceKind& kind, double u, double v) {
  return std::visit([&](const auto& k) { return jet_of(k, u, v); }, kind);
}

Vec3 position(const SurfaceKind& kind, double u, double v) {
  return jet(kind, u, v).r;
}

SurfaceFrame frame(const SurfaceKind& kind, double u, double v) {
  validate(kind);
  if (!contains(kind, u, v)) throw_outside(kind, u, v);
  const SurfaceJet j = jet(kind, u, v);
  const Vec3 cross = j.r_u.cross(j.r_v);
  const double sqrt_g = cross.norm();
  if (!(sqrt_g >= kMinAreaElement)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << surface_name(kind) << ": degenerate parameterization at (" << u
        << ", " << v << "), |S1 x S2| = " << sqrt_g;
    throw DegenerateError(msg.str());
  }
  SurfaceFrame f;
  f.position = j.r;
  f.S1 = j.r_u;
  f.S2 = j.r_v;
  f.N = cross / sqrt_g;
  f.sqrt_g = sqrt_g;
  f.H = trace_shape_operator(j.r_u, j.r_v, j.r_uu, j.r_uv, j.r_vv, f.N);
  return f;
}

double numeric_mean_curvature(const SurfaceKind& kind, double u, double v,
                              double h) {
  validate(kind);
  if (!(h > 0.0)) throw std::invalid_argument("numeric_mean_curvature: h <= 0");
  for (double du : {-h, 0.0, h}) {
    for (double dv : {-h, 0.0, h}) {
      if (!contains(kind, u + du, v + dv)) throw_outside(kind, u + du, v + dv);
    }
  }
  auto r = [&](double a, double b) { return position(kind, a, b); };
  const Vec3 r0 = r(u, v);
  const Vec3 ru = (r(u + h, v) - r(u - h, v)) / (2.0 * h);
  const Vec3 rv = (r(u, v + h) - r(u, v - h)) / (2.0 * h);
  const Vec3 ruu = (r(u + h, v) - 2.0 * r0 + r(u - h, v)) / (h * h);
  const Vec3 rvv = (r(u, v + h) - 2.0 * r0 + r(u, v - h)) / (h * h);
  const Vec3 ruv = (r(u + h, v + h) - r(u + h, v - h) - r(u - h, v + h) +
                    r(u - h, v - h)) /
                   (4.0 * h * h);
  const Vec3 cross = ru.cross(rv);
  const double sqrt_g = cross.norm();
  if (!(sqrt_g >= kMinAreaElement)) {
    throw DegenerateError(surface_name(kind) +
                          ": degenerate finite-difference tangent plane");
  }
  return trace_shape_operator(ru, rv, ruu, ruv, rvv, cross / sqrt_g);
}

}  // namespace meancurv
