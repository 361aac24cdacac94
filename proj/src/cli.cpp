#include "meancurv/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "meancurv/contour.hpp"
#include "meancurv/flow.hpp"
#include "meancurv/surfaces.hpp"

namespace meancurv::cli {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv(const Vec3& v) {
  return format_real(v.x()) + ',' + format_real(v.y()) + ',' + format_real(v.z());
}

struct SurfaceOptions {
  std::string surface;
  double R = std::numeric_limits<double>::quiet_NaN();
  double r = 0.5;
  double c = 1.0;
  std::string monge = "saddle";
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

  void add(CLI::App* app) {
    app->add_option("--surface", surface, "Analytic surface")
        ->required()
        ->check(CLI::IsMember({"plane", "sphere", "cylinder", "torus",
                               "catenoid", "enneper", "monge"}));
    app->add_option("--R", R,
                    "Sphere/cylinder radius (default 1) or torus major "
                    "radius (default 2)");
    app->add_option("--r", r, "Torus minor radius")->capture_default_str();
    app->add_option("--c", c, "Catenoid neck radius")->capture_default_str();
    app->add_option("--monge", monge, "Height function for --surface monge")
        ->check(CLI::IsMember({"saddle", "paraboloid", "ripple"}))
        ->capture_default_str();
    app->add_option("--x0", x0, "Monge rectangle")->capture_default_str();
    app->add_option("--x1", x1)->capture_default_str();
    app->add_option("--y0", y0)->capture_default_str();
    app->add_option("--y1", y1)->capture_default_str();
  }

  SurfaceKind build() const {
    auto radius = [&](double fallback) { return std::isnan(R) ? fallback : R; };
    SurfaceKind kind;
    if (surface == "plane") {
      kind = Plane{};
    } else if (surface == "sphere") {
      kind = Sphere{radius(1.0)};
    } else if (surface == "cylinder") {
      kind = Cylinder{radius(1.0)};
    } else if (surface == "torus") {
      kind = Torus{radius(2.0), r};
    } else if (surface == "catenoid") {
      kind = Catenoid{c};
    } else if (surface == "enneper") {
      kind = Enneper{};
    } else {
      MongeGraph m = monge == "saddle"       ? MongeGraph::saddle()
                     : monge == "paraboloid" ? MongeGraph::paraboloid()
                                             : MongeGraph::ripple();
      m.x = {x0, x1};
      m.y = {y0, y1};
      kind = std::move(m);
    }
    validate(kind);
    return kind;
  }
};

struct QuadOptions {
  int n = QuadratureRule::kDefaultNodes;
  int panels = QuadratureRule::kDefaultPanels;

  void add(CLI::App* app) {
    app->add_option("--quad-n", n, "Gauss-Legendre nodes per panel")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app->add_option("--panels", panels, "Composite panels per interval")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
  }
  QuadratureRule build() const { return QuadratureRule::gauss_legendre(n, panels); }
};

// Destination for CSV: the --output file when given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw Error("failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------

struct VerifyCommand {
  SurfaceOptions surface;
  QuadOptions quad;
  std::string region = "rect";
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
  double uc = 0.0, vc = 0.0, rho = 0.0;
  double theta0 = std::numbers::pi / 3.0;
  double max_rel_err = 1e-8;
  std::string output;

  void add(CLI::App* app) {
    surface.add(app);
    quad.add(app);
    app->add_option("--region", region, "Patch shape")
        ->check(CLI::IsMember({"rect", "disk", "cap"}))
        ->capture_default_str();
    app->add_option("--u0", u0, "Rect region bounds");
    app->add_option("--u1", u1);
    app->add_option("--v0", v0);
    app->add_option("--v1", v1);
    app->add_option("--uc", uc, "Disk region center and radius");
    app->add_option("--vc", vc);
    app->add_option("--rho", rho);
    app->add_option("--theta0", theta0, "Sphere cap polar angle")
        ->capture_default_str();
    app->add_option("--max-rel-err", max_rel_err,
                    "Exit 2 when the relative residual exceeds this")
        ->capture_default_str();
    app->add_option("--output,-o", output, "CSV file (default stdout)");
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    const SurfaceKind kind = surface.build();
    ParamRegion reg;
    if (region == "cap") {
      if (!std::holds_alternative<Sphere>(kind)) {
        throw ValidationError("--region cap requires --surface sphere");
      }
      reg = sphere_cap(theta0);
    } else if (region == "disk") {
      reg = DiskRegion{uc, vc, rho};
    } else {
      reg = RectRegion{u0, u1, v0, v1};
    }
    const IdentityReport rep = verify_identity(kind, reg, quad.build());
    Sink sink(output, out);
    *sink << "surface,region,lhs_x,lhs_y,lhs_z,rhs_x,rhs_y,rhs_z,abs_err,rel_err,area\n";
    *sink << surface_name(kind) << ',' << region << ',' << csv(rep.lhs) << ','
          << csv(rep.rhs) << ',' << format_real(rep.abs_err) << ','
          << format_real(rep.rel_err) << ',' << format_real(rep.area) << '\n';
    sink.finish();
    // Minimal surfaces have both sides near zero, where the relative
    // residual is noise; an absolute residual below tol * contour length
    // also passes.
    const double length = contour_length(kind, reg, quad.build());
    if (!(rep.rel_err <= max_rel_err) &&
        !(rep.abs_err <= max_rel_err * length)) {
      err << "verify: rel_err " << format_real(rep.rel_err)
          << " exceeds --max-rel-err " << format_real(max_rel_err) << '\n';
      return kCheckFailed;
    }
    return kOk;
  }
};

struct LimitCommand {
  SurfaceOptions surface;
  QuadOptions quad;
  double uc = 0.0, vc = 0.0;
  std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
  std::optional<double> max_rel_err;
  std::string output;

  void add(CLI::App* app) {
    surface.add(app);
    quad.add(app);
    app->add_option("--uc", uc, "Disk center u")->required();
    app->add_option("--vc", vc, "Disk center v")->required();
    app->add_option("--radii", radii, "Decreasing disk radii")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--max-rel-err", max_rel_err,
                    "Exit 2 when the final relative error exceeds this");
    app->add_option("--output,-o", output, "CSV file (default stdout)");
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    const SurfaceKind kind = surface.build();
    const LimitEstimate est =
        shrinking_limit(kind, Vec2(uc, vc), radii, quad.build());
    Sink sink(output, out);
    *sink << "radius,est_x,est_y,est_z,err,observed_order\n";
    for (std::size_t i = 0; i < est.radii.size(); ++i) {
      *sink << format_real(est.radii[i]) << ',' << csv(est.estimates[i]) << ','
            << format_real(est.errors[i]) << ',';
      if (i + 1 == est.radii.size()) *sink << format_real(est.observed_order);
      *sink << '\n';
    }
    sink.finish();
    if (max_rel_err) {
      const double scale = est.target.norm();
      const double rel = scale > 0.0 ? est.errors.back() / scale : est.errors.back();
      if (!(rel <= *max_rel_err)) {
        err << "limit: final relative error " << format_real(rel)
            << " exceeds --max-rel-err " << format_real(*max_rel_err) << '\n';
        return kCheckFailed;
      }
    }
    return kOk;
  }
};

struct CurvatureCommand {
  std::string input;
  std::string output;
  double tol_direction = kDefaultDirectionTol;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "Mesh file (.obj/.off)")->required();
    app->add_option("--output,-o", output, "CSV file (default stdout)");
    app->add_option("--tol-direction", tol_direction,
                    "Relative |B| threshold below which no direction is given")
        ->capture_default_str();
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    const TriMesh mesh = load_mesh(input);
    const auto field = curvature_field(mesh, tol_direction);
    Sink sink(output, out);
    *sink << "vertex,Bx,By,Bz,magnitude,near_minimal,boundary\n";
    bool failed = false;
    for (const auto& rec : field) {
      *sink << rec.vertex << ',';
      if (rec.status == VertexStatus::Ok) {
        *sink << csv(rec.sample.B) << ',' << format_real(rec.sample.magnitude)
              << ',' << (rec.sample.near_minimal ? 1 : 0) << ",0\n";
      } else {
        *sink << "nan,nan,nan,nan,0," << (rec.status == VertexStatus::Boundary ? 1 : 0)
              << '\n';
      }
      if (rec.status == VertexStatus::Error) {
        err << "curvature: vertex " << rec.vertex << ": " << rec.error << '\n';
        failed = true;
      }
    }
    sink.finish();
    return failed ? kInvalid : kOk;
  }
};

struct GradcheckCommand {
  std::string input;
  std::string output;
  double h = 1e-5;
  double max_rel_err = 1e-6;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "Mesh file (.obj/.off)")->required();
    app->add_option("--output,-o", output, "CSV file (default stdout)");
    app->add_option("--fd-step", h, "Central-difference step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--max-rel-err", max_rel_err,
                    "Exit 2 when any vertex exceeds this")
        ->capture_default_str();
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    const TriMesh mesh = load_mesh(input);
    const VertexFaces adj = incident_faces(mesh);
    Sink sink(output, out);
    *sink << "vertex,analytic_x,analytic_y,analytic_z,fd_x,fd_y,fd_z,rel_err\n";
    double worst = 0.0;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      if (adj[static_cast<std::size_t>(v)].empty()) continue;
      const Vec3 analytic = area_gradient(mesh, adj, v);
      TriMesh probe = mesh;
      const Vec3 fd = central_gradient(
          [&](const Vec3& x) {
            probe.positions.row(v) = x.transpose();
            return total_area(probe);
          },
          mesh.vertex(v), h);
      // Relative to the gradient's natural size, half the opposite-edge
      // perimeter, so flat stationary vertices are not measured against 0.
      const double scale = 0.5 * build_star(mesh, adj, v).total_opposite_length();
      const double rel = (analytic - fd).norm() /
                         std::max({analytic.norm(), fd.norm(), scale});
      worst = std::max(worst, rel);
      *sink << v << ',' << csv(analytic) << ',' << csv(fd) << ','
            << format_real(rel) << '\n';
    }
    sink.finish();
    if (!(worst <= max_rel_err)) {
      err << "gradcheck: worst rel_err " << format_real(worst)
          << " exceeds --max-rel-err " << format_real(max_rel_err) << '\n';
      return kCheckFailed;
    }
    return kOk;
  }
};

struct LaplacianCommand {
  std::string input;
  std::string field_path;
  std::string output;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "Mesh file (.obj/.off)")->required();
    app->add_option("--field,-f", field_path, "vertex,value CSV")->required();
    app->add_option("--output,-o", output, "CSV file (default stdout)");
  }

  int operator()(std::ostream& out, std::ostream&) const {
    const TriMesh mesh = load_mesh(input);
    const ScalarField field =
        parse_scalar_field(read_file(field_path), mesh.num_vertices());
    const VertexFaces adj = incident_faces(mesh);
    Sink sink(output, out);
    *sink << "vertex,L\n";
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      *sink << v << ',';
      if (adj[static_cast<std::size_t>(v)].empty() ||
          build_star(mesh, adj, v).is_boundary) {
        *sink << "nan\n";
      } else {
        *sink << format_real(laplacian(mesh, adj, v, field)) << '\n';
      }
    }
    sink.finish();
    return kOk;
  }
};

struct MakeCommand {
  std::string primitive;
  int n = 8;
  int level = 2;
  double R = 1.0;
  double L = 1.0;
  double c = 1.0;
  int n_u = 32;
  int n_v = 8;
  std::string output;
  std::string format;

  void add(CLI::App* app) {
    app->add_option("--primitive", primitive, "Mesh to generate")
        ->required()
        ->check(CLI::IsMember({"grid", "icosphere", "tube", "catenoid"}));
    app->add_option("--n", n, "Grid resolution")->check(CLI::Range(1, 4096))->capture_default_str();
    app->add_option("--level", level, "Icosphere subdivision level")
        ->check(CLI::Range(0, 6))
        ->capture_default_str();
    app->add_option("--R", R, "Icosphere/tube radius")->capture_default_str();
    app->add_option("--L", L, "Tube length")->capture_default_str();
    app->add_option("--c", c, "Catenoid neck radius")->capture_default_str();
    app->add_option("--nu", n_u, "Segments around the axis")->capture_default_str();
    app->add_option("--nv", n_v, "Segments along the axis")->capture_default_str();
    app->add_option("--output,-o", output, "Mesh file (.obj/.off)")->required();
    app->add_option("--format", format, "Override the extension")
        ->check(CLI::IsMember({"obj", "off"}));
  }

  int operator()(std::ostream&, std::ostream&) const {
    PrimitiveSpec spec;
    if (primitive == "grid") {
      spec = GridSpec{n};
    } else if (primitive == "icosphere") {
      spec = IcosphereSpec{level, R};
    } else if (primitive == "tube") {
      spec = TubeSpec{R, L, n_u, n_v};
    } else {
      spec = CatenoidMeshSpec{c, n_u, n_v};
    }
    std::optional<MeshFormat> fmt;
    if (!format.empty()) fmt = format == "obj" ? MeshFormat::Obj : MeshFormat::Off;
    save_mesh(output, make_primitive(spec), fmt);
    return kOk;
  }
};

struct FlowCommand {
  std::string input;
  double dt = 1e-3;
  int steps = 100;
  std::string output;
  std::string mesh_output;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "Closed mesh file (.obj/.off)")->required();
    app->add_option("--dt", dt, "Explicit Euler time step")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--steps", steps, "Maximum number of steps")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--output,-o", output, "Trace CSV (default stdout)");
    app->add_option("--mesh-output", mesh_output, "Write the final mesh here");
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    const TriMesh mesh = load_mesh(input);
    const FlowResult res = run_flow(mesh, dt, steps);
    Sink sink(output, out);
    *sink << "step,area,max_B,min_tri_area\n";
    for (const auto& r : res.trace.steps) {
      *sink << r.step << ',' << format_real(r.area) << ',' << format_real(r.max_B)
            << ',' << format_real(r.min_triangle_area) << '\n';
    }
    sink.finish();
    if (res.trace.stop != FlowStop::MaxSteps) {
      err << "flow: stopped early (" << stop_name(res.trace.stop)
          << "): " << res.trace.stop_message << '\n';
    }
    if (!mesh_output.empty()) save_mesh(mesh_output, res.mesh);
    return kOk;
  }
};

}  // namespace

ScalarField parse_scalar_field(std::string_view text, int num_vertices) {
  ScalarField field;
  field.values = Eigen::VectorXd::Constant(num_vertices,
                                           std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> seen(static_cast<std::size_t>(num_vertices), false);
  std::size_t line = 0;
  std::size_t pos = 0;
  bool first_content = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ')) row.remove_suffix(1);
    while (!row.empty() && row.front() == ' ') row.remove_prefix(1);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected two comma-separated columns", line);
    }
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    const std::string_view a = trim(row.substr(0, comma));
    const std::string_view b = trim(row.substr(comma + 1));
    long vertex = 0;
    const auto [pa, ea] = std::from_chars(a.data(), a.data() + a.size(), vertex);
    const bool vertex_ok = ea == std::errc() && pa == a.data() + a.size();
    if (!vertex_ok && first_content) {
      first_content = false;  // header row
      continue;
    }
    first_content = false;
    if (!vertex_ok) throw ParseError("bad vertex index '" + std::string(a) + "'", line);
    double value = 0.0;
    const auto [pb, eb] = std::from_chars(b.data(), b.data() + b.size(), value);
    if (eb != std::errc() || pb != b.data() + b.size() || !std::isfinite(value)) {
      throw ParseError("bad field value '" + std::string(b) + "'", line);
    }
    if (vertex < 0 || vertex >= num_vertices) {
      throw ParseError("vertex " + std::to_string(vertex) + " out of range", line);
    }
    if (seen[static_cast<std::size_t>(vertex)]) {
      throw ParseError("vertex " + std::to_string(vertex) + " listed twice", line);
    }
    seen[static_cast<std::size_t>(vertex)] = true;
    field.values[vertex] = value;
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("field has no value for vertex " + std::to_string(v));
    }
  }
  return field;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Vector mean curvature: contour identities on analytic "
               "surfaces and the discrete star formula on triangle meshes"};
  app.name("meancurv");
  app.require_subcommand(1);

  VerifyCommand verify;
  LimitCommand limit;
  CurvatureCommand curvature;
  GradcheckCommand gradcheck;
  LaplacianCommand lap;
  MakeCommand make;
  FlowCommand flow;

  std::map<CLI::App*, std::function<int()>> handlers;
  auto reg = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd.add(sub);
    handlers[sub] = [&cmd, &out, &err] { return cmd(out, err); };
  };
  reg("verify", "Compare the patch integral of N H with the boundary integral of n", verify);
  reg("limit", "Shrinking-disk estimates of N H", limit);
  reg("curvature", "Per-vertex vector mean curvature", curvature);
  reg("gradcheck", "Analytic area gradient against central differences", gradcheck);
  reg("laplacian", "Per-vertex surface Laplacian of a scalar field", lap);
  reg("make", "Generate a primitive mesh", make);
  reg("flow", "Explicit mean curvature flow trace", flow);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) return handlers.at(sub)();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

int run(const std::vector<std::string>& args) {
  return run(args, std::cout, std::cerr);
}

}  // namespace meancurv::cli
