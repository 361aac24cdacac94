#include "meancurv/flow.hpp"

#include <cmath>

namespace meancurv {

namespace {

void check_dt(double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw ValidationError("flow time step must be finite and >= 0");
  }
}

FlowRecord measure(const TriMesh& mesh, const Positions& velocity, int step) {
  FlowRecord r;
  r.step = step;
  r.area = total_area(mesh);
  r.max_B = velocity.rowwise().norm().maxCoeff();
  r.min_triangle_area = min_triangle_area(mesh);
  return r;
}

TriMesh advance(const TriMesh& mesh, const Positions& velocity, double dt,
                int step) {
  TriMesh next = mesh;
  next.positions += dt * velocity;
  for (int f = 0; f < next.num_faces(); ++f) {
    const double a = triangle_area(next, f);
    if (!(a >= kMinTriangleArea)) {
      throw CollapseError("step " + std::to_string(step) + ": face " +
                              std::to_string(f) + " collapsed (area " +
                              std::to_string(a) + ")",
                          step, f, a);
    }
  }
  return next;
}

}  // namespace

Positions curvature_velocity(const TriMesh& mesh, const VertexFaces& adjacency) {
  Positions vel(mesh.num_vertices(), 3);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const VertexStar star = build_star(mesh, adjacency, v);
    if (star.is_boundary) {
      throw ValidationError("mean curvature flow requires a closed mesh; vertex " +
                            std::to_string(v) + " is on the boundary");
    }
    vel.row(v) = (star_sum(star) / star.total_area()).transpose();
  }
  return vel;
}

TriMesh mcf_step(const TriMesh& mesh, double dt, int step) {
  check_dt(dt);
  const Positions vel = curvature_velocity(mesh, incident_faces(mesh));
  return advance(mesh, vel, dt, step);
}

FlowResult run_flow(const TriMesh& mesh, double dt, int n_steps) {
  check_dt(dt);
  if (n_steps < 0) throw ValidationError("flow step count must be >= 0");
  const VertexFaces adj = incident_faces(mesh);
  FlowResult res;
  res.trace.dt = dt;
  res.mesh = mesh;
  Positions vel = curvature_velocity(mesh, adj);
  res.trace.steps.push_back(measure(mesh, vel, 0));
  for (int step = 1; step <= n_steps; ++step) {
    try {
      res.mesh = advance(res.mesh, vel, dt, step);
    } catch (const CollapseError& e) {
      res.trace.stop = FlowStop::Collapse;
      res.trace.stop_message = e.what();
      return res;
    }
    vel = curvature_velocity(res.mesh, adj);
    res.trace.steps.push_back(measure(res.mesh, vel, step));
    const double prev = res.trace.steps[res.trace.steps.size() - 2].area;
    if (res.trace.steps.back().area > prev) {
      res.trace.stop = FlowStop::AreaIncrease;
      res.trace.stop_message =
          "total area increased at step " + std::to_string(step);
      return res;
    }
  }
  return res;
}

double stable_time_step(const TriMesh& mesh, double dt0) {
  if (!(dt0 > 0.0)) throw ValidationError("probe time step must be > 0");
  const double area = total_area(mesh);
  const Positions vel = curvature_velocity(mesh, incident_faces(mesh));
  double dt = dt0;
  for (int k = 0; k < 60; ++k, dt *= 0.5) {
    try {
      if (total_area(advance(mesh, vel, dt, 1)) < area) return dt;
    } catch (const CollapseError&) {
    }
  }
  throw Error("no probe time step decreases the area");
}

std::string_view stop_name(FlowStop stop) {
  switch (stop) {
    case FlowStop::MaxSteps:
      return "max_steps";
    case FlowStop::Collapse:
      return "collapse";
    case FlowStop::AreaIncrease:
      return "area_increase";
  }
  return "unknown";
}

}  // namespace meancurv
