#pragma once

#include <string>
#include <vector>

#include "meancurv/discrete.hpp"
#include "meancurv/trimesh.hpp"

namespace meancurv {

struct FlowRecord {
  int step = 0;
  double area = 0.0;
  double max_B = 0.0;
  double min_triangle_area = 0.0;
};

enum class FlowStop { MaxSteps, Collapse, AreaIncrease };

struct FlowTrace {
  double dt = 0.0;
  std::vector<FlowRecord> steps;  ///< step 0 is the initial mesh
  FlowStop stop = FlowStop::MaxSteps;
  std::string stop_message;
};

struct FlowResult {
  FlowTrace trace;
  TriMesh mesh;
};

/// Per-vertex displacement B(v) for a closed mesh. Throws ValidationError
/// when any star is open.
Positions curvature_velocity(const TriMesh& mesh, const VertexFaces& adjacency);

/// One explicit Euler step x_v += dt * B(v). Throws CollapseError when a
/// face drops below kMinTriangleArea; `step` only labels that error.
TriMesh mcf_step(const TriMesh& mesh, double dt, int step = 1);

/// Runs up to n_steps and stops early on collapse or area increase.
FlowResult run_flow(const TriMesh& mesh, double dt, int n_steps);

/// Largest dt = dt0 / 2^k whose single probe step decreases total area.
double stable_time_step(const TriMesh& mesh, double dt0 = 1e-2);

std::string_view stop_name(FlowStop stop);

}  // namespace meancurv
