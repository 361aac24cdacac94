#include "meancurv/discrete.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace meancurv {

void ScalarField::check(const TriMesh& mesh) const {
  if (values.size() != mesh.num_vertices()) {
    throw ValidationError("scalar field has " + std::to_string(values.size()) +
                          " values for " + std::to_string(mesh.num_vertices()) +
                          " vertices");
  }
  if (!values.allFinite()) {
    throw ValidationError("scalar field has non-finite values");
  }
}

CurvatureSample curvature_from_star(const VertexStar& star,
                                    double tol_direction) {
  CurvatureSample s;
  const double area = star.total_area();
  s.B = star_sum(star) / area;
  s.magnitude = s.B.norm();
  const double scale = star.total_opposite_length() / area;
  if (s.magnitude >= tol_direction * scale) {
    s.direction = s.B / s.magnitude;
  } else {
    s.near_minimal = true;
  }
  return s;
}

CurvatureSample vector_mean_curvature(const TriMesh& mesh,
                                      const VertexFaces& adjacency, int v,
                                      double tol_direction,
                                      bool allow_boundary) {
  const VertexStar star = build_star(mesh, adjacency, v);
  if (star.is_boundary && !allow_boundary) throw BoundaryUnsupportedError(v);
  return curvature_from_star(star, tol_direction);
}

CurvatureSample vector_mean_curvature(const TriMesh& mesh, int v,
                                      double tol_direction,
                                      bool allow_boundary) {
  const VertexStar star = build_star(mesh, v);
  if (star.is_boundary && !allow_boundary) throw BoundaryUnsupportedError(v);
  return curvature_from_star(star, tol_direction);
}

Vec3 area_gradient(const TriMesh& mesh, const VertexFaces& adjacency, int v) {
  if (v < 0 || v >= mesh.num_vertices()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  Vec3 grad = Vec3::Zero();
  for (int f : adjacency[static_cast<std::size_t>(v)]) {
    const auto row = mesh.faces.row(f);
    const int k = row(0) == v ? 0 : (row(1) == v ? 1 : 2);
    const Vec3 o = mesh.vertex(v);
    const Vec3 p = mesh.vertex(row((k + 1) % 3));
    const Vec3 q = mesh.vertex(row((k + 2) % 3));
    const Vec3 cross = (p - o).cross(q - o);
    const double twice_area = cross.norm();
    if (!(0.5 * twice_area >= kMinTriangleArea)) {
      throw ValidationError("face " + std::to_string(f) + " is degenerate");
    }
    grad += 0.5 * (cross / twice_area).cross(q - p);
  }
  return grad;
}

Vec3 area_gradient(const TriMesh& mesh, int v) {
  return area_gradient(mesh, incident_faces(mesh), v);
}

Vec3 star_sum(const VertexStar& star) {
  Vec3 sum = Vec3::Zero();
  for (const auto& e : star.ring) sum += e.opposite_length * e.normal;
  return sum;
}

Vec3 star_sum(const TriMesh& mesh, int v) { return star_sum(build_star(mesh, v)); }

Vec3 face_gradient(const TriMesh& mesh, int face, const ScalarField& field) {
  const auto row = mesh.faces.row(face);
  const Vec3 x0 = mesh.vertex(row(0));
  const Vec3 x1 = mesh.vertex(row(1));
  const Vec3 x2 = mesh.vertex(row(2));
  const Vec3 cross = (x1 - x0).cross(x2 - x0);
  const double twice_area = cross.norm();
  const Vec3 normal = cross / twice_area;
  // grad(phi_k) = N x e_k / 2A with e_k the edge opposite corner k, taken
  // counterclockwise.
  return (field.values[row(0)] * normal.cross(x2 - x1) +
          field.values[row(1)] * normal.cross(x0 - x2) +
          field.values[row(2)] * normal.cross(x1 - x0)) /
         twice_area;
}

double laplacian(const TriMesh& mesh, const VertexFaces& adjacency, int v,
                 const ScalarField& field, bool allow_boundary) {
  field.check(mesh);
  const VertexStar star = build_star(mesh, adjacency, v);
  if (star.is_boundary && !allow_boundary) throw BoundaryUnsupportedError(v);
  double flux = 0.0;
  for (const auto& e : star.ring) {
    flux += e.opposite_length * face_gradient(mesh, e.triangle, field).dot(e.normal);
  }
  return flux / star.total_area();
}

double laplacian(const TriMesh& mesh, int v, const ScalarField& field,
                 bool allow_boundary) {
  return laplacian(mesh, incident_faces(mesh), v, field, allow_boundary);
}

std::vector<VertexCurvature> curvature_field(const TriMesh& mesh,
                                             double tol_direction) {
  const VertexFaces adj = incident_faces(mesh);
  std::vector<VertexCurvature> out(static_cast<std::size_t>(mesh.num_vertices()));
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    auto& rec = out[static_cast<std::size_t>(v)];
    rec.vertex = v;
    try {
      const VertexStar star = build_star(mesh, adj, v);
      if (star.is_boundary) {
        rec.status = VertexStatus::Boundary;
        continue;
      }
      rec.sample = curvature_from_star(star, tol_direction);
    } catch (const Error& e) {
      rec.status = VertexStatus::Error;
      rec.error = e.what();
    }
  }
  return out;
}

}  // namespace meancurv
