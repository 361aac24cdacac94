#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "meancurv/trimesh.hpp"

namespace meancurv {

/// Vector mean curvature at a mesh vertex,
///
///   B = sum_i a_i n_i / sum_i A_i
///
/// over the triangles T_i of the vertex star, with a_i the length of the
/// edge opposite the vertex and n_i the in-plane unit normal of that edge
/// pointing away from the vertex.
struct CurvatureSample {
  Vec3 B = Vec3::Zero();
  double magnitude = 0.0;
  /// Absent when |B| is too small for a meaningful direction.
  std::optional<Vec3> direction;
  bool near_minimal = false;
};

struct ScalarField {
  Eigen::VectorXd values;

  /// Throws ValidationError when the length or finiteness is wrong.
  void check(const TriMesh& mesh) const;
};

inline constexpr double kDefaultDirectionTol = 1e-8;

/// Throws BoundaryUnsupportedError on boundary stars unless allow_boundary.
CurvatureSample vector_mean_curvature(const TriMesh& mesh, int v,
                                      double tol_direction = kDefaultDirectionTol,
                                      bool allow_boundary = false);
CurvatureSample vector_mean_curvature(const TriMesh& mesh,
                                      const VertexFaces& adjacency, int v,
                                      double tol_direction = kDefaultDirectionTol,
                                      bool allow_boundary = false);

/// Sample built from a star; shared by the single-vertex and batch paths.
CurvatureSample curvature_from_star(const VertexStar& star,
                                    double tol_direction);

/// Gradient of total_area(mesh) with respect to the position of v, from the
/// per-triangle formula 1/2 N_T x (edge opposite v). Boundary vertices are
/// fine.
Vec3 area_gradient(const TriMesh& mesh, int v);
Vec3 area_gradient(const TriMesh& mesh, const VertexFaces& adjacency, int v);

/// sum_i a_i n_i. Equals -2 * area_gradient(v).
Vec3 star_sum(const TriMesh& mesh, int v);
Vec3 star_sum(const VertexStar& star);

/// Gradient of the linear interpolant of `field` on one face.
Vec3 face_gradient(const TriMesh& mesh, int face, const ScalarField& field);

/// sum_i a_i (g_i . n_i) / sum_i A_i with g_i the per-face gradient of the
/// linear interpolant.
double laplacian(const TriMesh& mesh, int v, const ScalarField& field,
                 bool allow_boundary = false);
double laplacian(const TriMesh& mesh, const VertexFaces& adjacency, int v,
                 const ScalarField& field, bool allow_boundary = false);

enum class VertexStatus { Ok, Boundary, Error };

struct VertexCurvature {
  int vertex = -1;
  VertexStatus status = VertexStatus::Ok;
  CurvatureSample sample;  ///< meaningful only when status == Ok
  std::string error;
};

/// One entry per vertex, in index order. Boundary vertices and per-vertex
/// failures become markers.
std::vector<VertexCurvature> curvature_field(
    const TriMesh& mesh, double tol_direction = kDefaultDirectionTol);

}  // namespace meancurv
