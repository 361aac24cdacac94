#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "meancurv/numcore.hpp"

namespace meancurv {

using Positions = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using Faces = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

inline constexpr double kMinTriangleArea = 1e-14;

/// Indexed triangle mesh. Faces are counterclockwise seen from outside on
/// oriented primitives.
struct TriMesh {
  Positions positions;
  Faces faces;

  int num_vertices() const { return static_cast<int>(positions.rows()); }
  int num_faces() const { return static_cast<int>(faces.rows()); }
  Vec3 vertex(int i) const { return positions.row(i).transpose(); }
};

/// Throws ValidationError on out-of-range or repeated indices and, unless
/// allowed, on faces with area below kMinTriangleArea.
void validate(const TriMesh& mesh, bool allow_degenerate = false);

double triangle_area(const TriMesh& mesh, int face);
double total_area(const TriMesh& mesh);
double min_triangle_area(const TriMesh& mesh);

// ---------------------------------------------------------------------------
// File formats

enum class MeshFormat { Obj, Off };

/// From the extension (.obj / .off, case-insensitive).
MeshFormat format_from_path(const std::filesystem::path& path);
std::string_view format_name(MeshFormat format);

TriMesh read_mesh(std::istream& in, MeshFormat format);
TriMesh parse_mesh(std::string_view text, MeshFormat format);
TriMesh load_mesh(const std::filesystem::path& path,
                  std::optional<MeshFormat> format = std::nullopt);

void write_mesh(std::ostream& out, const TriMesh& mesh, MeshFormat format);
std::string save_mesh(const TriMesh& mesh, MeshFormat format);
void save_mesh(const std::filesystem::path& path, const TriMesh& mesh,
               std::optional<MeshFormat> format = std::nullopt);

// ---------------------------------------------------------------------------
// Primitives

struct GridSpec {
  int n = 1;
};
struct IcosphereSpec {
  int level = 0;
  double R = 1.0;
};
/// Open cylinder of radius R along z in [0, L]; n_u segments around, n_v
/// along the axis.
struct TubeSpec {
  double R = 1.0;
  double L = 1.0;
  int n_u = 16;
  int n_v = 4;
};
/// Catenoid band s in [-1, 1].
struct CatenoidMeshSpec {
  double c = 1.0;
  int n_u = 32;
  int n_v = 8;
};

using PrimitiveSpec =
    std::variant<GridSpec, IcosphereSpec, TubeSpec, CatenoidMeshSpec>;

TriMesh make_primitive(const PrimitiveSpec& spec);
TriMesh make_grid(int n);
TriMesh make_icosphere(int level, double R = 1.0);
TriMesh make_tube(double R, double L, int n_u, int n_v);
TriMesh make_catenoid_mesh(double c, int n_u, int n_v);

// ---------------------------------------------------------------------------
// Vertex stars

/// Incident faces per vertex, in face order.
using VertexFaces = std::vector<std::vector<int>>;
VertexFaces incident_faces(const TriMesh& mesh);

struct StarEntry {
  int triangle = -1;
  int edge_from = -1;  ///< opposite edge, in the face's cyclic order
  int edge_to = -1;
  double area = 0.0;             ///< A_i
  double opposite_length = 0.0;  ///< a_i
  /// In-plane unit vector perpendicular to the opposite edge, pointing away
  /// from the center.
  Vec3 normal = Vec3::Zero();
};

struct VertexStar {
  int center = -1;
  std::vector<StarEntry> ring;
  /// True unless the opposite edges form exactly one closed loop.
  bool is_boundary = false;

  double total_area() const;
  double total_opposite_length() const;
};

VertexStar build_star(const TriMesh& mesh, int v);
VertexStar build_star(const TriMesh& mesh, const VertexFaces& adjacency, int v);

}  // namespace meancurv
