#include "meancurv/trimesh.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include <Eigen/Geometry>

namespace meancurv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Tokenizing

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Non-empty lines with '#' comments stripped.
std::vector<Line> content_lines(std::string_view text, std::size_t* last_line) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    auto tokens = split_ws(raw);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  *last_line = number;
  return lines;
}

double parse_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite coordinate '" + std::string(tok) + "'", line);
  }
  return value;
}

long parse_integer(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'",
                     line);
  }
  return value;
}

struct RawFace {
  std::array<int, 3> v;
  std::size_t line;
};

void fan(const std::vector<int>& poly, std::size_t line,
         std::vector<RawFace>& faces) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    faces.push_back({{poly[0], poly[k], poly[k + 1]}, line});
  }
}

TriMesh assemble(const std::vector<Vec3>& verts,
                 const std::vector<RawFace>& faces) {
  TriMesh mesh;
  mesh.positions.resize(static_cast<Eigen::Index>(verts.size()), 3);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    mesh.positions.row(static_cast<Eigen::Index>(i)) = verts[i].transpose();
  }
  mesh.faces.resize(static_cast<Eigen::Index>(faces.size()), 3);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const int idx = faces[f].v[k];
      if (idx < 0 || idx >= static_cast<int>(verts.size())) {
        throw ValidationError("line " + std::to_string(faces[f].line) +
                              ": face " + std::to_string(f) + " index " +
                              std::to_string(idx) + " out of range [0, " +
                              std::to_string(verts.size()) + ")");
      }
      mesh.faces(static_cast<Eigen::Index>(f), k) = idx;
    }
  }
  validate(mesh);
  return mesh;
}

TriMesh parse_obj(std::string_view text) {
  std::size_t last = 0;
  std::vector<Vec3> verts;
  std::vector<RawFace> faces;
  for (const Line& ln : content_lines(text, &last)) {
    const std::string_view key = ln.tokens[0];
    if (key == "v") {
      if (ln.tokens.size() < 4) {
        throw ParseError("vertex record needs three coordinates", ln.number);
      }
      Vec3 p;
      for (std::size_t k = 1; k < ln.tokens.size(); ++k) {
        const double x = parse_real(ln.tokens[k], ln.number);
        if (k <= 3) p[static_cast<int>(k - 1)] = x;
      }
      verts.push_back(p);
    } else if (key == "f") {
      if (ln.tokens.size() < 4) {
        throw ParseError("face record needs at least three vertices",
                         ln.number);
      }
      std::vector<int> poly;
      for (std::size_t k = 1; k < ln.tokens.size(); ++k) {
        const std::string_view ref = ln.tokens[k];
        if (std::count(ref.begin(), ref.end(), '/') > 2) {
          throw ParseError("malformed face reference '" + std::string(ref) + "'",
                           ln.number);
        }
        const std::string_view head = ref.substr(0, ref.find('/'));
        const long idx = parse_integer(head, ln.number);
        if (idx == 0) {
          throw ParseError("face index 0 is invalid (indices are 1-based)",
                           ln.number);
        }
        // Negative indices count back from the most recent vertex.
        const long resolved =
            idx > 0 ? idx - 1 : static_cast<long>(verts.size()) + idx;
        poly.push_back(static_cast<int>(resolved));
      }
      fan(poly, ln.number, faces);
    } else if (key == "vt" || key == "vn" || key == "vp" || key == "o" ||
               key == "g" || key == "s" || key == "usemtl" ||
               key == "mtllib" || key == "l" || key == "p") {
      continue;
    } else {
      throw ParseError("unknown record '" + std::string(key) + "'", ln.number);
    }
  }
  return assemble(verts, faces);
}

TriMesh parse_off(std::string_view text) {
  std::size_t last = 0;
  const std::vector<Line> lines = content_lines(text, &last);
  std::size_t cursor = 0;
  auto next = [&](const char* expecting) -> const Line& {
    if (cursor >= lines.size()) {
      throw ParseError(std::string("unexpected end of file, expected ") +
                           expecting,
                       last + 1);
    }
    return lines[cursor++];
  };

  const Line& header = next("OFF header");
  if (header.tokens[0] != "OFF") {
    throw ParseError("missing OFF header", header.number);
  }
  std::vector<std::string_view> counts(header.tokens.begin() + 1,
                                       header.tokens.end());
  std::size_t counts_line = header.number;
  if (counts.empty()) {
    const Line& c = next("vertex/face counts");
    counts = c.tokens;
    counts_line = c.number;
  }
  if (counts.size() < 2 || counts.size() > 3) {
    throw ParseError("count line must hold 'V F [E]'", counts_line);
  }
  const long nv = parse_integer(counts[0], counts_line);
  const long nf = parse_integer(counts[1], counts_line);
  if (counts.size() == 3) parse_integer(counts[2], counts_line);
  if (nv < 0 || nf < 0) throw ParseError("negative element count", counts_line);

  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    const Line& ln = next("vertex coordinates");
    if (ln.tokens.size() < 3) {
      throw ParseError("vertex line needs three coordinates", ln.number);
    }
    Vec3 p;
    for (std::size_t k = 0; k < ln.tokens.size(); ++k) {
      const double x = parse_real(ln.tokens[k], ln.number);
      if (k < 3) p[static_cast<int>(k)] = x;
    }
    verts.push_back(p);
  }

  std::vector<RawFace> faces;
  for (long f = 0; f < nf; ++f) {
    const Line& ln = next("polygon");
    const long k = parse_integer(ln.tokens[0], ln.number);
    if (k < 3) throw ParseError("polygon needs at least three vertices", ln.number);
    if (static_cast<long>(ln.tokens.size()) < k + 1) {
      throw ParseError("polygon declares " + std::to_string(k) +
                           " vertices but lists fewer",
                       ln.number);
    }
    std::vector<int> poly;
    for (long j = 1; j <= k; ++j) {
      const long idx = parse_integer(ln.tokens[static_cast<std::size_t>(j)], ln.number);
      if (idx < 0 || idx >= nv) {
        throw ValidationError("line " + std::to_string(ln.number) +
                              ": polygon index " + std::to_string(idx) +
                              " out of range [0, " + std::to_string(nv) + ")");
      }
      poly.push_back(static_cast<int>(idx));
    }
    // Trailing color values.
    for (std::size_t j = static_cast<std::size_t>(k) + 1; j < ln.tokens.size(); ++j) {
      parse_real(ln.tokens[j], ln.number);
    }
    fan(poly, ln.number, faces);
  }
  if (cursor < lines.size()) {
    throw ParseError("unexpected data after the last polygon",
                     lines[cursor].number);
  }
  return assemble(verts, faces);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const TriMesh& mesh, bool allow_degenerate) {
  const int nv = mesh.num_vertices();
  if (!mesh.positions.allFinite()) {
    throw ValidationError("mesh has non-finite vertex coordinates");
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const auto row = mesh.faces.row(f);
    for (int k = 0; k < 3; ++k) {
      if (row(k) < 0 || row(k) >= nv) {
        throw ValidationError("face " + std::to_string(f) + " index " +
                              std::to_string(row(k)) + " out of range");
      }
    }
    if (row(0) == row(1) || row(1) == row(2) || row(0) == row(2)) {
      throw ValidationError("face " + std::to_string(f) +
                            " repeats a vertex");
    }
    if (!allow_degenerate && !(triangle_area(mesh, f) >= kMinTriangleArea)) {
      throw ValidationError("face " + std::to_string(f) + " has zero area");
    }
  }
}

double triangle_area(const TriMesh& mesh, int face) {
  const auto f = mesh.faces.row(face);
  const Vec3 a = mesh.vertex(f(0));
  return 0.5 * (mesh.vertex(f(1)) - a).cross(mesh.vertex(f(2)) - a).norm();
}

double total_area(const TriMesh& mesh) {
  double sum = 0.0;
  for (int f = 0; f < mesh.num_faces(); ++f) sum += triangle_area(mesh, f);
  return sum;
}

double min_triangle_area(const TriMesh& mesh) {
  double m = std::numeric_limits<double>::infinity();
  for (int f = 0; f < mesh.num_faces(); ++f) {
    m = std::min(m, triangle_area(mesh, f));
  }
  return m;
}

MeshFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return MeshFormat::Obj;
  if (ext == ".off") return MeshFormat::Off;
  throw ValidationError("cannot infer mesh format from '" + path.string() +
                        "' (expected .obj or .off)");
}

std::string_view format_name(MeshFormat format) {
  return format == MeshFormat::Obj ? "obj" : "off";
}

TriMesh parse_mesh(std::string_view text, MeshFormat format) {
  return format == MeshFormat::Obj ? parse_obj(text) : parse_off(text);
}

TriMesh read_mesh(std::istream& in, MeshFormat format) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mesh(buf.str(), format);
}

TriMesh load_mesh(const std::filesystem::path& path,
                  std::optional<MeshFormat> format) {
  const MeshFormat fmt = format ? *format : format_from_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_mesh(in, fmt);
}

void write_mesh(std::ostream& out, const TriMesh& mesh, MeshFormat format) {
  if (format == MeshFormat::Off) {
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
    for (int i = 0; i < mesh.num_vertices(); ++i) {
      out << format_real(mesh.positions(i, 0)) << ' '
          << format_real(mesh.positions(i, 1)) << ' '
          << format_real(mesh.positions(i, 2)) << '\n';
    }
    for (int f = 0; f < mesh.num_faces(); ++f) {
      out << "3 " << mesh.faces(f, 0) << ' ' << mesh.faces(f, 1) << ' '
          << mesh.faces(f, 2) << '\n';
    }
  } else {
    for (int i = 0; i < mesh.num_vertices(); ++i) {
      out << "v " << format_real(mesh.positions(i, 0)) << ' '
          << format_real(mesh.positions(i, 1)) << ' '
          << format_real(mesh.positions(i, 2)) << '\n';
    }
    for (int f = 0; f < mesh.num_faces(); ++f) {
      out << "f " << mesh.faces(f, 0) + 1 << ' ' << mesh.faces(f, 1) + 1 << ' '
          << mesh.faces(f, 2) + 1 << '\n';
    }
  }
}

std::string save_mesh(const TriMesh& mesh, MeshFormat format) {
  std::ostringstream out;
  write_mesh(out, mesh, format);
  return out.str();
}

void save_mesh(const std::filesystem::path& path, const TriMesh& mesh,
               std::optional<MeshFormat> format) {
  const MeshFormat fmt = format ? *format : format_from_path(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_mesh(out, mesh, fmt);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Primitives

TriMesh make_grid(int n) {
  if (n < 1) throw ValidationError("grid resolution must be >= 1");
  TriMesh m;
  const int side = n + 1;
  m.positions.resize(side * side, 3);
  for (int j = 0; j < side; ++j) {
    for (int i = 0; i < side; ++i) {
      m.positions.row(j * side + i) << double(i) / n, double(j) / n, 0.0;
    }
  }
  m.faces.resize(2 * n * n, 3);
  int f = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * side + i, b = a + 1, c = a + side + 1, d = a + side;
      m.faces.row(f++) << a, b, c;
      m.faces.row(f++) << a, c, d;
    }
  }
  return m;
}

TriMesh make_icosphere(int level, double R) {
  if (level < 0 || level > 6) {
    throw ValidationError("icosphere level must lie in [0, 6]");
  }
  if (!(R > 0.0)) throw ValidationError("icosphere radius must be > 0");
  const double t = std::numbers::phi;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoints;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto [it, inserted] = midpoints.try_emplace({key.first, key.second}, 0);
      if (inserted) {
        verts.push_back((verts[a] + verts[b]).normalized());
        it->second = static_cast<int>(verts.size()) - 1;
      }
      return it->second;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& [a, b, c] : faces) {
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      refined.push_back({a, ab, ca});
      refined.push_back({b, bc, ab});
      refined.push_back({c, ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }
  TriMesh m;
  m.positions.resize(static_cast<Eigen::Index>(verts.size()), 3);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    m.positions.row(static_cast<Eigen::Index>(i)) = R * verts[i].transpose();
  }
  m.faces.resize(static_cast<Eigen::Index>(faces.size()), 3);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    m.faces.row(static_cast<Eigen::Index>(f)) << faces[f][0], faces[f][1],
        faces[f][2];
  }
  return m;
}

namespace {

// Periodic-in-u band; profile(s) returns (radius, height) for s in [0, 1].
template <typename Profile>
TriMesh revolve_band(int n_u, int n_v, Profile&& profile) {
  TriMesh m;
  m.positions.resize(n_u * (n_v + 1), 3);
  for (int j = 0; j <= n_v; ++j) {
    const auto [rho, z] = profile(double(j) / n_v);
    for (int i = 0; i < n_u; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / n_u;
      m.positions.row(j * n_u + i) << rho * std::cos(phi), rho * std::sin(phi),
          z;
    }
  }
  m.faces.resize(2 * n_u * n_v, 3);
  int f = 0;
  for (int j = 0; j < n_v; ++j) {
    for (int i = 0; i < n_u; ++i) {
      const int a = j * n_u + i;
      const int b = j * n_u + (i + 1) % n_u;
      const int c = b + n_u;
      const int d = a + n_u;
      m.faces.row(f++) << a, b, c;
      m.faces.row(f++) << a, c, d;
    }
  }
  return m;
}

}  // namespace

TriMesh make_tube(double R, double L, int n_u, int n_v) {
  if (!(R > 0.0) || !(L > 0.0)) throw ValidationError("tube R and L must be > 0");
  if (n_u < 3 || n_v < 1) {
    throw ValidationError("tube needs n_u >= 3 and n_v >= 1");
  }
  return revolve_band(n_u, n_v, [&](double s) {
    return std::pair{R, L * s};
  });
}

TriMesh make_catenoid_mesh(double c, int n_u, int n_v) {
  if (!(c > 0.0)) throw ValidationError("catenoid c must be > 0");
  if (n_u < 3 || n_v < 1) {
    throw ValidationError("catenoid mesh needs n_u >= 3 and n_v >= 1");
  }
  return revolve_band(n_u, n_v, [&](double s) {
    const double z = -1.0 + 2.0 * s;
    return std::pair{c * std::cosh(z / c), z};
  });
}

TriMesh make_primitive(const PrimitiveSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GridSpec& g) { return make_grid(g.n); },
          [](const IcosphereSpec& s) { return make_icosphere(s.level, s.R); },
          [](const TubeSpec& t) { return make_tube(t.R, t.L, t.n_u, t.n_v); },
          [](const CatenoidMeshSpec& c) {
            return make_catenoid_mesh(c.c, c.n_u, c.n_v);
          }},
      spec);
}

// ---------------------------------------------------------------------------
// Stars

VertexFaces incident_faces(const TriMesh& mesh) {
  VertexFaces adj(static_cast<std::size_t>(mesh.num_vertices()));
  for (int f = 0; f < mesh.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) adj[mesh.faces(f, k)].push_back(f);
  }
  return adj;
}

double VertexStar::total_area() const {
  double s = 0.0;
  for (const auto& e : ring) s += e.area;
  return s;
}

double VertexStar::total_opposite_length() const {
  double s = 0.0;
  for (const auto& e : ring) s += e.opposite_length;
  return s;
}

namespace {

bool single_closed_loop(const std::vector<StarEntry>& ring) {
  std::unordered_map<int, std::vector<int>> nbrs;
  for (const auto& e : ring) {
    nbrs[e.edge_from].push_back(e.edge_to);
    nbrs[e.edge_to].push_back(e.edge_from);
  }
  for (const auto& [v, list] : nbrs) {
    if (list.size() != 2) return false;
  }
  // Walk the cycle and confirm it visits every vertex.
  const int start = ring.front().edge_from;
  int prev = start;
  int cur = ring.front().edge_to;
  std::size_t visited = 1;
  while (cur != start) {
    const auto& l = nbrs[cur];
    const int nxt = l[0] == prev ? l[1] : l[0];
    prev = cur;
    cur = nxt;
    if (++visited > nbrs.size()) return false;
  }
  return visited == nbrs.size();
}

}  // namespace

VertexStar build_star(const TriMesh& mesh, const VertexFaces& adjacency,
                      int v) {
  if (v < 0 || v >= mesh.num_vertices()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  const auto& faces = adjacency[static_cast<std::size_t>(v)];
  if (faces.empty()) {
    throw ValidationError("vertex " + std::to_string(v) +
                          " has no incident faces");
  }
  VertexStar star;
  star.center = v;
  const Vec3 o = mesh.vertex(v);
  for (int f : faces) {
    const auto row = mesh.faces.row(f);
    const int k = row(0) == v ? 0 : (row(1) == v ? 1 : 2);
    StarEntry e;
    e.triangle = f;
    e.edge_from = row((k + 1) % 3);
    e.edge_to = row((k + 2) % 3);
    const Vec3 p = mesh.vertex(e.edge_from);
    const Vec3 q = mesh.vertex(e.edge_to);
    e.area = 0.5 * (p - o).cross(q - o).norm();
    if (!(e.area >= kMinTriangleArea)) {
      throw ValidationError("face " + std::to_string(f) + " incident to vertex " +
                            std::to_string(v) + " is degenerate");
    }
    const Vec3 edge = q - p;
    e.opposite_length = edge.norm();
    const Vec3 unit_edge = edge / e.opposite_length;
    const Vec3 w = (p - o) - (p - o).dot(unit_edge) * unit_edge;
    e.normal = w.normalized();
    star.ring.push_back(e);
  }
  star.is_boundary = !single_closed_loop(star.ring);
  return star;
}

VertexStar build_star(const TriMesh& mesh, int v) {
  if (v < 0 || v >= mesh.num_vertices()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  VertexFaces adj(static_cast<std::size_t>(mesh.num_vertices()));
  for (int f = 0; f < mesh.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (mesh.faces(f, k) == v) adj[v].push_back(f);
    }
  }
  return build_star(mesh, adj, v);
}

}  // namespace meancurv
