#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "meancurv/discrete.hpp"
#include "test_support.hpp"

using namespace meancurv;

namespace {

// Closed pyramid: apex on the z axis over a regular k-gon, base fanned from
// a center vertex.
TriMesh pyramid(int k, double rho, double h) {
  TriMesh m;
  m.positions.resize(k + 2, 3);
  for (int i = 0; i < k; ++i) {
    const double a = 2 * std::numbers::pi * i / k;
    m.positions.row(i) << rho * std::cos(a), rho * std::sin(a), 0;
  }
  m.positions.row(k) << 0, 0, h;   // apex
  m.positions.row(k + 1) << 0, 0, 0;
  m.faces.resize(2 * k, 3);
  for (int i = 0; i < k; ++i) {
    m.faces.row(i) << i, (i + 1) % k, k;
    m.faces.row(k + i) << (i + 1) % k, i, k + 1;
  }
  return m;
}

// Cotangent route: sum over star edges of (cot alpha + cot beta)(x_j - x_i),
// divided by the star area.
Vec3 cotangent_B(const TriMesh& m, int v) {
  Vec3 sum = Vec3::Zero();
  double area = 0.0;
  for (int f = 0; f < m.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (m.faces(f, k) != v) continue;
      const Vec3 o = m.vertex(v);
      const Vec3 p = m.vertex(m.faces(f, (k + 1) % 3));
      const Vec3 q = m.vertex(m.faces(f, (k + 2) % 3));
      auto cot = [](const Vec3& a, const Vec3& b) { return a.dot(b) / a.cross(b).norm(); };
      // Angle at q is opposite edge o-p, angle at p opposite edge o-q.
      sum += cot(o - q, p - q) * (p - o) + cot(o - p, q - p) * (q - o);
      area += 0.5 * (p - o).cross(q - o).norm();
    }
  }
  return sum / area;
}

std::vector<int> interior_vertices(const TriMesh& m) {
  std::vector<int> out;
  const VertexFaces adj = incident_faces(m);
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!adj[v].empty() && !build_star(m, adj, v).is_boundary) out.push_back(v);
  }
  return out;
}

ScalarField field_of(const TriMesh& m, const std::function<double(const Vec3&)>& f) {
  ScalarField s;
  s.values.resize(m.num_vertices());
  for (int i = 0; i < m.num_vertices(); ++i) s.values[i] = f(m.vertex(i));
  return s;
}

}  // namespace

TEST(VectorMeanCurvature, FlatGridIsZero) {
  const TriMesh g = make_grid(16);
  for (int v : interior_vertices(g)) {
    const CurvatureSample s = vector_mean_curvature(g, v);
    EXPECT_LE(s.magnitude, 1e-12 * 16);
    EXPECT_TRUE(s.near_minimal);
    EXPECT_FALSE(s.direction.has_value());
  }
}

TEST(VectorMeanCurvature, PyramidApexClosedForm) {
  // B = -2h / (rho^2 cos^2(pi/k) + h^2) along z for a regular k-gon apex.
  for (int k : {3, 4, 5, 6, 9}) {
    const double rho = 0.8, h = 0.35;
    const TriMesh m = pyramid(k, rho, h);
    const CurvatureSample s = vector_mean_curvature(m, k);
    const double c = std::cos(std::numbers::pi / k);
    EXPECT_LE(std::abs(s.B.x()), 1e-12);
    EXPECT_LE(std::abs(s.B.y()), 1e-12);
    EXPECT_NEAR(s.B.z(), -2 * h / (rho * rho * c * c + h * h), 1e-12);
    ASSERT_TRUE(s.direction.has_value());
    EXPECT_NEAR((*s.direction - Vec3(0, 0, -1)).norm(), 0.0, 1e-12);
  }
}

TEST(VectorMeanCurvature, AgreesWithCotangentRoute) {
  for (const TriMesh& m : meancurv::testing::random_meshes()) {
    for (int v : interior_vertices(m)) {
      const Vec3 b = vector_mean_curvature(m, v).B;
      EXPECT_LE((b - cotangent_B(m, v)).norm(), 1e-10 * (1.0 + b.norm()));
    }
  }
}

// On the unit icosphere B is normal and inward; its magnitude settles near
// 4/3 at valence-six vertices, two thirds of the continuum value 2.
TEST(VectorMeanCurvature, IcosphereDirectionAndMagnitude) {
  const TriMesh m = make_icosphere(4, 1.0);
  const VertexFaces adj = incident_faces(m);
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Vec3 n_out = m.vertex(v).normalized();
    const CurvatureSample s = vector_mean_curvature(m, adj, v);
    ASSERT_TRUE(s.direction.has_value());
    EXPECT_GT(s.direction->dot(-n_out), 0.999);
    const double bn = s.B.dot(n_out);
    if (adj[v].size() == 6) {
      EXPECT_NEAR(bn, -4.0 / 3.0, 0.01);
    } else {
      EXPECT_NEAR(bn, -1.0 / std::pow(std::cos(std::numbers::pi / 5), 2), 0.01);
    }
  }
}

TEST(VectorMeanCurvature, IcosphereErrorDecreasesWithLevel) {
  double prev = INFINITY;
  for (int level = 1; level <= 4; ++level) {
    const TriMesh m = make_icosphere(level, 1.0);
    double worst = 0.0;
    for (const auto& rec : curvature_field(m)) {
      worst = std::max(worst,
                       std::abs(rec.sample.B.dot(m.vertex(rec.vertex).normalized()) + 2.0));
    }
    EXPECT_LT(worst, prev);
    prev = worst;
  }
}

TEST(VectorMeanCurvature, BoundaryIsRefusedUnlessAllowed) {
  const TriMesh g = make_grid(3);
  EXPECT_THROW(vector_mean_curvature(g, 0), BoundaryUnsupportedError);
  EXPECT_NO_THROW(vector_mean_curvature(g, 0, kDefaultDirectionTol, true));
}

TEST(AreaGradient, Examples) {
  const TriMesh g = make_grid(6);
  for (int v : interior_vertices(g)) EXPECT_LE(area_gradient(g, v).norm(), 1e-15);
  TriMesh tri;
  tri.positions.resize(3, 3);
  tri.positions << 0, 0, 0, 1, 0, 0, 0, 1, 0;
  tri.faces.resize(1, 3);
  tri.faces << 0, 1, 2;
  EXPECT_NEAR((area_gradient(tri, 0) - Vec3(-0.5, -0.5, 0)).norm(), 0.0, 1e-15);
  const Vec3 fd = central_gradient(
      [&](const Vec3& x) {
        TriMesh t = tri;
        t.positions.row(0) = x.transpose();
        return total_area(t);
      },
      Vec3::Zero(), 1e-5);
  EXPECT_NEAR((fd - Vec3(-0.5, -0.5, 0)).norm(), 0.0, 1e-9);
}

TEST(AreaGradient, TwoTriangleSquareAgainstCentralDifferences) {
  const TriMesh sq = make_grid(1);
  for (int v = 0; v < 4; ++v) {
    TriMesh probe = sq;
    const Vec3 fd = central_gradient(
        [&](const Vec3& x) {
          probe.positions.row(v) = x.transpose();
          return total_area(probe);
        },
        sq.vertex(v), 1e-5);
    EXPECT_NEAR((fd - area_gradient(sq, v)).norm(), 0.0, 1e-7);
  }
}

TEST(AreaGradient, MatchesFiniteDifferenceOracle) {
  for (const TriMesh& m : meancurv::testing::random_meshes()) {
    const VertexFaces adj = incident_faces(m);
    for (int v = 0; v < m.num_vertices(); v += 3) {
      const Vec3 analytic = area_gradient(m, adj, v);
      TriMesh probe = m;
      const Vec3 fd = central_gradient(
          [&](const Vec3& x) {
            probe.positions.row(v) = x.transpose();
            return total_area(probe);
          },
          m.vertex(v), 1e-5);
      EXPECT_LE(relative_error(analytic, fd), 1e-6);
    }
  }
}

TEST(StarSum, IsMinusTwiceTheAreaGradient) {
  auto meshes = meancurv::testing::bundled_meshes();
  for (const TriMesh& m : meancurv::testing::random_meshes()) meshes.push_back(m);
  for (const TriMesh& m : meshes) {
    const VertexFaces adj = incident_faces(m);
    for (int v = 0; v < m.num_vertices(); ++v) {
      const Vec3 s = star_sum(build_star(m, adj, v));
      const Vec3 g = area_gradient(m, adj, v);
      EXPECT_LE((s + 2.0 * g).norm(), 1e-12 * std::max(s.norm(), 1e-300) + 1e-15);
    }
  }
}

TEST(StarSum, TranslationInvariance) {
  auto meshes = meancurv::testing::bundled_meshes();
  for (const TriMesh& m : meancurv::testing::random_meshes()) meshes.push_back(m);
  for (const TriMesh& m : meshes) {
    Vec3 total = Vec3::Zero();
    double scale = 0.0;
    const VertexFaces adj = incident_faces(m);
    for (int v = 0; v < m.num_vertices(); ++v) {
      for (const StarEntry& e : build_star(m, adj, v).ring) {
        total += e.opposite_length * e.normal;
        scale += e.opposite_length;
      }
    }
    EXPECT_LE(total.norm(), 1e-12 * scale);
  }
}

TEST(DiscreteProperty, RotationEquivariance) {
  for (int i = 0; i < 5; ++i) {
    const TriMesh m = meancurv::testing::perturbed(make_icosphere(2), 0.03, 400 + i);
    const Eigen::Matrix3d Q = meancurv::testing::random_rotation(500 + i);
    TriMesh r = m;
    r.positions = m.positions * Q.transpose();
    for (int v = 0; v < m.num_vertices(); v += 7) {
      const Vec3 b = vector_mean_curvature(m, v).B;
      EXPECT_LE((vector_mean_curvature(r, v).B - Q * b).norm(), 1e-10);
    }
  }
}

TEST(DiscreteProperty, ScaleCovariance) {
  const TriMesh m = meancurv::testing::perturbed(make_tube(1.0, 2.0, 12, 6), 0.05, 8);
  for (double s : {0.01, 0.5, 3.0, 250.0}) {
    TriMesh scaled = m;
    scaled.positions *= s;
    for (int v : interior_vertices(m)) {
      const Vec3 b = vector_mean_curvature(m, v).B;
      EXPECT_LE((vector_mean_curvature(scaled, v).B * s - b).norm(), 1e-10 * b.norm());
    }
  }
}

TEST(DiscreteProperty, PlanarMeshesHaveZeroCurvature) {
  // Arbitrary in-plane perturbation of a tilted grid.
  TriMesh m = make_grid(10);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.03, 0.03);
  const Eigen::Matrix3d Q = meancurv::testing::random_rotation(44);
  for (int i = 0; i < m.num_vertices(); ++i) {
    m.positions(i, 0) += u(rng);
    m.positions(i, 1) += u(rng);
  }
  m.positions = m.positions * Q.transpose();
  for (int v : interior_vertices(m)) {
    const VertexStar s = build_star(m, v);
    const double scale = s.total_opposite_length() / s.total_area();
    EXPECT_LE(vector_mean_curvature(m, v).B.norm(), 1e-12 * scale);
    EXPECT_LE(area_gradient(m, v).norm(), 1e-12 * s.total_opposite_length());
  }
}

TEST(Laplacian, AffineFieldsVanish) {
  const TriMesh g = make_grid(16);
  const ScalarField f = field_of(g, [](const Vec3& x) { return 3 * x.x() - 2 * x.y() + 7; });
  for (int v : interior_vertices(g)) EXPECT_NEAR(laplacian(g, v, f), 0.0, 1e-10);
}

// On the right-triangle grid the numerator is the five-point stencil times
// 2h^2 and the star area is 3h^2, so x^2 + y^2 gives exactly 8/3.
TEST(Laplacian, QuadraticOnGrid) {
  for (int n : {8, 32, 64}) {
    const TriMesh g = make_grid(n);
    const ScalarField f =
        field_of(g, [](const Vec3& x) { return x.x() * x.x() + x.y() * x.y(); });
    for (int v : interior_vertices(g)) {
      EXPECT_NEAR(laplacian(g, v, f), 8.0 / 3.0, 1e-8) << "n=" << n << " v=" << v;
    }
  }
}

TEST(Laplacian, CoordinateFieldsReproduceB) {
  for (const TriMesh& m : meancurv::testing::random_meshes()) {
    const VertexFaces adj = incident_faces(m);
    ScalarField fx, fy, fz;
    fx.values = m.positions.col(0);
    fy.values = m.positions.col(1);
    fz.values = m.positions.col(2);
    for (int v : interior_vertices(m)) {
      const Vec3 b = vector_mean_curvature(m, adj, v).B;
      const Vec3 l(laplacian(m, adj, v, fx), laplacian(m, adj, v, fy),
                   laplacian(m, adj, v, fz));
      EXPECT_LE((l - b).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, b.norm()));
    }
  }
}

TEST(Laplacian, Errors) {
  const TriMesh g = make_grid(3);
  ScalarField f;
  f.values = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(laplacian(g, 5, f), ValidationError);
  f.values = Eigen::VectorXd::Zero(16);
  EXPECT_THROW(laplacian(g, 0, f), BoundaryUnsupportedError);
  f.values[2] = NAN;
  EXPECT_THROW(laplacian(g, 5, f), ValidationError);
}

TEST(CurvatureField, GridMarksBoundary) {
  const auto field = curvature_field(make_grid(8));
  ASSERT_EQ(field.size(), 81u);
  int interior = 0, boundary = 0;
  for (const auto& r : field) {
    if (r.status == VertexStatus::Ok) {
      ++interior;
      EXPECT_TRUE(r.sample.near_minimal);
    } else if (r.status == VertexStatus::Boundary) {
      ++boundary;
    }
  }
  EXPECT_EQ(interior, 49);
  EXPECT_EQ(boundary, 32);
}

TEST(CurvatureField, ClosedAndOpenSurfaces) {
  const auto sphere = curvature_field(make_icosphere(2, 1.0));
  EXPECT_EQ(sphere.size(), 162u);
  for (const auto& r : sphere) EXPECT_EQ(r.status, VertexStatus::Ok);

  const TriMesh tube = make_tube(1.0, 1.0, 10, 4);
  const auto field = curvature_field(tube);
  for (const auto& r : field) {
    const bool on_rim = r.vertex < 10 || r.vertex >= 40;
    EXPECT_EQ(r.status == VertexStatus::Boundary, on_rim) << r.vertex;
  }
}

TEST(CurvatureField, IsolatedVertexBecomesErrorMarker) {
  TriMesh m = make_icosphere(0);
  m.positions.conservativeResize(13, 3);
  m.positions.row(12) << 3, 3, 3;
  const auto field = curvature_field(m);
  EXPECT_EQ(field[12].status, VertexStatus::Error);
  EXPECT_FALSE(field[12].error.empty());
}

TEST(NearMinimal, ThresholdIsRelative) {
  const TriMesh m = pyramid(4, 1.0, 1e-9);
  EXPECT_TRUE(vector_mean_curvature(m, 4, 1e-8).near_minimal);
  EXPECT_FALSE(vector_mean_curvature(m, 4, 1e-10).near_minimal);
  TriMesh big = m;
  big.positions *= 1000.0;
  EXPECT_TRUE(vector_mean_curvature(big, 4, 1e-8).near_minimal);
}
