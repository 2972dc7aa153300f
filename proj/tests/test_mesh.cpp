#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "heis/distance.hpp"
#include "heis/mesh.hpp"

namespace {

using heis::GeodesicSpec;
using heis::HeisPoint;
using heis::SphereGrid;
using heis::TriMesh;
using std::numbers::pi;

double gap(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

std::size_t edge_count(const TriMesh& m) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& f : m.faces)
    for (int k = 0; k < 3; ++k) {
      const auto a = f[k], b = f[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  return edges.size();
}

TEST(TriMesh, ValidateCatchesBrokenFaces) {
  TriMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  EXPECT_NO_THROW(m.validate());
  m.faces = {{0, 1, 3}};
  EXPECT_THROW(m.validate(), std::logic_error);
  m.faces = {{0, 1, 1}};
  EXPECT_THROW(m.validate(), std::logic_error);
  m.faces = {{0, 1, 2}};
  m.vertices[1][2] = std::nan("");
  EXPECT_THROW(m.validate(), std::logic_error);
  m.vertices[1][2] = 0.0;
  m.add_scalar("w").values = {1.0};
  EXPECT_THROW(m.validate(), std::logic_error);
}

TEST(Sphere, LayoutPolesAndTopology) {
  const SphereGrid grid{48, 25, 1.0};
  const TriMesh m = heis::sphere_exp_mesh(grid);
  ASSERT_NO_THROW(m.validate());
  EXPECT_EQ(m.vertices.size(), 23u * 48u + 2u);
  EXPECT_LT(gap(m.vertices.front(), {0, 0, -1}), 1e-15);
  EXPECT_LT(gap(m.vertices.back(), {0, 0, 1}), 1e-15);
  const auto v = static_cast<long>(m.vertices.size());
  const auto e = static_cast<long>(edge_count(m));
  const auto f = static_cast<long>(m.faces.size());
  EXPECT_EQ(v - e + f, 2);
  ASSERT_NE(m.scalar("gamma"), nullptr);
  ASSERT_NE(m.scalar("phi"), nullptr);
  ASSERT_NE(m.scalar("s"), nullptr);
  EXPECT_EQ(m.scalar("s")->values.size(), m.vertices.size());
}

TEST(Sphere, RadiusOneLiesOnMetricSphere) {
  const TriMesh m = heis::sphere_exp_mesh({64, 32, 1.0});
  for (const auto& v : m.vertices) {
    EXPECT_NEAR(heis::riemannian_distance({}, {v[0], v[1], v[2]}), 1.0, 1e-3);
  }
}

TEST(Sphere, SmallRadiusIsNearlyRound) {
  const double r = 0.01;
  const TriMesh m = heis::sphere_exp_mesh({32, 17, r});
  for (const auto& v : m.vertices) {
    EXPECT_LT(std::abs(std::hypot(v[0], v[1], v[2]) - r), 1e-3 * r);
  }
}

TEST(Sphere, RotationalSymmetry) {
  const SphereGrid grid{40, 21, 2.5};
  const heis::BandMesh band = heis::sphere_exp_band(grid);
  const double c = std::cos(2 * pi / grid.n_phi), s = std::sin(2 * pi / grid.n_phi);
  for (std::size_t row = 0; row < band.row_start.size(); ++row) {
    if (band.row_collapsed[row]) continue;
    const std::uint32_t base = band.row_start[row];
    for (int i = 0; i < grid.n_phi; ++i) {
      const auto& p = band.mesh.vertices[base + i];
      const auto& q = band.mesh.vertices[base + (i + 1) % grid.n_phi];
      EXPECT_LT(gap({c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]}, q), 1e-9);
    }
  }
}

TEST(Sphere, MirrorSymmetry) {
  // (x, y, z) -> (x, -y, -z) pairs gamma with -gamma and phi with -phi.
  const SphereGrid grid{36, 19, 4.0};
  const heis::BandMesh band = heis::sphere_exp_band(grid);
  const std::size_t rows = band.row_start.size();
  for (std::size_t row = 0; row < rows; ++row) {
    const std::size_t mirror = rows - 1 - row;
    if (band.row_collapsed[row]) {
      const auto& p = band.mesh.vertices[band.row_start[row]];
      EXPECT_LT(gap({p[0], -p[1], -p[2]}, band.mesh.vertices[band.row_start[mirror]]), 1e-9);
      continue;
    }
    for (int i = 0; i < grid.n_phi; ++i) {
      const auto& p = band.mesh.vertices[band.row_start[row] + i];
      const auto& q = band.mesh.vertices[band.row_start[mirror] + (grid.n_phi - i) % grid.n_phi];
      EXPECT_LT(gap({p[0], -p[1], -p[2]}, q), 1e-9);
    }
  }
}

TEST(Singularities, EmbeddedBelowFirstConjugateRadius) {
  for (double r : {1.0, 3.0}) {
    for (const auto& [np, ng] : {std::pair{64, 33}, std::pair{64, 65}, std::pair{128, 65}}) {
      const auto report = heis::detect_singularities(SphereGrid{np, ng, r});
      EXPECT_FALSE(report.singular()) << "radius " << r << " grid " << np << "x" << ng;
      EXPECT_EQ(report.proximity_events, 0u);
      EXPECT_TRUE(report.axis_crossings.empty());
    }
  }
}

TEST(Singularities, DetectedAtLargeRadii) {
  for (double r : {5.0, 20.0}) {
    const auto report = heis::detect_singularities(SphereGrid{64, 65, r});
    EXPECT_TRUE(report.singular());
    EXPECT_GT(report.proximity_events, 0u);
    EXPECT_LT(report.min_normalized_separation, heis::kProximityThreshold);
    // pinches sit where gamma * radius is a multiple of pi
    ASSERT_FALSE(report.axis_crossings.empty());
    for (double g : report.axis_crossings) {
      const double k = std::abs(g) * r / pi;
      EXPECT_LT(std::abs(k - std::round(k)) * pi / r, 1.0 / 64.0 + 1e-12) << g;
    }
  }
}

TEST(Singularities, FirstSingularRadius) {
  const int n_gamma = 65;
  const double step = 2.0 / (n_gamma - 1);
  const double r = heis::first_singular_radius(64, n_gamma);
  // The first pinch ring gamma = pi / r must fall between two grid rows.
  EXPECT_GE(r, pi - 1e-3);
  EXPECT_LE(r, pi / (1.0 - step) + 1e-3);
  EXPECT_THROW(heis::first_singular_radius(64, n_gamma, 5.0, 10.0), std::invalid_argument);
}

TEST(Clip, RadiusOneKeepsEverything) {
  const TriMesh m = heis::sphere_exp_mesh({32, 17, 1.0});
  const TriMesh c = heis::clip_to_metric_sphere(m, 1.0);
  EXPECT_EQ(c.vertices.size(), m.vertices.size());
  EXPECT_EQ(c.faces.size(), m.faces.size());
  ASSERT_NE(c.scalar("distance_defect"), nullptr);
}

TEST(Clip, LargeRadiusDropsInteriorParts) {
  const TriMesh m = heis::sphere_exp_mesh({32, 17, 5.0});
  const TriMesh c = heis::clip_to_metric_sphere(m, 5.0);
  ASSERT_NO_THROW(c.validate());
  EXPECT_LT(c.vertices.size(), m.vertices.size());
  EXPECT_GT(c.vertices.size(), 0u);
  for (double d : c.scalar("distance_defect")->values) EXPECT_LE(d, 1e-3);
}

TEST(PlaneSurface, ContainsAxisLines) {
  heis::PlaneSurfaceParams p;
  p.n_theta = 8;
  p.n_s = 11;
  p.s_max = 3.0;
  const TriMesh m = heis::plane_exp_surface(p);
  ASSERT_NO_THROW(m.validate());
  EXPECT_EQ(m.vertices.size(), 1u + 10u * 8u);
  for (int j = 1; j < p.n_s; ++j) {
    const double s = p.s_at(j);
    const auto row = 1 + static_cast<std::size_t>(j - 1) * 8;
    EXPECT_LT(gap(m.vertices[row], {s, 0, 0}), 1e-15);             // theta = 0
    EXPECT_LT(gap(m.vertices[row + 2], {0, 0, s}), 1e-12);         // theta = pi/2
  }
}

TEST(PlaneSurface, ReversedDirectionSymmetry) {
  // exp(0, -v) = (-x, y, -z) of exp(0, v) for v in the {X, T} plane.
  heis::PlaneSurfaceParams p;
  p.n_theta = 24;
  p.n_s = 9;
  const TriMesh m = heis::plane_exp_surface(p);
  const int half = p.n_theta / 2;
  for (int j = 1; j < p.n_s; ++j) {
    const std::size_t row = 1 + static_cast<std::size_t>(j - 1) * p.n_theta;
    for (int i = 0; i < p.n_theta; ++i) {
      const auto& a = m.vertices[row + i];
      const auto& b = m.vertices[row + (i + half) % p.n_theta];
      EXPECT_LT(gap({-a[0], a[1], -a[2]}, b), 1e-10);
    }
  }
}

TEST(PlaneSurface, OpenRangeHasNoApex) {
  heis::PlaneSurfaceParams p;
  p.theta_min = 0.0;
  p.theta_max = pi / 2;
  p.s_min = 1.0;
  p.s_max = 2.0;
  p.n_theta = 5;
  p.n_s = 4;
  const TriMesh m = heis::plane_exp_surface(p);
  ASSERT_NO_THROW(m.validate());
  EXPECT_EQ(m.vertices.size(), 20u);
  EXPECT_EQ(m.faces.size(), 2u * 4u * 3u);
  p.s_min = -1.0;
  EXPECT_THROW(heis::plane_exp_surface(p), std::invalid_argument);
}

TEST(Cutaway, KeepsOneSide) {
  const SphereGrid grid{64, 33, 1.0};
  const TriMesh full = heis::sphere_exp_mesh(grid);
  const TriMesh half = heis::ball_cutaway_mesh(grid, {0, 1, 0});
  ASSERT_NO_THROW(half.validate());
  for (const auto& v : half.vertices) EXPECT_LE(v[1], 1e-12);
  const double expected = full.vertices.size() / 2.0;
  EXPECT_LE(std::abs(static_cast<double>(half.vertices.size()) - expected), grid.n_phi);
  EXPECT_THROW(heis::ball_cutaway_mesh(grid, {0, 0, 0}), std::invalid_argument);
}

TEST(Closeup, LocatesFirstPinch) {
  for (double r : {5.0, 20.0}) {
    const auto patch = heis::singular_point_closeup(r, 0.02, 32, 9);
    ASSERT_NO_THROW(patch.mesh.validate());
    EXPECT_FALSE(patch.mesh.vertices.empty());
    EXPECT_NEAR(patch.gamma_star, pi / r, 1e-6);
    EXPECT_LT(std::hypot(patch.apex.x, patch.apex.y), 1e-9);
    const HeisPoint ref = heis::geodesic_from_origin(GeodesicSpec(pi / r, 0.0), r);
    EXPECT_NEAR(patch.apex.z, ref.z, 1e-6);
  }
}

TEST(Closeup, NoPinchAtSmallRadius) {
  EXPECT_THROW(heis::singular_point_closeup(1.0, 0.05, 32, 9), heis::NoSingularity);
  EXPECT_THROW(heis::singular_point_closeup(5.0, 0.0, 32, 9), std::invalid_argument);
}

TEST(Polyline, Examples) {
  const auto line = heis::geodesic_polyline(GeodesicSpec(0.0, 0.9), 4.0, 16);
  ASSERT_EQ(line.size(), 17u);
  for (const auto& p : line) {
    EXPECT_NEAR(p.x * std::sin(0.9) - p.y * std::cos(0.9), 0.0, 1e-12);
    EXPECT_EQ(p.z, 0.0);
  }
  const auto loop = heis::geodesic_polyline(GeodesicSpec(0.5, 0.0), 2 * pi, 50);
  EXPECT_EQ(loop.front(), (HeisPoint{}));
  EXPECT_NEAR(loop.back().z, 2.5 * pi, 1e-9);
  EXPECT_NEAR(std::hypot(loop.back().x, loop.back().y), 0.0, 1e-9);
  EXPECT_THROW(heis::geodesic_polyline(GeodesicSpec(0.5, 0.0), 1.0, 1), std::invalid_argument);
}

TEST(Polyline, ChordsHaveArcLength) {
  const double s_max = 3.0;
  const int n = 6;
  const auto pts = heis::geodesic_polyline(GeodesicSpec(0.4, 1.0), s_max, n);
  for (int k = 0; k < n; ++k) {
    EXPECT_NEAR(heis::riemannian_distance(pts[k], pts[k + 1]), s_max / n, 1e-7);
  }
}

}  // namespace
