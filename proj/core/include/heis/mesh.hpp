#pragma once

// Triangle meshes of exp-images: geodesic spheres, the exp-image of the
// {X, T} tangent plane, ball cutaways, close-ups of sphere singular points and
// sampled geodesic polylines. Meshes are built in memory; writers live in the
// command-line tool.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heis/core.hpp"
#include "heis/geodesics.hpp"

namespace heis {

struct ScalarField {
  std::string name;
  std::vector<double> values;  // one per vertex
};

struct TriMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  std::vector<ScalarField> scalars;

  /// Throws std::logic_error on out-of-range or repeated face indices,
  /// non-finite coordinates, or scalar fields of the wrong length.
  void validate() const;

  [[nodiscard]] const ScalarField* scalar(std::string_view name) const;
  /// The returned reference is invalidated by the next add_scalar.
  ScalarField& add_scalar(std::string name);
};

/// Parameter grid for a geodesic sphere: phi_i = 2 pi i / n_phi and
/// gamma_j = -1 + 2 j / (n_gamma - 1), both poles included.
struct SphereGrid {
  int n_phi{64};
  int n_gamma{33};
  double radius{1.0};

  /// Throws std::invalid_argument unless n_phi, n_gamma >= 3 and radius > 0.
  void validate() const;
  [[nodiscard]] double phi_at(int i) const;
  [[nodiscard]] double gamma_at(int j) const;
};

/// Mesh laid out in rows of constant gamma, each either a ring of n_phi
/// vertices or a single collapsed vertex (the poles).
struct BandMesh {
  TriMesh mesh;
  int n_phi{0};
  std::vector<double> row_gamma;
  std::vector<std::uint32_t> row_start;  // first vertex of each row
  std::vector<bool> row_collapsed;
};

/// Vertex (i, j) = geodesic_from_origin(spec(gamma_j, phi_i), radius). Poles
/// are single vertices joined to their neighbor rings by fans. Carries
/// per-vertex scalars "gamma", "phi" and "s".
TriMesh sphere_exp_mesh(const SphereGrid& grid);
BandMesh sphere_exp_band(const SphereGrid& grid);

struct SingularityReport {
  /// gamma midway between consecutive rows whose meridians all pass through
  /// the z-axis, i.e. rows on opposite sides of a sphere pinch.
  std::vector<double> axis_crossings;
  /// Non-adjacent vertex pairs outside the polar caps with separation below
  /// kProximityThreshold times the larger local edge length of the pair.
  std::size_t proximity_events{0};
  double min_normalized_separation{0.0};

  [[nodiscard]] bool singular() const { return !axis_crossings.empty() || proximity_events > 0; }
};

inline constexpr double kProximityThreshold = 0.1;

/// Inspects the sphere mesh for self-contact. Poles and the rings adjacent
/// to them are excluded from the proximity test: polar coordinates shrink
/// those rings at every radius.
SingularityReport detect_singularities(const BandMesh& band);
SingularityReport detect_singularities(const SphereGrid& grid);

/// Clips vertices with d(0, v) < radius - tol (the parts of the exp-sphere
/// lying strictly inside the metric ball). Adds a "distance_defect" scalar
/// (radius - d) to the kept vertices. Faces are kept when all three vertices are.
TriMesh clip_to_metric_sphere(const TriMesh& sphere, double radius, double tol = 1e-3);

/// exp(0, s (cos theta, 0, sin theta)) over the grid of (theta, s). A theta
/// range spanning 2 pi wraps around; s_min = 0 collapses to a single apex.
struct PlaneSurfaceParams {
  double theta_min{0.0};
  double theta_max{6.283185307179586};
  double s_min{0.0};
  double s_max{6.283185307179586};
  int n_theta{72};
  int n_s{48};

  void validate() const;
  [[nodiscard]] bool periodic() const;
  [[nodiscard]] double theta_at(int i) const;
  [[nodiscard]] double s_at(int j) const;
};
TriMesh plane_exp_surface(const PlaneSurfaceParams& params);

/// Sphere mesh keeping the vertices with dot(normal, v) <= 0 (plus 1e-12) and
/// the faces among them; the cut is left open. Throws for a zero normal.
TriMesh ball_cutaway_mesh(const SphereGrid& grid, const std::array<double, 3>& cut_plane_normal);

/// Raised when a sphere of the requested radius has no singular point.
class NoSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SingularPatch {
  TriMesh mesh;
  double gamma_star{0.0};  // direction cone whose geodesics meet at the apex
  HeisPoint apex;          // the singular point, on the z-axis
};

/// Finds the first pinch of the radius-`radius` sphere above the equator (the
/// smallest gamma > 0 whose geodesics return to the z-axis at arc length
/// `radius`; those points lie on the metric sphere) and re-meshes the band
/// gamma_star +- window at resolution n_phi x n_gamma. The pinch is detected
/// on a detection grid of `detect_rows` rows and refined by bisection on
/// the signed ring radius. Throws NoSingularity if the detection grid shows
/// no pinch, std::invalid_argument for window <= 0 or bad resolutions.
SingularPatch singular_point_closeup(double radius, double window, int n_phi, int n_gamma,
                                     int detect_rows = 129);

/// Smallest radius in [lo, hi] at which detect_singularities reports a
/// singular sphere, by bisection to `tol` using the given resolution.
/// Throws std::invalid_argument if lo is already singular or hi is not.
double first_singular_radius(int n_phi, int n_gamma, double lo = 0.5, double hi = 10.0,
                             double tol = 1e-4);

/// n + 1 points at arc lengths s_max * k / n. Throws std::invalid_argument for n < 2.
std::vector<HeisPoint> geodesic_polyline(const GeodesicSpec& spec, double s_max, int n);

}  // namespace heis
