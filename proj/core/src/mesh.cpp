#include "heis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "heis/distance.hpp"
#include "parallel.hpp"

namespace heis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Vec3 = std::array<double, 3>;

double dist(const Vec3& a, const Vec3& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

Vec3 to_array(const HeisPoint& p) { return {p.x, p.y, p.z}; }

// Rows of constant gamma on the sphere of arc length `s`. A row whose ring
// has shrunk to a point (the poles, or a ring through a pinch) becomes one vertex.
BandMesh build_band(const std::vector<double>& gammas, int n_phi, double s) {
  const std::size_t n_rows = gammas.size();
  std::vector<std::vector<Vec3>> rings(n_rows);
  detail::parallel_for(n_rows, [&](std::size_t j) {
    auto& ring = rings[j];
    ring.resize(static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_phi; ++i) {
      ring[static_cast<std::size_t>(i)] =
          to_array(geodesic_from_origin(GeodesicSpec(gammas[j], kTwoPi * i / n_phi), s));
    }
  });

  BandMesh band;
  band.n_phi = n_phi;
  band.row_gamma = gammas;
  TriMesh& mesh = band.mesh;
  mesh.add_scalar("gamma");
  mesh.add_scalar("phi");
  mesh.add_scalar("s");
  auto& sg = mesh.scalars[0];
  auto& sp = mesh.scalars[1];
  auto& ss = mesh.scalars[2];
  const double collapse_tol = 1e-12 * (1.0 + s);

  for (std::size_t j = 0; j < n_rows; ++j) {
    const auto& ring = rings[j];
    const bool collapsed =
        std::abs(gammas[j]) == 1.0 ||
        std::all_of(ring.begin(), ring.end(), [&](const Vec3& v) { return dist(v, ring[0]) <= collapse_tol; });
    band.row_start.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
    band.row_collapsed.push_back(collapsed);
    if (collapsed) {
      mesh.vertices.push_back(ring[0]);
      sg.values.push_back(gammas[j]);
      sp.values.push_back(0.0);
      ss.values.push_back(s);
      continue;
    }
    for (int i = 0; i < n_phi; ++i) {
      mesh.vertices.push_back(ring[static_cast<std::size_t>(i)]);
      sg.values.push_back(gammas[j]);
      sp.values.push_back(kTwoPi * i / n_phi);
      ss.values.push_back(s);
    }
  }

  const auto n = static_cast<std::uint32_t>(n_phi);
  for (std::size_t j = 0; j + 1 < n_rows; ++j) {
    const std::uint32_t a = band.row_start[j], b = band.row_start[j + 1];
    const bool ca = band.row_collapsed[j], cb = band.row_collapsed[j + 1];
    if (ca && cb) continue;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t i1 = (i + 1) % n;
      if (ca) {
        mesh.faces.push_back({a, b + i1, b + i});
      } else if (cb) {
        mesh.faces.push_back({a + i, a + i1, b});
      } else {
        mesh.faces.push_back({a + i, a + i1, b + i1});
        mesh.faces.push_back({a + i, b + i1, b + i});
      }
    }
  }
  return band;
}

TriMesh keep_vertices(const TriMesh& in, const std::vector<bool>& keep) {
  TriMesh out;
  std::vector<std::uint32_t> remap(in.vertices.size(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t v = 0; v < in.vertices.size(); ++v) {
    if (!keep[v]) continue;
    remap[v] = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.push_back(in.vertices[v]);
  }
  for (const auto& f : in.faces) {
    if (keep[f[0]] && keep[f[1]] && keep[f[2]]) {
      out.faces.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
    }
  }
  for (const auto& field : in.scalars) {
    auto& copy = out.add_scalar(field.name);
    for (std::size_t v = 0; v < in.vertices.size(); ++v) {
      if (keep[v]) copy.values.push_back(field.values[v]);
    }
  }
  return out;
}

struct CellKey {
  long long x, y, z;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    const auto h = static_cast<std::size_t>(k.x * 73856093LL ^ k.y * 19349663LL ^ k.z * 83492791LL);
    return h;
  }
};

}  // namespace

void TriMesh::validate() const {
  for (const auto& v : vertices) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2])) {
      throw std::logic_error("mesh has a non-finite vertex");
    }
  }
  for (const auto& f : faces) {
    for (auto idx : f) {
      if (idx >= vertices.size()) throw std::logic_error("mesh face index out of range");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      throw std::logic_error("mesh has a degenerate face");
    }
  }
  for (const auto& s : scalars) {
    if (s.values.size() != vertices.size()) {
      throw std::logic_error("scalar field '" + s.name + "' has the wrong length");
    }
  }
}

const ScalarField* TriMesh::scalar(std::string_view name) const {
  auto it = std::find_if(scalars.begin(), scalars.end(),
                         [&](const ScalarField& s) { return s.name == name; });
  return it == scalars.end() ? nullptr : &*it;
}

ScalarField& TriMesh::add_scalar(std::string name) {
  scalars.push_back({std::move(name), {}});
  return scalars.back();
}

void SphereGrid::validate() const {
  if (n_phi < 3 || n_gamma < 3) throw std::invalid_argument("sphere grid resolutions must be >= 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sphere radius must be positive and finite");
  }
}

double SphereGrid::phi_at(int i) const { return kTwoPi * i / n_phi; }

double SphereGrid::gamma_at(int j) const {
  if (j == n_gamma - 1) return 1.0;
  return -1.0 + 2.0 * j / (n_gamma - 1);
}

BandMesh sphere_exp_band(const SphereGrid& grid) {
  grid.validate();
  std::vector<double> gammas(static_cast<std::size_t>(grid.n_gamma));
  for (int j = 0; j < grid.n_gamma; ++j) gammas[static_cast<std::size_t>(j)] = grid.gamma_at(j);
  return build_band(gammas, grid.n_phi, grid.radius);
}

TriMesh sphere_exp_mesh(const SphereGrid& grid) { return sphere_exp_band(grid).mesh; }

SingularityReport detect_singularities(const BandMesh& band) {
  const auto& verts = band.mesh.vertices;
  const std::size_t n_rows = band.row_gamma.size();
  const int n = band.n_phi;
  SingularityReport report;
  report.min_normalized_separation = std::numeric_limits<double>::infinity();

  auto at = [&](std::size_t j, int i) -> const Vec3& {
    return band.row_collapsed[j] ? verts[band.row_start[j]]
                                 : verts[band.row_start[j] + static_cast<std::uint32_t>((i + n) % n)];
  };

  // Meridians through the axis: every column's planar position turns by
  // more than a quarter between the two rows.
  for (std::size_t j = 0; j + 1 < n_rows; ++j) {
    if (band.row_collapsed[j] || band.row_collapsed[j + 1]) continue;
    bool all_cross = true;
    for (int i = 0; i < n && all_cross; ++i) {
      const Vec3 &p = at(j, i), &q = at(j + 1, i);
      all_cross = p[0] * q[0] + p[1] * q[1] < 0.0;
    }
    if (all_cross) report.axis_crossings.push_back(0.5 * (band.row_gamma[j] + band.row_gamma[j + 1]));
  }

  // Eligible rows: rings not adjacent to a collapsed row.
  std::vector<bool> eligible(n_rows, false);
  for (std::size_t j = 0; j < n_rows; ++j) {
    eligible[j] = !band.row_collapsed[j] && !(j > 0 && band.row_collapsed[j - 1]) &&
                  !(j + 1 < n_rows && band.row_collapsed[j + 1]);
  }

  struct Item {
    std::size_t row;
    int col;
    double scale;
  };
  std::vector<Item> items;
  double max_scale = 0.0;
  for (std::size_t j = 0; j < n_rows; ++j) {
    if (!eligible[j]) continue;
    for (int i = 0; i < n; ++i) {
      const Vec3& v = at(j, i);
      double h = std::max(dist(v, at(j, i - 1)), dist(v, at(j, i + 1)));
      if (j > 0) h = std::max(h, dist(v, at(j - 1, i)));
      if (j + 1 < n_rows) h = std::max(h, dist(v, at(j + 1, i)));
      items.push_back({j, i, h});
      max_scale = std::max(max_scale, h);
    }
  }
  if (items.empty() || !(max_scale > 0.0)) return report;

  // Hash cells of size max_scale; any pair with ratio <= 1 lies in adjacent cells.
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  auto key_of = [&](const Vec3& v) {
    return CellKey{static_cast<long long>(std::floor(v[0] / max_scale)),
                   static_cast<long long>(std::floor(v[1] / max_scale)),
                   static_cast<long long>(std::floor(v[2] / max_scale))};
  };
  for (std::size_t k = 0; k < items.size(); ++k) cells[key_of(at(items[k].row, items[k].col))].push_back(k);

  for (std::size_t a = 0; a < items.size(); ++a) {
    const Item& ia = items[a];
    const Vec3& va = at(ia.row, ia.col);
    const CellKey ka = key_of(va);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          auto it = cells.find({ka.x + dx, ka.y + dy, ka.z + dz});
          if (it == cells.end()) continue;
          for (std::size_t b : it->second) {
            if (b <= a) continue;
            const Item& ib = items[b];
            const auto drow = ia.row > ib.row ? ia.row - ib.row : ib.row - ia.row;
            int dcol = std::abs(ia.col - ib.col);
            dcol = std::min(dcol, n - dcol);
            if (drow <= 1 && dcol <= 1) continue;
            const double ratio = dist(va, at(ib.row, ib.col)) / std::max(ia.scale, ib.scale);
            report.min_normalized_separation = std::min(report.min_normalized_separation, ratio);
            if (ratio < kProximityThreshold) ++report.proximity_events;
          }
        }
      }
    }
  }
  return report;
}

SingularityReport detect_singularities(const SphereGrid& grid) {
  return detect_singularities(sphere_exp_band(grid));
}

TriMesh clip_to_metric_sphere(const TriMesh& sphere, double radius, double tol) {
  std::vector<double> defect(sphere.vertices.size());
  detail::parallel_for(sphere.vertices.size(), [&](std::size_t v) {
    const auto& p = sphere.vertices[v];
    defect[v] = radius - riemannian_distance({}, {p[0], p[1], p[2]});
  });
  std::vector<bool> keep(sphere.vertices.size());
  for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = defect[v] <= tol;

  TriMesh out = keep_vertices(sphere, keep);
  auto& field = out.add_scalar("distance_defect");
  for (std::size_t v = 0; v < keep.size(); ++v) {
    if (keep[v]) field.values.push_back(defect[v]);
  }
  return out;
}

void PlaneSurfaceParams::validate() const {
  if (n_theta < 3 || n_s < 2) throw std::invalid_argument("surface resolution too small");
  if (!(s_min >= 0.0) || !(s_max > s_min) || !std::isfinite(s_max)) {
    throw std::invalid_argument("surface s range must satisfy 0 <= s_min < s_max");
  }
  if (!(theta_max > theta_min) || !std::isfinite(theta_min) || !std::isfinite(theta_max)) {
    throw std::invalid_argument("surface theta range must be increasing");
  }
}

bool PlaneSurfaceParams::periodic() const { return theta_max - theta_min >= kTwoPi - 1e-9; }

double PlaneSurfaceParams::theta_at(int i) const {
  if (periodic()) return theta_min + kTwoPi * i / n_theta;
  return theta_min + (theta_max - theta_min) * i / (n_theta - 1);
}

double PlaneSurfaceParams::s_at(int j) const {
  if (j == n_s - 1) return s_max;
  return s_min + (s_max - s_min) * j / (n_s - 1);
}

TriMesh plane_exp_surface(const PlaneSurfaceParams& params) {
  params.validate();
  const bool wrap = params.periodic();
  const bool apex = params.s_min == 0.0;
  const int nt = params.n_theta, ns = params.n_s;

  TriMesh mesh;
  mesh.add_scalar("theta");
  mesh.add_scalar("s");
  auto& st = mesh.scalars[0];
  auto& ss = mesh.scalars[1];
  // Row j holds s_j; row 0 is a single vertex when it sits at the origin.
  std::vector<std::uint32_t> row_start;
  for (int j = 0; j < ns; ++j) {
    row_start.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
    const double s = params.s_at(j);
    if (j == 0 && apex) {
      mesh.vertices.push_back({0.0, 0.0, 0.0});
      st.values.push_back(0.0);
      ss.values.push_back(0.0);
      continue;
    }
    for (int i = 0; i < nt; ++i) {
      const double th = params.theta_at(i);
      mesh.vertices.push_back(to_array(exp_map({}, FrameVector{s * std::cos(th), 0.0, s * std::sin(th)})));
      st.values.push_back(th);
      ss.values.push_back(s);
    }
  }

  const auto n = static_cast<std::uint32_t>(nt);
  const std::uint32_t cols = wrap ? n : n - 1;
  for (int j = 0; j + 1 < ns; ++j) {
    const std::uint32_t a = row_start[static_cast<std::size_t>(j)];
    const std::uint32_t b = row_start[static_cast<std::size_t>(j) + 1];
    for (std::uint32_t i = 0; i < cols; ++i) {
      const std::uint32_t i1 = (i + 1) % n;
      if (j == 0 && apex) {
        mesh.faces.push_back({a, b + i, b + i1});
      } else {
        mesh.faces.push_back({a + i, b + i, b + i1});
        mesh.faces.push_back({a + i, b + i1, a + i1});
      }
    }
  }
  return mesh;
}

TriMesh ball_cutaway_mesh(const SphereGrid& grid, const std::array<double, 3>& normal) {
  const double len = std::hypot(normal[0], normal[1], normal[2]);
  if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("cut plane normal must be nonzero");
  const Vec3 nu{normal[0] / len, normal[1] / len, normal[2] / len};
  const TriMesh full = sphere_exp_mesh(grid);
  std::vector<bool> keep(full.vertices.size());
  for (std::size_t v = 0; v < keep.size(); ++v) {
    const auto& p = full.vertices[v];
    keep[v] = nu[0] * p[0] + nu[1] * p[1] + nu[2] * p[2] <= 1e-12;
  }
  return keep_vertices(full, keep);
}

SingularPatch singular_point_closeup(double radius, double window, int n_phi, int n_gamma,
                                     int detect_rows) {
  if (!(window > 0.0)) throw std::invalid_argument("close-up window must be positive");
  if (n_phi < 3 || n_gamma < 2) throw std::invalid_argument("close-up resolution too small");
  const SphereGrid detect{n_phi, detect_rows, radius};
  const BandMesh band = sphere_exp_band(detect);
  const SingularityReport report = detect_singularities(band);

  auto first = std::find_if(report.axis_crossings.begin(), report.axis_crossings.end(),
                            [](double g) { return g > 0.0; });
  if (first == report.axis_crossings.end()) {
    throw NoSingularity("no sphere pinch found at radius " + std::to_string(radius));
  }
  // Bracket between the two rows straddling the crossing.
  const double half_step = 1.0 / (detect_rows - 1);
  double lo = *first - half_step, hi = *first + half_step;
  const HeisPoint ref = geodesic_from_origin(GeodesicSpec(lo, 0.0), radius);
  auto side = [&](double g) {
    const HeisPoint p = geodesic_from_origin(GeodesicSpec(g, 0.0), radius);
    return p.x * ref.x + p.y * ref.y;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (side(mid) > 0.0 ? lo : hi) = mid;
  }
  const double gamma_star = 0.5 * (lo + hi);

  const double g0 = std::max(-1.0, gamma_star - window);
  const double g1 = std::min(1.0, gamma_star + window);
  std::vector<double> rows(static_cast<std::size_t>(n_gamma));
  for (int j = 0; j < n_gamma; ++j) {
    rows[static_cast<std::size_t>(j)] = j == n_gamma - 1 ? g1 : g0 + (g1 - g0) * j / (n_gamma - 1);
  }
  SingularPatch patch;
  patch.mesh = build_band(rows, n_phi, radius).mesh;
  patch.gamma_star = gamma_star;
  patch.apex = geodesic_from_origin(GeodesicSpec(gamma_star, 0.0), radius);
  return patch;
}

double first_singular_radius(int n_phi, int n_gamma, double lo, double hi, double tol) {
  auto singular = [&](double r) { return detect_singularities(SphereGrid{n_phi, n_gamma, r}).singular(); };
  if (singular(lo)) throw std::invalid_argument("lower radius is already singular");
  if (!singular(hi)) throw std::invalid_argument("upper radius is not singular");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (singular(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<HeisPoint> geodesic_polyline(const GeodesicSpec& spec, double s_max, int n) {
  if (n < 2) throw std::invalid_argument("polyline needs n >= 2");
  if (!(s_max >= 0.0) || !std::isfinite(s_max)) throw std::invalid_argument("polyline s_max must be >= 0");
  std::vector<HeisPoint> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    pts.push_back(geodesic_from_point(spec, k == n ? s_max : s_max * k / n));
  }
  return pts;
}

}  // namespace heis
