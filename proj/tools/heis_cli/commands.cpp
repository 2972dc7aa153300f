#include "heis_cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "heis/distance.hpp"
#include "heis/geodesics.hpp"
#include "heis/mesh.hpp"
#include "heis_cli/writers.hpp"

namespace heis::cli {

namespace {

using Writer = std::function<void(std::ostream&)>;

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

void write_file(const std::filesystem::path& path, const Writer& writer) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  writer(f);
  f.flush();
  if (!f) throw IoError("write failed: " + path.string());
}

void emit(const std::string& path, std::ostream& out, const Writer& writer) {
  if (is_stdout(path)) {
    writer(out);
    return;
  }
  write_file(path, writer);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

void require_resolution(int n, const char* name) {
  require(n >= 3, std::string(name) + " must be >= 3");
}

void require_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " must be finite");
}

void write_mesh(const TriMesh& mesh, MeshFormat format, std::ostream& out) {
  mesh.validate();
  if (format == MeshFormat::ply) {
    write_ply(mesh, out);
  } else {
    write_obj(mesh, out);
  }
}

const char* extension(MeshFormat f) { return f == MeshFormat::ply ? ".ply" : ".obj"; }

std::string vector_text(const FrameVector& v) {
  return "(" + format_real(v.a) + ", " + format_real(v.b) + ", " + format_real(v.c) + ")";
}

nlohmann::json report_json(const SingularityReport& r) {
  nlohmann::json j;
  j["singular"] = r.singular();
  j["axis_crossings"] = r.axis_crossings;
  j["proximity_events"] = r.proximity_events;
  j["min_normalized_separation"] = std::isfinite(r.min_normalized_separation)
                                       ? nlohmann::json(r.min_normalized_separation)
                                       : nlohmann::json(nullptr);
  return j;
}

nlohmann::json grid_json(const SphereGrid& g) {
  return {{"radius", g.radius}, {"n_phi", g.n_phi}, {"n_gamma", g.n_gamma}};
}

}  // namespace

HeisPoint parse_point(std::string_view text) {
  std::array<double, 3> v{};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) {
      throw UsageError("point must be x,y,z: '" + std::string(text) + "'");
    }
    const std::string_view field = text.substr(pos, end - pos);
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v[k]);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v[k])) {
      throw UsageError("bad coordinate '" + std::string(field) + "' in point '" +
                       std::string(text) + "'");
    }
    pos = end + 1;
  }
  return {v[0], v[1], v[2]};
}

MeshFormat parse_mesh_format(std::string_view name) {
  if (name == "obj") return MeshFormat::obj;
  if (name == "ply") return MeshFormat::ply;
  throw UsageError("mesh format must be obj or ply, got '" + std::string(name) + "'");
}

PolylineFormat parse_polyline_format(std::string_view name) {
  if (name == "csv") return PolylineFormat::csv;
  if (name == "jsonl") return PolylineFormat::jsonl;
  throw UsageError("polyline format must be csv or jsonl, got '" + std::string(name) + "'");
}

void run_geodesic(const GeodesicConfig& cfg, std::ostream& out) {
  require_finite(cfg.gamma, "--gamma");
  require_finite(cfg.phi, "--phi");
  require(std::abs(cfg.gamma) <= 1.0, "--gamma must lie in [-1, 1]");
  require(cfg.s_max > 0.0 && std::isfinite(cfg.s_max), "--smax must be > 0");
  require(cfg.n >= 2, "--n must be >= 2");

  const GeodesicSpec spec(cfg.gamma, cfg.phi, cfg.base);
  std::vector<GeodesicSample> samples;
  samples.reserve(static_cast<std::size_t>(cfg.n) + 1);
  for (int k = 0; k <= cfg.n; ++k) {
    samples.push_back(sample_geodesic(spec, k == cfg.n ? cfg.s_max : cfg.s_max * k / cfg.n));
  }
  emit(cfg.out, out, [&](std::ostream& o) {
    if (cfg.format == PolylineFormat::jsonl) {
      write_samples_jsonl(samples, o);
    } else {
      write_samples_csv(samples, o);
    }
  });
}

void run_sphere(const SphereConfig& cfg, std::ostream& out) {
  require(cfg.radius > 0.0 && std::isfinite(cfg.radius), "--radius must be > 0");
  require_resolution(cfg.n_phi, "--nphi");
  require_resolution(cfg.n_gamma, "--ngamma");
  require(cfg.clip_tol > 0.0 && std::isfinite(cfg.clip_tol), "--clip-tol must be > 0");
  const auto& nv = cfg.normal;
  require(std::isfinite(nv[0]) && std::isfinite(nv[1]) && std::isfinite(nv[2]) &&
              (nv[0] != 0.0 || nv[1] != 0.0 || nv[2] != 0.0),
          "--normal must be a nonzero finite vector");

  const SphereGrid grid{cfg.n_phi, cfg.n_gamma, cfg.radius};
  TriMesh mesh = cfg.half ? ball_cutaway_mesh(grid, cfg.normal) : sphere_exp_mesh(grid);
  if (cfg.clip_to_metric) mesh = clip_to_metric_sphere(mesh, cfg.radius, cfg.clip_tol);
  emit(cfg.out, out, [&](std::ostream& o) { write_mesh(mesh, cfg.format, o); });
}

void run_surface(const SurfaceConfig& cfg, std::ostream& out) {
  require_finite(cfg.theta_min, "--theta-min");
  require_finite(cfg.theta_max, "--theta-max");
  require(cfg.theta_max > cfg.theta_min, "--theta-max must exceed --theta-min");
  require(cfg.s_min >= 0.0 && std::isfinite(cfg.s_max) && cfg.s_max > cfg.s_min,
          "need 0 <= --s-min < --s-max");
  require_resolution(cfg.n_theta, "--ntheta");
  require_resolution(cfg.n_s, "--ns");

  PlaneSurfaceParams params;
  params.theta_min = cfg.theta_min;
  params.theta_max = cfg.theta_max;
  params.s_min = cfg.s_min;
  params.s_max = cfg.s_max;
  params.n_theta = cfg.n_theta;
  params.n_s = cfg.n_s;
  const TriMesh mesh = plane_exp_surface(params);
  emit(cfg.out, out, [&](std::ostream& o) { write_mesh(mesh, cfg.format, o); });
}

void run_figures(const FiguresConfig& cfg, std::ostream& out) {
  require_resolution(cfg.n_phi, "--nphi");
  require_resolution(cfg.n_gamma, "--ngamma");
  require_resolution(cfg.closeup_n_phi, "--closeup-nphi");
  require_resolution(cfg.closeup_n_gamma, "--closeup-ngamma");
  require(!cfg.out_dir.empty(), "--out-dir must not be empty");

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.out_dir)) {
    throw IoError("cannot create directory " + cfg.out_dir.string());
  }

  nlohmann::json manifest;
  manifest["format"] = cfg.format == MeshFormat::ply ? "ply" : "obj";
  nlohmann::json files = nlohmann::json::array();

  const auto save = [&](const std::string& stem, const TriMesh& mesh, nlohmann::json params) {
    const std::string name = stem + extension(cfg.format);
    write_file(cfg.out_dir / name, [&](std::ostream& o) { write_mesh(mesh, cfg.format, o); });
    params["file"] = name;
    params["vertices"] = mesh.vertices.size();
    params["faces"] = mesh.faces.size();
    files.push_back(std::move(params));
    out << (cfg.out_dir / name).string() << '\n';
  };

  {
    const PlaneSurfaceParams p;
    save("fig1_plane_exp", plane_exp_surface(p),
         {{"kind", "plane_exp_surface"},
          {"theta_min", p.theta_min},
          {"theta_max", p.theta_max},
          {"s_min", p.s_min},
          {"s_max", p.s_max},
          {"n_theta", p.n_theta},
          {"n_s", p.n_s}});
  }
  for (const double r : {1.0, 3.0}) {
    const SphereGrid g{cfg.n_phi, cfg.n_gamma, r};
    save(r == 1.0 ? "fig2_sphere_r1" : "fig2_sphere_r3", sphere_exp_mesh(g),
         {{"kind", "sphere_exp_mesh"}, {"grid", grid_json(g)}});
  }
  {
    const SphereGrid g{cfg.n_phi, cfg.n_gamma, 5.0};
    const std::array<double, 3> normal{0.0, 1.0, 0.0};
    save("fig3_half_ball_r5", ball_cutaway_mesh(g, normal),
         {{"kind", "ball_cutaway_mesh"}, {"grid", grid_json(g)}, {"normal", normal}});
  }

  struct Closeup {
    const char* stem;
    double radius;
    double window;
  };
  // Conjugate rings sit pi/radius apart in gamma; windows stay well inside one gap.
  for (const Closeup& c : {Closeup{"fig4_closeup_r5", 5.0, 0.08},
                           Closeup{"fig4_neighborhood_r5", 5.0, 0.3},
                           Closeup{"fig5_closeup_r20", 20.0, 0.03}}) {
    const SingularPatch patch =
        singular_point_closeup(c.radius, c.window, cfg.closeup_n_phi, cfg.closeup_n_gamma);
    save(c.stem, patch.mesh,
         {{"kind", "singular_point_closeup"},
          {"radius", c.radius},
          {"window", c.window},
          {"n_phi", cfg.closeup_n_phi},
          {"n_gamma", cfg.closeup_n_gamma},
          {"gamma_star", patch.gamma_star},
          {"apex", {patch.apex.x, patch.apex.y, patch.apex.z}}});
  }

  nlohmann::json detector;
  detector["proximity_threshold"] = kProximityThreshold;
  nlohmann::json reports = nlohmann::json::array();
  for (const double r : {1.0, 3.0, 5.0, 20.0}) {
    const SphereGrid g{cfg.n_phi, cfg.n_gamma, r};
    nlohmann::json entry = report_json(detect_singularities(g));
    entry["grid"] = grid_json(g);
    reports.push_back(std::move(entry));
  }
  detector["spheres"] = std::move(reports);

  manifest["files"] = std::move(files);
  manifest["detector"] = std::move(detector);
  write_file(cfg.out_dir / "manifest.json",
             [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
  out << (cfg.out_dir / "manifest.json").string() << '\n';
}

void run_distance(const DistanceConfig& cfg, std::ostream& out) {
  require(cfg.tol > 0.0 && std::isfinite(cfg.tol), "--tol must be > 0");
  if (cfg.metric == DistanceMetric::cygan) {
    require(!cfg.all_candidates, "--all-candidates applies to the riemannian metric only");
    const double d = cygan_distance(cfg.p, cfg.q);
    emit(cfg.out, out, [&](std::ostream& o) { o << format_real(d) << '\n'; });
    return;
  }
  if (!cfg.all_candidates) {
    const double d = riemannian_distance(cfg.p, cfg.q, cfg.tol);
    emit(cfg.out, out, [&](std::ostream& o) { o << format_real(d) << '\n'; });
    return;
  }
  const HeisPoint target = group_mul(group_inv(cfg.p), cfg.q);
  // Coincident points: the only geodesic is the constant one.
  const auto candidates =
      target == HeisPoint{} ? std::vector<ShootingSolution>{} : shoot_candidates(target, cfg.tol);
  emit(cfg.out, out, [&](std::ostream& o) {
    for (const auto& c : candidates) {
      o << "{\"gamma\":" << format_real(c.spec.gamma()) << ",\"phi\":"
        << format_real(c.spec.phi()) << ",\"s\":" << format_real(c.s)
        << ",\"residual\":" << format_real(c.residual) << "}\n";
    }
  });
}

void run_curvature(std::ostream& out) {
  out << "connection (nabla_A B in the X, Y, T frame)\n";
  for (const FrameIndex a : kFrame) {
    for (const FrameIndex b : kFrame) {
      out << "  nabla_" << frame_name(a) << ' ' << frame_name(b) << " = "
          << vector_text(nabla(a, b)) << '\n';
    }
  }
  out << "brackets\n";
  for (const auto& [a, b] : {std::pair{FrameIndex::X, FrameIndex::Y},
                             std::pair{FrameIndex::X, FrameIndex::T},
                             std::pair{FrameIndex::Y, FrameIndex::T}}) {
    out << "  [" << frame_name(a) << ", " << frame_name(b) << "] = "
        << vector_text(frame_bracket(a, b)) << '\n';
  }
  out << "sectional curvature\n";
  for (const auto& [a, b] : {std::pair{FrameIndex::X, FrameIndex::Y},
                             std::pair{FrameIndex::X, FrameIndex::T},
                             std::pair{FrameIndex::Y, FrameIndex::T}}) {
    out << "  K(" << frame_name(a) << ", " << frame_name(b)
        << ") = " << format_real(sectional_curvature(a, b)) << '\n';
  }
}

}  // namespace heis::cli
