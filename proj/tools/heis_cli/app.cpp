#include "heis_cli/app.hpp"

#include <fstream>
#include <functional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/distance.hpp"
#include "heis/mesh.hpp"
#include "heis_cli/commands.hpp"
#include "heis_cli/writers.hpp"

namespace heis::cli {

namespace {

std::string json_scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return format_real(v.get<double>());
  throw UsageError("config key '" + key + "' has an unsupported value");
}

std::string json_value_text(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) return json_scalar_text(v, key);
  std::string text;
  for (const auto& item : v) {
    if (!text.empty()) text += ',';
    text += json_scalar_text(item, key);
  }
  return text;
}

/// Fills options of `sub` that were not given on the command line from a
/// flat JSON object keyed by long option name (or positional name).
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file " + path + " must hold a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "config") throw UsageError("config files cannot include other config files");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) opt = sub.get_option_no_throw(key);
    if (opt == nullptr) {
      throw UsageError("unknown config key '" + key + "' for " + sub.get_name());
    }
    if (opt->count() > 0) continue;  // command line wins
    try {
      opt->add_result(json_value_text(value, key));
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

std::array<double, 3> parse_vector(const std::string& text) {
  const HeisPoint p = parse_point(text);
  return {p.x, p.y, p.z};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry toolkit for the Heisenberg group with its left-invariant metric", "heis"};
  app.require_subcommand(1);

  std::string config_path;
  const auto add_config = [&config_path](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with default values for these flags");
  };

  GeodesicConfig geo;
  std::string geo_base = "0,0,0";
  std::string geo_format = "csv";
  auto* geodesic = app.add_subcommand("geodesic", "Sample a unit-speed geodesic");
  geodesic->add_option("--gamma", geo.gamma, "Vertical velocity component in [-1, 1]");
  geodesic->add_option("--phi", geo.phi, "Initial horizontal direction (radians)");
  geodesic->add_option("--smax", geo.s_max, "Final arc length");
  geodesic->add_option("--n", geo.n, "Number of segments (n + 1 samples)");
  geodesic->add_option("--base", geo_base, "Starting point x,y,z");
  geodesic->add_option("--format", geo_format, "csv or jsonl");
  geodesic->add_option("--out", geo.out, "Output file (stdout when omitted)");
  add_config(geodesic);

  SphereConfig sph;
  std::string sph_normal = "0,1,0";
  std::string sph_format = "obj";
  auto* sphere = app.add_subcommand("sphere", "Mesh the exp-image of a tangent sphere");
  sphere->add_option("--radius", sph.radius, "Sphere radius");
  sphere->add_option("--nphi", sph.n_phi, "Azimuthal resolution");
  sphere->add_option("--ngamma", sph.n_gamma, "Polar resolution (rows, poles included)");
  sphere->add_flag("--clip-to-metric", sph.clip_to_metric,
                   "Drop vertices strictly inside the metric ball");
  sphere->add_option("--clip-tol", sph.clip_tol, "Distance tolerance for --clip-to-metric");
  sphere->add_flag("--half", sph.half, "Keep the half on the negative side of --normal");
  sphere->add_option("--normal", sph_normal, "Cut plane normal x,y,z");
  sphere->add_option("--format", sph_format, "obj or ply");
  sphere->add_option("--out", sph.out, "Output file (stdout when omitted)");
  add_config(sphere);

  SurfaceConfig srf;
  std::string srf_format = "obj";
  auto* surface = app.add_subcommand("surface", "Mesh the exp-image of the {X, T} tangent plane");
  surface->add_option("--theta-min", srf.theta_min, "Smallest direction angle");
  surface->add_option("--theta-max", srf.theta_max, "Largest direction angle");
  surface->add_option("--s-min", srf.s_min, "Smallest arc length");
  surface->add_option("--s-max", srf.s_max, "Largest arc length");
  surface->add_option("--ntheta", srf.n_theta, "Angular resolution");
  surface->add_option("--ns", srf.n_s, "Radial resolution");
  surface->add_option("--format", srf_format, "obj or ply");
  surface->add_option("--out", srf.out, "Output file (stdout when omitted)");
  add_config(surface);

  FiguresConfig fig;
  std::string fig_dir = fig.out_dir.string();
  std::string fig_format = "obj";
  auto* figures = app.add_subcommand("figures", "Write the full figure suite and a manifest");
  figures->add_option("--out-dir", fig_dir, "Destination directory");
  figures->add_option("--format", fig_format, "obj or ply");
  figures->add_option("--nphi", fig.n_phi, "Sphere azimuthal resolution");
  figures->add_option("--ngamma", fig.n_gamma, "Sphere polar resolution");
  figures->add_option("--closeup-nphi", fig.closeup_n_phi, "Close-up azimuthal resolution");
  figures->add_option("--closeup-ngamma", fig.closeup_n_gamma, "Close-up polar resolution");
  add_config(figures);

  DistanceConfig dst;
  std::string dst_p, dst_q;
  std::string dst_metric = "riemannian";
  auto* distance = app.add_subcommand("distance", "Distance between two points");
  distance->add_option("p", dst_p, "First point x,y,z");
  distance->add_option("q", dst_q, "Second point x,y,z");
  distance->add_option("--metric", dst_metric, "riemannian or cygan");
  distance->add_flag("--all-candidates", dst.all_candidates,
                     "List every geodesic found from p to q as JSON lines");
  distance->add_option("--tol", dst.tol, "Endpoint tolerance for the shooting solver");
  distance->add_option("--out", dst.out, "Output file (stdout when omitted)");
  add_config(distance);

  auto* curvature =
      app.add_subcommand("curvature", "Print the connection table and sectional curvatures");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      if (!config_path.empty()) apply_config(*sub, config_path);
    }

    if (geodesic->parsed()) {
      geo.base = parse_point(geo_base);
      geo.format = parse_polyline_format(geo_format);
      run_geodesic(geo, out);
    } else if (sphere->parsed()) {
      sph.normal = parse_vector(sph_normal);
      sph.format = parse_mesh_format(sph_format);
      run_sphere(sph, out);
    } else if (surface->parsed()) {
      srf.format = parse_mesh_format(srf_format);
      run_surface(srf, out);
    } else if (figures->parsed()) {
      fig.out_dir = fig_dir;
      fig.format = parse_mesh_format(fig_format);
      run_figures(fig, out);
    } else if (distance->parsed()) {
      if (dst_p.empty() || dst_q.empty()) throw UsageError("distance needs two points p q");
      dst.p = parse_point(dst_p);
      dst.q = parse_point(dst_q);
      if (dst_metric == "riemannian") {
        dst.metric = DistanceMetric::riemannian;
      } else if (dst_metric == "cygan") {
        dst.metric = DistanceMetric::cygan;
      } else {
        throw UsageError("--metric must be riemannian or cygan, got '" + dst_metric + "'");
      }
      run_distance(dst, out);
    } else if (curvature->parsed()) {
      run_curvature(out);
    }
    out.flush();
    if (!out) throw IoError("failed writing to standard output");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NoConvergence& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const NoSingularity& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  }
  return kOk;
}

}  // namespace heis::cli
