#pragma once

// Subcommand implementations. Each takes a validated config and writes its
// result either to the named file or, when the path is empty or "-", to the
// given stream.

#include <array>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "heis/core.hpp"

namespace heis::cli {

/// Bad flag values (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failures (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kBadArgs = 2, kIo = 3, kSolver = 4 };

/// Parses "x,y,z" strictly (three finite decimals, nothing else).
HeisPoint parse_point(std::string_view text);

enum class MeshFormat { obj, ply };
enum class PolylineFormat { csv, jsonl };

MeshFormat parse_mesh_format(std::string_view name);
PolylineFormat parse_polyline_format(std::string_view name);

struct GeodesicConfig {
  double gamma{0.0};
  double phi{0.0};
  double s_max{6.283185307179586};
  int n{100};
  HeisPoint base{};
  PolylineFormat format{PolylineFormat::csv};
  std::string out;
};

struct SphereConfig {
  double radius{1.0};
  int n_phi{64};
  int n_gamma{65};
  bool clip_to_metric{false};
  double clip_tol{1e-3};
  bool half{false};
  std::array<double, 3> normal{0.0, 1.0, 0.0};
  MeshFormat format{MeshFormat::obj};
  std::string out;
};

struct SurfaceConfig {
  double theta_min{0.0};
  double theta_max{6.283185307179586};
  double s_min{0.0};
  double s_max{6.283185307179586};
  int n_theta{72};
  int n_s{48};
  MeshFormat format{MeshFormat::obj};
  std::string out;
};

struct FiguresConfig {
  std::filesystem::path out_dir{"figures"};
  MeshFormat format{MeshFormat::obj};
  int n_phi{64};
  int n_gamma{65};
  int closeup_n_phi{128};
  int closeup_n_gamma{65};
};

enum class DistanceMetric { riemannian, cygan };

struct DistanceConfig {
  HeisPoint p{};
  HeisPoint q{};
  DistanceMetric metric{DistanceMetric::riemannian};
  bool all_candidates{false};
  double tol{1e-9};
  std::string out;
};

// Each validates its config (UsageError) before doing any work.
void run_geodesic(const GeodesicConfig& cfg, std::ostream& out);
void run_sphere(const SphereConfig& cfg, std::ostream& out);
void run_surface(const SurfaceConfig& cfg, std::ostream& out);
/// Writes the figure meshes and manifest.json into cfg.out_dir; lists the
/// written files on `out`.
void run_figures(const FiguresConfig& cfg, std::ostream& out);
void run_distance(const DistanceConfig& cfg, std::ostream& out);
void run_curvature(std::ostream& out);

}  // namespace heis::cli
