#include "heis/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "parallel.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double a) {
  double p = std::fmod(a, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

double angle_gap(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Residual of the reduced problem: signed chord minus sign * planar radius,
// height minus target height.
struct Reduced {
  double rho;
  double z;
  double sign;

  Eigen::Vector2d operator()(const Eigen::Vector2d& q) const {
    const auto [chord, height] = radial_profile_polar(q[0], q[1]);
    return {chord - sign * rho, height - z};
  }
};

std::optional<Eigen::Vector2d> newton_reduced(const Reduced& f, Eigen::Vector2d q,
                                              const ShootingOptions& opt) {
  Eigen::Vector2d fq = f(q);
  for (int it = 0; it <= opt.max_iterations; ++it) {
    if (fq.lpNorm<Eigen::Infinity>() <= opt.newton_tol) return q;
    if (it == opt.max_iterations) break;

    Eigen::Matrix2d jac;
    for (int c = 0; c < 2; ++c) {
      const double h = 1e-7 * std::max(1.0, std::abs(q[c]));
      Eigen::Vector2d lo = q, hi = q;
      lo[c] -= h;
      hi[c] += h;
      jac.col(c) = (f(hi) - f(lo)) / (2.0 * h);
    }
    const double det = jac.determinant();
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
    const Eigen::Vector2d step = -jac.inverse() * fq;

    // Backtrack on the residual norm; s must stay positive.
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      Eigen::Vector2d trial = q + lambda * step;
      if (!(trial[1] > 0.0)) continue;
      const Eigen::Vector2d ft = f(trial);
      if (ft.allFinite() && ft.norm() < fq.norm()) {
        q = trial;
        fq = ft;
        improved = true;
        break;
      }
    }
    if (!improved) return std::nullopt;
  }
  return std::nullopt;
}

bool same_solution(const ShootingSolution& a, const ShootingSolution& b) {
  return std::abs(a.spec.gamma() - b.spec.gamma()) + angle_gap(a.spec.phi(), b.spec.phi()) +
             std::abs(a.s - b.s) <
         1e-6;
}

}  // namespace

double cygan_distance(const HeisPoint& p, const HeisPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  const double planar2 = dx * dx + dy * dy;
  const double vertical = p.z - q.z + (p.x * q.y - p.y * q.x);
  return std::sqrt(std::sqrt(planar2 * planar2 + vertical * vertical));
}

std::pair<double, double> cygan_scaling_check(const HeisPoint& p, const HeisPoint& q,
                                              double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return {cygan_distance(dilate(p, lambda), dilate(q, lambda)), lambda * cygan_distance(p, q)};
}

std::vector<ShootingSolution> shoot_candidates(const HeisPoint& target, double tol,
                                               const ShootingOptions& opt) {
  if (!target.finite()) throw std::invalid_argument("shooting target must be finite");
  if (target == HeisPoint{}) throw std::invalid_argument("shooting target is the origin");
  if (!(tol > 0.0)) throw std::invalid_argument("shooting tolerance must be positive");
  if (opt.gamma_seeds < 2 || opt.s_seeds < 1) {
    throw std::invalid_argument("shooting needs at least 2 gamma seeds and 1 s seed");
  }

  const double rho = std::hypot(target.x, target.y);
  const bool on_axis = rho == 0.0;
  const double heading = on_axis ? 0.0 : std::atan2(target.y, target.x);
  const int n_branches = on_axis ? 1 : 2;

  const auto n_rows = static_cast<std::size_t>(opt.gamma_seeds);
  std::vector<std::vector<ShootingSolution>> per_row(n_rows);

  detail::parallel_for(n_rows, [&](std::size_t row) {
    const double gamma0 = -1.0 + 2.0 * static_cast<double>(row) / (opt.gamma_seeds - 1);
    // The height has the sign of gamma (both terms of z do), so a seed on the
    // wrong side can only reach the target by crossing gamma = 0.
    if (gamma0 * target.z < 0.0) return;
    const double span =
        std::min(4.0 * kPi / std::max(std::abs(gamma0), opt.min_gamma_for_span), opt.s_cap);
    const double psi0 = std::asin(gamma0);
    auto& found = per_row[row];

    for (int branch = 0; branch < n_branches; ++branch) {
      const Reduced f{rho, target.z, branch == 0 ? 1.0 : -1.0};
      for (int k = 1; k <= opt.s_seeds; ++k) {
        const double s0 = span * k / opt.s_seeds;
        const auto q = newton_reduced(f, Eigen::Vector2d{psi0, s0}, opt);
        if (!q) continue;
        const double s = (*q)[1];
        const double gamma = std::clamp(std::sin((*q)[0]), -1.0, 1.0);
        // Chord sign with r >= 0 decides which way the endpoint faces.
        const double chord = radial_profile(gamma, s).chord;
        const double phi = on_axis ? 0.0 : heading - gamma * s + (chord < 0.0 ? kPi : 0.0);

        ShootingSolution sol{GeodesicSpec(gamma, phi), s, 0.0};
        const HeisPoint end = geodesic_from_origin(sol.spec, s);
        sol.residual = (end.vec() - target.vec()).norm();
        if (!(sol.residual <= tol)) continue;
        if (std::none_of(found.begin(), found.end(),
                         [&](const ShootingSolution& o) { return same_solution(o, sol); })) {
          found.push_back(sol);
        }
      }
    }
  });

  std::vector<ShootingSolution> all;
  for (auto& row : per_row) {
    for (auto& sol : row) {
      auto twin = std::find_if(all.begin(), all.end(),
                               [&](const ShootingSolution& o) { return same_solution(o, sol); });
      if (twin == all.end()) {
        all.push_back(sol);
      } else if (sol.residual < twin->residual) {
        *twin = sol;
      }
    }
  }
  if (all.empty()) {
    throw NoConvergence("no geodesic from the origin reached the target within tolerance");
  }
  std::sort(all.begin(), all.end(), [](const ShootingSolution& a, const ShootingSolution& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.spec.gamma() != b.spec.gamma()) return a.spec.gamma() < b.spec.gamma();
    return a.spec.phi() < b.spec.phi();
  });
  return all;
}

double riemannian_distance(const HeisPoint& p, const HeisPoint& q, double tol,
                           const ShootingOptions& options) {
  if (p == q) return 0.0;
  const HeisPoint target = group_mul(group_inv(p), q);
  if (target == HeisPoint{}) return 0.0;
  return shoot_candidates(target, tol, options).front().s;
}

double path_length_bound(const HeisPoint& target) {
  return std::hypot(target.x, target.y) + std::abs(target.z);
}

namespace {

// Newton on the full tangent vector: exp(0, v) = target. Returns |v|.
std::optional<double> polish_tangent(const HeisPoint& target, Eigen::Vector3d v) {
  const Eigen::Vector3d goal = target.vec();
  auto f = [&](const Eigen::Vector3d& w) {
    return Eigen::Vector3d(exp_map({}, FrameVector{w[0], w[1], w[2]}).vec() - goal);
  };
  Eigen::Vector3d fv = f(v);
  for (int it = 0; it < 60; ++it) {
    if (fv.lpNorm<Eigen::Infinity>() <= 1e-11) return v.norm();
    Eigen::Matrix3d jac;
    for (int c = 0; c < 3; ++c) {
      const double h = 1e-7 * std::max(1.0, std::abs(v[c]));
      Eigen::Vector3d lo = v, hi = v;
      lo[c] -= h;
      hi[c] += h;
      jac.col(c) = (f(hi) - f(lo)) / (2.0 * h);
    }
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::Vector3d step = -lu.solve(fv);
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      const Eigen::Vector3d trial = v + lambda * step;
      const Eigen::Vector3d ft = f(trial);
      if (ft.allFinite() && ft.norm() < fv.norm()) {
        v = trial;
        fv = ft;
        improved = true;
        break;
      }
    }
    if (!improved) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

double brute_force_distance(const HeisPoint& target, const BruteForceGrid& grid, double s_max) {
  if (grid.n_gamma < 16 || grid.n_phi < 16 || grid.n_s < 16) {
    throw std::invalid_argument("brute-force grid needs at least 16 points per axis");
  }
  if (!(s_max > 0.0)) throw std::invalid_argument("brute-force s_max must be positive");
  if (target == HeisPoint{}) return 0.0;

  const int ng = grid.n_gamma, np = grid.n_phi, ns = grid.n_s;
  const double ds = s_max / ns;
  const double dg = 2.0 / (ng - 1);
  const double dp = kTwoPi / np;
  const Eigen::Vector3d goal = target.vec();

  auto gamma_at = [&](int i) { return i == ng - 1 ? 1.0 : -1.0 + dg * i; };
  auto level = [&](int k) {
    std::vector<Eigen::Vector3d> pts(static_cast<std::size_t>(ng) * np);
    const double s = ds * k;
    for (int i = 0; i < ng; ++i) {
      for (int j = 0; j < np; ++j) {
        pts[static_cast<std::size_t>(i) * np + j] =
            geodesic_from_origin(GeodesicSpec(gamma_at(i), dp * j), s).vec();
      }
    }
    return pts;
  };

  std::vector<Eigen::Vector3d> lower = level(0);
  double best = std::numeric_limits<double>::infinity();
  std::optional<double> first_hit;

  for (int k = 0; k < ns; ++k) {
    const double s_lo = ds * k;
    if (s_lo >= best) break;
    std::vector<Eigen::Vector3d> upper = level(k + 1);
    for (int i = 0; i + 1 < ng; ++i) {
      for (int j = 0; j < np; ++j) {
        const auto idx = [&](int a, int b) { return static_cast<std::size_t>(a) * np + (b % np); };
        const Eigen::Vector3d& e = lower[idx(i, j)];
        // Sum of the three image edges bounds the cell image's diameter to
        // first order; the factor covers curvature of the map across the cell.
        const double diameter = (lower[idx(i + 1, j)] - e).norm() +
                                (lower[idx(i, j + 1)] - e).norm() + (upper[idx(i, j)] - e).norm();
        if ((e - goal).norm() > 1.5 * diameter) continue;
        if (!first_hit) first_hit = s_lo + ds;

        const double g = gamma_at(i) + 0.5 * dg, phi = dp * (j + 0.5), s = s_lo + 0.5 * ds;
        const double r = std::sqrt(std::max(0.0, 1.0 - g * g));
        const Eigen::Vector3d v0{s * r * std::cos(phi), s * r * std::sin(phi), s * g};
        if (const auto len = polish_tangent(target, v0); len && *len < best) best = *len;
      }
    }
    lower = std::move(upper);
  }
  if (std::isfinite(best)) return best;
  if (first_hit) return *first_hit;
  throw NoConvergence("target not reachable within s_max on the brute-force grid");
}

}  // namespace heis
