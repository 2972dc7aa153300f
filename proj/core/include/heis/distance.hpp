#pragma once

// Distances on the Heisenberg group: the Cygan gauge distance, the Riemannian
// distance of the left-invariant metric computed by geodesic shooting, and a
// grid-search oracle for the latter.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heis/core.hpp"
#include "heis/geodesics.hpp"

namespace heis {

/// Raised when no connecting geodesic could be found.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A geodesic from the origin reaching a target.
struct ShootingSolution {
  GeodesicSpec spec;     // base is the origin
  double s{0.0};         // arc length, > 0
  double residual{0.0};  // Euclidean gap between endpoint and target
};

struct ShootingOptions {
  int gamma_seeds{32};
  int s_seeds{128};
  int max_iterations{50};
  double newton_tol{1e-10};  // on the (chord, height) residual
  double s_cap{100.0};       // upper end of the longest seed row
  double min_gamma_for_span{0.05};
};

/// (|w - w'|^4 + (z - z' + Im<w, w'>)^2)^(1/4) with Im<w, w'> = x y' - y x',
/// which equals the gauge of p^-1 q.
double cygan_distance(const HeisPoint& p, const HeisPoint& q);

/// Returns (rho(d(p), d(q)), lambda * rho(p, q)) for the dilation d = dilate(., lambda).
/// Throws std::invalid_argument unless lambda > 0.
std::pair<double, double> cygan_scaling_check(const HeisPoint& p, const HeisPoint& q,
                                              double lambda);

/// All geodesics from the origin found to end within `tol` of `target`,
/// deduplicated and sorted by arc length.
///
/// By rotational symmetry about the z-axis the endpoint's planar radius and
/// height depend only on (gamma, s), so the boundary-value problem is solved
/// in those two unknowns (gamma = sin(psi) internally) and phi is recovered
/// from the direction of the target. Newton iterations are seeded from a
/// lattice over gamma in [-1, 1] and s in (0, min(4 pi / max(|gamma|, 0.05), 100)].
/// For targets on the z-axis phi is set to 0; every phi reaches them.
///
/// Throws std::invalid_argument if target is the origin or tol <= 0, and
/// NoConvergence if no seed converged.
std::vector<ShootingSolution> shoot_candidates(const HeisPoint& target, double tol = 1e-9,
                                               const ShootingOptions& options = {});

/// Length of the shortest geodesic found from p to q (0 when p == q).
/// Computed as the distance from the origin to p^-1 q. No global optimality
/// guarantee beyond the multistart coverage. Propagates NoConvergence.
double riemannian_distance(const HeisPoint& p, const HeisPoint& q, double tol = 1e-9,
                           const ShootingOptions& options = {});

struct BruteForceGrid {
  int n_gamma{64};
  int n_phi{64};
  int n_s{512};
};

/// Grid-search oracle for d(0, target). Scans gamma in [-1, 1], phi in
/// [0, 2 pi) and s in [0, s_max] in order of increasing s; a cell is a hit
/// when the target lies within its image's diameter. Each hit is polished by
/// Newton iteration on the full tangent vector v with exp(0, v) = target and
/// the smallest polished length is returned; the scan stops once the grid
/// passes it. If no hit polishes, the upper arc length of the first hit cell is
/// returned. Throws std::invalid_argument for grids below 16 per axis or
/// s_max <= 0 and NoConvergence if no cell reaches the target.
double brute_force_distance(const HeisPoint& target, const BruteForceGrid& grid, double s_max);

/// Length of the horizontal-then-vertical path to target: |(x, y)| + |z|.
/// An upper bound on d(0, target), used as the oracle's search span.
double path_length_bound(const HeisPoint& target);

}  // namespace heis
