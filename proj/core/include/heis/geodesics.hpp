#pragma once

// Unit-speed geodesics of the left-invariant metric.
//
// A geodesic with frame velocity (alpha, beta, gamma) satisfies
//   alpha' = -2 gamma beta,  beta' = 2 gamma alpha,  gamma' = 0
// and its coordinates follow
//   x' = alpha,  y' = beta,  z' = gamma - alpha y + beta x.
// From the origin, with alpha(0) = r cos(phi), beta(0) = r sin(phi) and
// r = sqrt(1 - gamma^2), the solution is
//   x = r/(2 gamma) (sin(2 gamma s + phi) - sin(phi))
//   y = r/(2 gamma) (cos(phi) - cos(2 gamma s + phi))
//   z = (1 + gamma^2)/(2 gamma) s - (1 - gamma^2)/(4 gamma^2) sin(2 gamma s)
// and the straight line (r s cos(phi), r s sin(phi), 0) when gamma = 0.
// Arc length is called s throughout.

#include <vector>

#include "heis/core.hpp"

namespace heis {

/// |gamma| below which the closed form switches to its cancellation-free expansion.
inline constexpr double kSmallGamma = 1e-4;

/// Initial data of a unit-speed geodesic. Invariants: |gamma| <= 1,
/// r = sqrt(1 - gamma^2), phi in [0, 2 pi), phi = 0 whenever r = 0.
class GeodesicSpec {
 public:
  GeodesicSpec() = default;
  /// Throws std::invalid_argument for non-finite input or |gamma| > 1.
  GeodesicSpec(double gamma, double phi, HeisPoint base = {});

  /// Spec of the geodesic with the given (nonzero) initial frame velocity; the
  /// velocity is normalized. Throws std::invalid_argument for a zero vector.
  static GeodesicSpec from_velocity(const FrameVector& v, HeisPoint base = {});

  [[nodiscard]] const HeisPoint& base() const { return base_; }
  [[nodiscard]] double r() const { return r_; }
  [[nodiscard]] double phi() const { return phi_; }
  [[nodiscard]] double gamma() const { return gamma_; }

  [[nodiscard]] GeodesicSpec with_base(const HeisPoint& base) const;
  [[nodiscard]] FrameVector initial_velocity() const;

 private:
  HeisPoint base_{};
  double r_{1.0};
  double phi_{0.0};
  double gamma_{0.0};
};

struct GeodesicSample {
  double s{0.0};
  HeisPoint point;
  FrameVector velocity_frame;
  CoordVector velocity_coord;
};

/// phi-independent part of the geodesic from the origin: the signed planar
/// chord r s sinc(gamma s) (so x + iy = chord * exp(i(gamma s + phi))) and the height z.
struct RadialProfile {
  double chord{0.0};
  double height{0.0};
};
RadialProfile radial_profile(double gamma, double s);
/// Same profile with gamma = sin(psi), r = cos(psi); smooth in psi across |gamma| = 1.
RadialProfile radial_profile_polar(double psi, double s);

/// Frame components of the velocity at arc length s.
FrameVector velocity_frame_at(const GeodesicSpec& spec, double s);

/// Point at arc length s on the geodesic leaving the origin; spec.base() is ignored.
HeisPoint geodesic_from_origin(const GeodesicSpec& spec, double s);

/// The two evaluation routes of geodesic_from_origin, exposed for testing.
/// `closed_form_direct` is the textbook formula (requires gamma != 0);
/// `closed_form_expanded` rewrites it without cancellation and is valid for all gamma.
HeisPoint closed_form_direct(const GeodesicSpec& spec, double s);
HeisPoint closed_form_expanded(const GeodesicSpec& spec, double s);

/// Left translation of the origin geodesic to spec.base().
HeisPoint geodesic_from_point(const GeodesicSpec& spec, double s);

/// Riemannian exponential map at `base`; v need not be unit length.
HeisPoint exp_map(const HeisPoint& base, const FrameVector& v);

/// Sample at arc length s from the closed form.
GeodesicSample sample_geodesic(const GeodesicSpec& spec, double s);

/// Fixed-step classical RK4 on the six-dimensional system
/// (alpha, beta, gamma, x, y, z), starting at spec.base(). Returns
/// n_steps + 1 samples including both endpoints. Throws
/// std::invalid_argument for n_steps < 1 or s_max <= 0 and
/// std::runtime_error if the state becomes non-finite.
std::vector<GeodesicSample> integrate_geodesic(const GeodesicSpec& spec, double s_max,
                                               int n_steps);

}  // namespace heis
