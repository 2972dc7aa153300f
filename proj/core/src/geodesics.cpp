#include "heis/geodesics.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

// 1 - g^2 without cancellation near |g| = 1.
double one_minus_sq(double g) { return (1.0 - g) * (1.0 + g); }

// sin(u) / u.
double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
  }
  return std::sin(u) / u;
}

// (u - sin u) / u^2, odd in u.
double versed_kernel(double u) {
  if (std::abs(u) < 0.1) {
    const double u2 = u * u;
    return u * (1.0 / 6.0 - u2 * (1.0 / 120.0 - u2 * (1.0 / 5040.0 - u2 / 362880.0)));
  }
  return (u - std::sin(u)) / (u * u);
}

using State = std::array<double, 6>;  // alpha, beta, gamma, x, y, z

State rhs(const State& q) {
  const auto& [a, b, g, x, y, z] = q;
  (void)z;
  return {-2.0 * g * b, 2.0 * g * a, 0.0, a, b, g - a * y + b * x};
}

State axpy(const State& q, double h, const State& k) {
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = q[i] + h * k[i];
  return out;
}

GeodesicSample sample_from_state(double s, const State& q) {
  GeodesicSample smp;
  smp.s = s;
  smp.point = {q[3], q[4], q[5]};
  smp.velocity_frame = {q[0], q[1], q[2]};
  smp.velocity_coord = frame_to_coord(smp.point, smp.velocity_frame);
  return smp;
}

}  // namespace

GeodesicSpec::GeodesicSpec(double gamma, double phi, HeisPoint base) : base_(base) {
  if (!std::isfinite(gamma) || !std::isfinite(phi) || !base.finite()) {
    throw std::invalid_argument("geodesic spec requires finite gamma, phi and base");
  }
  if (std::abs(gamma) > 1.0) {
    throw std::invalid_argument("geodesic spec requires |gamma| <= 1, got " +
                                std::to_string(gamma));
  }
  gamma_ = gamma;
  r_ = std::sqrt(one_minus_sq(gamma));
  phi_ = r_ == 0.0 ? 0.0 : normalize_angle(phi);
}

GeodesicSpec GeodesicSpec::from_velocity(const FrameVector& v, HeisPoint base) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("geodesic direction must be a nonzero finite vector");
  }
  const double gamma = std::clamp(v.c / n, -1.0, 1.0);
  const double phi = (v.a == 0.0 && v.b == 0.0) ? 0.0 : std::atan2(v.b, v.a);
  return GeodesicSpec(gamma, phi, base);
}

GeodesicSpec GeodesicSpec::with_base(const HeisPoint& base) const {
  GeodesicSpec out = *this;
  out.base_ = base;
  return out;
}

FrameVector GeodesicSpec::initial_velocity() const {
  return {r_ * std::cos(phi_), r_ * std::sin(phi_), gamma_};
}

namespace {
RadialProfile profile(double gamma, double r, double r2, double s) {
  return {r * s * sinc(gamma * s), gamma * s + r2 * s * s * versed_kernel(2.0 * gamma * s)};
}
}  // namespace

RadialProfile radial_profile(double gamma, double s) {
  const double r2 = one_minus_sq(gamma);
  return profile(gamma, std::sqrt(r2), r2, s);
}

RadialProfile radial_profile_polar(double psi, double s) {
  const double r = std::cos(psi);
  return profile(std::sin(psi), r, r * r, s);
}

FrameVector velocity_frame_at(const GeodesicSpec& spec, double s) {
  const double theta = 2.0 * spec.gamma() * s + spec.phi();
  return {spec.r() * std::cos(theta), spec.r() * std::sin(theta), spec.gamma()};
}

HeisPoint closed_form_direct(const GeodesicSpec& spec, double s) {
  const double g = spec.gamma(), r = spec.r(), phi = spec.phi();
  if (g == 0.0) {
    throw std::domain_error("direct closed form is undefined at gamma = 0");
  }
  const double k = r / (2.0 * g);
  const double theta = 2.0 * g * s + phi;
  return {k * (std::sin(theta) - std::sin(phi)),
          k * (std::cos(phi) - std::cos(theta)),
          (1.0 + g * g) / (2.0 * g) * s - one_minus_sq(g) / (4.0 * g * g) * std::sin(2.0 * g * s)};
}

HeisPoint closed_form_expanded(const GeodesicSpec& spec, double s) {
  // sin A - sin B and cos B - cos A as products: the planar part becomes
  // chord * (cos, sin)(gamma s + phi), and z = gamma s + r^2 s^2 (u - sin u)/u^2
  // with u = 2 gamma s.
  const auto [chord, height] = radial_profile(spec.gamma(), s);
  const double theta = spec.gamma() * s + spec.phi();
  return {chord * std::cos(theta), chord * std::sin(theta), height};
}

HeisPoint geodesic_from_origin(const GeodesicSpec& spec, double s) {
  if (std::abs(spec.gamma()) >= kSmallGamma) return closed_form_direct(spec, s);
  return closed_form_expanded(spec, s);
}

HeisPoint geodesic_from_point(const GeodesicSpec& spec, double s) {
  if (s == 0.0) return spec.base();
  return group_mul(spec.base(), geodesic_from_origin(spec, s));
}

HeisPoint exp_map(const HeisPoint& base, const FrameVector& v) {
  const double n = v.norm();
  if (n == 0.0) return base;
  return geodesic_from_point(GeodesicSpec::from_velocity(v, base), n);
}

GeodesicSample sample_geodesic(const GeodesicSpec& spec, double s) {
  GeodesicSample smp;
  smp.s = s;
  smp.point = geodesic_from_point(spec, s);
  smp.velocity_frame = velocity_frame_at(spec, s);
  smp.velocity_coord = frame_to_coord(smp.point, smp.velocity_frame);
  return smp;
}

std::vector<GeodesicSample> integrate_geodesic(const GeodesicSpec& spec, double s_max,
                                               int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("integrate_geodesic: n_steps must be >= 1");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) {
    throw std::invalid_argument("integrate_geodesic: s_max must be positive and finite");
  }
  const FrameVector v0 = spec.initial_velocity();
  const HeisPoint& p0 = spec.base();
  State q{v0.a, v0.b, v0.c, p0.x, p0.y, p0.z};

  const double h = s_max / n_steps;
  std::vector<GeodesicSample> out;
  out.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.push_back(sample_from_state(0.0, q));
  for (int i = 1; i <= n_steps; ++i) {
    const State k1 = rhs(q);
    const State k2 = rhs(axpy(q, 0.5 * h, k1));
    const State k3 = rhs(axpy(q, 0.5 * h, k2));
    const State k4 = rhs(axpy(q, h, k3));
    for (std::size_t c = 0; c < q.size(); ++c) {
      q[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    for (double c : q) {
      if (!std::isfinite(c)) {
        throw std::runtime_error("integrate_geodesic: non-finite state at step " +
                                 std::to_string(i));
      }
    }
    out.push_back(sample_from_state(i == n_steps ? s_max : i * h, q));
  }
  return out;
}

}  // namespace heis
