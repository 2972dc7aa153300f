#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/distance.hpp"
#include "support/random_points.hpp"

namespace {

using heis::GeodesicSpec;
using heis::HeisPoint;
using std::numbers::pi;

/// Length of the shortest geodesic from the origin to (0, 0, tau), tau > 0.
/// The k-th family of helices returning to the axis at that height has
/// gamma_k^2 = k pi / (2 tau - k pi) and length sqrt(k pi (2 tau - k pi));
/// k = 1 is the shortest whenever it exists, otherwise the vertical line.
double axis_distance(double tau) { return tau <= pi ? tau : std::sqrt(pi * (2 * tau - pi)); }

TEST(Cygan, Examples) {
  EXPECT_DOUBLE_EQ(heis::cygan_distance({}, {3, 4, 0}), 5.0);
  EXPECT_DOUBLE_EQ(heis::cygan_distance({}, {0, 0, 9}), 3.0);
  EXPECT_EQ(heis::cygan_distance({1, 2, 3}, {1, 2, 3}), 0.0);
}

TEST(Cygan, HomogeneousUnderDilation) {
  heis::testing::Sampler rng;
  for (int k = 0; k < 200; ++k) {
    const auto p = rng.point(3), q = rng.point(3);
    const double lam = rng.uniform(0.05, 20.0);
    const auto [scaled, expected] = heis::cygan_scaling_check(p, q, lam);
    EXPECT_NEAR(scaled, expected, 1e-10 * std::max(1.0, expected));
    EXPECT_NEAR(heis::cygan_distance(heis::dilate(p, lam), heis::dilate(q, lam)),
                lam * heis::cygan_distance(p, q), 1e-10 * std::max(1.0, expected));
  }
  EXPECT_THROW(heis::cygan_scaling_check({}, {1, 0, 0}, 0.0), std::invalid_argument);
}

TEST(Cygan, MetricAxioms) {
  heis::testing::Sampler rng;
  for (int k = 0; k < 2000; ++k) {
    const auto p = rng.point(2), q = rng.point(2), r = rng.point(2), g = rng.point(2);
    const double pq = heis::cygan_distance(p, q);
    EXPECT_NEAR(pq, heis::cygan_distance(q, p), 1e-12);
    EXPECT_NEAR(pq, heis::cygan_distance(heis::group_mul(g, p), heis::group_mul(g, q)), 1e-10);
    EXPECT_LE(pq, heis::cygan_distance(p, r) + heis::cygan_distance(r, q) + 1e-12);
  }
}

TEST(Shooting, HorizontalUnitStep) {
  EXPECT_NEAR(heis::riemannian_distance({}, {1, 0, 0}), 1.0, 1e-6);
  EXPECT_EQ(heis::riemannian_distance({2, -1, 4}, {2, -1, 4}), 0.0);
}

TEST(Shooting, AxisTargetsMatchClosedForm) {
  for (double tau : {0.25, 1.0, 3.0, pi, 3.5, 5.0, 2.5 * pi, 12.0}) {
    EXPECT_NEAR(heis::riemannian_distance({}, {0, 0, tau}), axis_distance(tau), 1e-8) << tau;
    EXPECT_NEAR(heis::riemannian_distance({}, {0, 0, -tau}), axis_distance(tau), 1e-8) << tau;
  }
}

TEST(Shooting, VerticalLineMinimizesOnlyUpToPi) {
  for (double tau : {1.0, 2.0, 3.1}) {
    EXPECT_NEAR(heis::riemannian_distance({}, {0, 0, tau}), tau, 1e-8);
  }
  for (double tau : {3.2, 4.0, 8.0}) {
    EXPECT_LT(heis::riemannian_distance({}, {0, 0, tau}), tau - 1e-4);
  }
}

TEST(Shooting, AllGeodesicsToReturnPoint) {
  const auto sols = heis::shoot_candidates({0, 0, 2.5 * pi});
  ASSERT_EQ(sols.size(), 3u);
  EXPECT_NEAR(sols[0].s, 2 * pi, 1e-8);
  EXPECT_NEAR(sols[0].spec.gamma(), 0.5, 1e-8);
  EXPECT_NEAR(sols[1].s, std::sqrt(6.0) * pi, 1e-8);
  EXPECT_NEAR(sols[1].spec.gamma(), std::sqrt(2.0 / 3.0), 1e-8);
  EXPECT_NEAR(sols[2].s, 2.5 * pi, 1e-8);
  EXPECT_NEAR(sols[2].spec.gamma(), 1.0, 1e-8);
}

TEST(Shooting, CandidatesReachTarget) {
  heis::testing::Sampler rng;
  for (int k = 0; k < 10; ++k) {
    const HeisPoint target = rng.point(2);
    const auto sols = heis::shoot_candidates(target);
    ASSERT_FALSE(sols.empty());
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const HeisPoint end = heis::geodesic_from_origin(sols[i].spec, sols[i].s);
      EXPECT_LT(std::hypot(end.x - target.x, end.y - target.y, end.z - target.z), 1e-9);
      EXPECT_LE(sols[i].residual, 1e-9);
      if (i > 0) EXPECT_GE(sols[i].s, sols[i - 1].s);
    }
  }
}

TEST(Shooting, ShortHorizontalTarget) {
  const auto sols = heis::shoot_candidates({1e-3, 0, 0});
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_NEAR(sols[0].s, 1e-3, 1e-12);
  EXPECT_NEAR(sols[0].spec.gamma(), 0.0, 1e-9);
  EXPECT_NEAR(std::remainder(sols[0].spec.phi(), 2 * pi), 0.0, 1e-9);
}

TEST(Shooting, RejectsDegenerateInput) {
  EXPECT_THROW(heis::shoot_candidates({}), std::invalid_argument);
  EXPECT_THROW(heis::shoot_candidates({1, 0, 0}, 0.0), std::invalid_argument);
}

TEST(Shooting, MatchesBruteForceSearch) {
  heis::testing::Sampler rng(77);
  for (int k = 0; k < 8; ++k) {
    const HeisPoint target = rng.point(2);
    const double fast = heis::riemannian_distance({}, target);
    const double slow = heis::brute_force_distance(target, {}, heis::path_length_bound(target));
    EXPECT_NEAR(fast, slow, 1e-3) << target.x << ',' << target.y << ',' << target.z;
  }
}

TEST(BruteForce, AxisClosedForm) {
  for (double tau : {2.0, 5.0}) {
    EXPECT_NEAR(heis::brute_force_distance({0, 0, tau}, {}, heis::path_length_bound({0, 0, tau})),
                axis_distance(tau), 1e-6);
  }
  EXPECT_THROW(heis::brute_force_distance({1, 0, 0}, {8, 64, 64}, 2.0), std::invalid_argument);
}

TEST(Distance, SymmetricAndLeftInvariant) {
  heis::testing::Sampler rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto p = rng.point(2), q = rng.point(2), g = rng.point(2);
    const double pq = heis::riemannian_distance(p, q);
    EXPECT_NEAR(pq, heis::riemannian_distance(q, p), 1e-9);
    EXPECT_NEAR(pq, heis::riemannian_distance(heis::group_mul(g, p), heis::group_mul(g, q)), 1e-9);
  }
}

TEST(Distance, TriangleInequality) {
  heis::testing::Sampler rng(11);
  for (int k = 0; k < 30; ++k) {
    const auto p = rng.point(2), q = rng.point(2), r = rng.point(2);
    EXPECT_LE(heis::riemannian_distance(p, q),
              heis::riemannian_distance(p, r) + heis::riemannian_distance(r, q) + 1e-6);
  }
}

TEST(Distance, BoundedByProjectionAndPathBound) {
  // (x, y) projection shortens lengths, so d >= |planar offset|.
  heis::testing::Sampler rng(3);
  for (int k = 0; k < 20; ++k) {
    const HeisPoint t = rng.point(3);
    const double d = heis::riemannian_distance({}, t);
    EXPECT_GE(d, std::hypot(t.x, t.y) - 1e-12);
    EXPECT_LE(d, heis::path_length_bound(t) + 1e-12);
  }
}

TEST(Distance, ExpIsMinimizingInsideInjectivityRadius) {
  heis::testing::Sampler rng(9);
  for (int k = 0; k < 20; ++k) {
    const GeodesicSpec spec(rng.uniform(-1, 1), rng.uniform(0, 2 * pi));
    const double s = rng.uniform(0.1, 3.0);
    EXPECT_NEAR(heis::riemannian_distance({}, heis::geodesic_from_origin(spec, s)), s, 1e-8);
  }
}

}  // namespace
