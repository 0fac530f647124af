#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mole/efficient_set.hpp"
#include "mole/mog.hpp"
#include "support.hpp"

using namespace mole;

namespace {

Vec rotate(const Vec& v, double t) {
  return {std::cos(t) * v[0] - std::sin(t) * v[1], std::sin(t) * v[0] + std::cos(t) * v[1]};
}

// Closed-form geometric-mean direction, written out independently.
Vec gm_oracle(const Vec& a, const Vec& b) {
  const double na = std::hypot(a[0], a[1]), nb = std::hypot(b[0], b[1]);
  const double s = std::sqrt(na * nb) / 2.0;
  return {s * (a[0] / na + b[0] / nb), s * (a[1] / na + b[1] / nb)};
}

}  // namespace

TEST_SUITE("mog") {

TEST_CASE("convex hull examples") {
  const MogResult r = mog_convex_hull(Vec{1, 0}, Vec{0, 1});
  CHECK(r.direction[0] == doctest::Approx(0.5));
  CHECK(r.direction[1] == doctest::Approx(0.5));
  CHECK(r.weights[0] == doctest::Approx(0.5));
  const MogResult z = mog_convex_hull(Vec{1, 0}, Vec{-1, 0});
  CHECK(z.length() == doctest::Approx(0.0));

  // Short g1, long g2 at an acute angle: the result leans towards g1.
  const Vec g1{0.1, 0.0}, g2{3.0, 3.0};
  const MogResult b = mog_convex_hull(g1, g2);
  CHECK(angle_between(b.direction, g1) < angle_between(b.direction, g2));
}

TEST_CASE("normalized examples") {
  const MogResult r = mog_normalized(Vec{2, 0}, Vec{0, 3});
  CHECK(r.direction[0] == doctest::Approx(0.5));
  CHECK(r.direction[1] == doctest::Approx(0.5));
  CHECK(r.length() == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(mog_normalized(Vec{5, 0}, Vec{-1, 0}).length() == doctest::Approx(0.0));
  const MogResult d = mog_normalized(Vec{0, 0}, Vec{1, 1});
  CHECK(d.degenerate);
  CHECK(d.length() == 0.0);
}

TEST_CASE("geometric mean examples") {
  const Vec g{0.3, -1.7};
  const MogResult r = mog_geometric_mean(g, g);
  CHECK(r.direction[0] == doctest::Approx(g[0]).epsilon(1e-15));
  CHECK(r.direction[1] == doctest::Approx(g[1]).epsilon(1e-15));
  const MogResult d = mog_geometric_mean(Vec{0, 0}, Vec{4, 1});
  CHECK(d.degenerate);
  CHECK(d.direction == Vec{0.0, 0.0});
}

TEST_CASE("criticality examples") {
  Mop sphere = make_test_problem(TestProblem::BiSphere);
  const GradientPair mid = sphere.estimate_gradients(Vec{0, 0});
  CHECK(criticality(mid.g1, mid.g2, 1e-6).critical);
  const GradientPair off = sphere.estimate_gradients(Vec{2, 2});
  CHECK_FALSE(criticality(off.g1, off.g2, 1e-6).critical);
  Mop aspar = make_test_problem(TestProblem::Aspar);
  const GradientPair so = aspar.estimate_gradients(Vec{-0.5, 2.0});
  CHECK(criticality(so.g1, so.g2, 1e-6).critical);
}

TEST_CASE("properties over random gradient pairs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0), alpha(0.0, 1.0), rot(0.0, 6.28);
  std::uniform_real_distribution<double> loggamma(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec g1 = test::random_vec(rng, 2, -5.0, 5.0);
    const Vec g2 = test::random_vec(rng, 2, -5.0, 5.0);

    // Weights are a convex combination.
    for (MogVariant v : {MogVariant::ConvexHull, MogVariant::Normalized, MogVariant::GeometricMean}) {
      const MogResult r = compute_mog(v, g1, g2);
      CHECK(r.weights[0] >= 0.0);
      CHECK(r.weights[1] >= 0.0);
      CHECK(std::abs(r.weights[0] + r.weights[1] - 1.0) < 1e-12);
    }

    // Convex hull: valid descent direction and minimal over the hull.
    const MogResult ch = mog_convex_hull(g1, g2);
    if (ch.length() > 1e-12) {
      CHECK(dot(ch.direction, g1) > 0.0);
      CHECK(dot(ch.direction, g2) > 0.0);
    }
    for (int k = 0; k < 20; ++k) {
      const double a = alpha(rng);
      const Vec c{a * g1[0] + (1 - a) * g2[0], a * g1[1] + (1 - a) * g2[1]};
      CHECK(ch.length() <= norm(c) + 1e-12);
    }

    // Normalized: never longer than one.
    CHECK(mog_normalized(g1, g2).length() <= 1.0 + 1e-15);

    // Geometric mean against the closed form.
    const MogResult gm = mog_geometric_mean(g1, g2);
    const Vec o = gm_oracle(g1, g2);
    CHECK(test::euclid(gm.direction, o) <= 1e-12 * std::max(1.0, norm(o)));

    // Scaling law.
    const double gamma = std::pow(10.0, loggamma(rng));
    const Vec sg1{gamma * g1[0], gamma * g1[1]};
    const MogResult scaled = mog_geometric_mean(sg1, g2);
    const Vec expect{std::sqrt(gamma) * gm.direction[0], std::sqrt(gamma) * gm.direction[1]};
    CHECK(test::euclid(scaled.direction, expect) <= 1e-10 * norm(expect));

    // Rotation equivariance.
    const double t = rot(rng);
    for (MogVariant v : {MogVariant::ConvexHull, MogVariant::Normalized, MogVariant::GeometricMean}) {
      const Vec a = rotate(compute_mog(v, g1, g2).direction, t);
      const Vec b = compute_mog(v, rotate(g1, t), rotate(g2, t)).direction;
      CHECK(test::euclid(a, b) <= 1e-10 * std::max(1.0, norm(a)));
    }
  }
}

TEST_CASE("normalized length is one exactly for parallel gradients") {
  CHECK(mog_normalized(Vec{1, 2}, Vec{3, 6}).length() == doctest::Approx(1.0));
  CHECK(mog_normalized(Vec{1, 2}, Vec{3, 5.9}).length() < 1.0);
}

}
