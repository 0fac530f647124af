#include <doctest.h>

#include <cmath>
#include <random>

#include "mole/problem.hpp"
#include "support.hpp"

using namespace mole;

TEST_SUITE("problem_core") {

TEST_CASE("test problems evaluate to the hand-substituted values") {
  Mop aspar = make_test_problem(TestProblem::Aspar);
  const Objectives a = aspar.evaluate(Vec{1.0, 1.0});
  CHECK(a[0] == doctest::Approx(2.0));
  CHECK(a[1] == doctest::Approx(3.25));
  CHECK(aspar.evaluate(Vec{-0.5, 2.0})[1] == 0.0);

  Mop rosen = make_test_problem(TestProblem::BiRosenbrock);
  const Objectives r = rosen.evaluate(Vec{1.0, 1.0});
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(5.0));

  Mop sphere = make_test_problem(TestProblem::BiSphere);
  const Objectives s0 = sphere.evaluate(Vec{-1.0, -1.0});
  CHECK(s0[0] == 0.0);
  CHECK(s0[1] == doctest::Approx(8.0));
  const Objectives s1 = sphere.evaluate(Vec{1.0, 1.0});
  CHECK(s1[0] == doctest::Approx(8.0));
  CHECK(s1[1] == 0.0);

  TestProblemParams p;
  p.scale1 = 100.0;
  Mop scaled = make_test_problem(TestProblem::BiSphere, p);
  CHECK(scaled.evaluate(Vec{1.0, 1.0})[0] == doctest::Approx(800.0));
}

TEST_CASE("finite-difference gradients match hand derivatives") {
  Mop sphere = make_test_problem(TestProblem::BiSphere);
  sphere.without_gradients();
  const GradientPair g = sphere.estimate_gradients(Vec{0.0, 0.0});
  CHECK(g.g1[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(g.g1[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(g.g2[0] == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(g.g2[1] == doctest::Approx(-2.0).epsilon(1e-5));

  Mop aspar = make_test_problem(TestProblem::Aspar);
  aspar.without_gradients();
  const GradientPair h = aspar.estimate_gradients(Vec{1.0, 1.0});
  CHECK(std::abs(h.g1[0] - 0.0) < 1e-5);
  CHECK(std::abs(h.g1[1] - 4.0) < 1e-5);
  CHECK(std::abs(h.g2[0] - 3.0) < 1e-5);
  CHECK(std::abs(h.g2[1] + 2.0) < 1e-5);
}

TEST_CASE("analytic gradients bypass the counter") {
  Mop aspar = make_test_problem(TestProblem::Aspar);
  const GradientPair g = aspar.estimate_gradients(Vec{1.0, 1.0});
  CHECK(aspar.evaluations() == 0);
  CHECK(g.g1 == Vec{0.0, 4.0});
  CHECK(g.g2 == Vec{3.0, -2.0});
}

TEST_CASE("budget accounting is exact") {
  std::mt19937_64 rng(7);
  for (std::size_t d : {1u, 2u, 5u}) {
    TestProblemParams params;
    params.dimension = d;
    Mop mop = make_test_problem(TestProblem::BiSphere, params);
    mop.without_gradients();
    std::size_t k = 0, g = 0;
    for (int i = 0; i < 30; ++i) {
      const Vec x = test::random_vec(rng, d, -4.0, 4.0);
      if (rng() % 2 == 0) {
        mop.evaluate(x);
        ++k;
      } else {
        mop.estimate_gradients(x);
        ++g;
      }
    }
    CHECK(mop.evaluations() == k + 2 * d * g);
  }
}

TEST_CASE("budget exhaustion aborts evaluation and gradient estimation") {
  Mop mop = make_test_problem(TestProblem::BiSphere);
  mop.without_gradients().with_budget(5);
  mop.evaluate(Vec{0.0, 0.0});
  mop.evaluate(Vec{0.0, 0.0});
  try {
    mop.estimate_gradients(Vec{0.5, 0.5});
    FAIL("expected BudgetExhausted");
  } catch (const MoleError& e) {
    CHECK(e.code() == ErrorCode::BudgetExhausted);
  }
  CHECK(mop.evaluations() <= 5);
  CHECK_THROWS_AS(Mop(mop).with_budget(0).evaluate(Vec{0.0, 0.0}), MoleError);
}

TEST_CASE("evaluation errors") {
  Mop mop = make_test_problem(TestProblem::BiSphere);
  CHECK_THROWS_AS(mop.evaluate(Vec{0.0}), MoleError);
  CHECK_THROWS_AS(mop.evaluate(Vec{6.0, 0.0}), MoleError);
  Mop nan(1, [](std::span<const double>) { return Objectives{std::nan(""), 0.0}; });
  try {
    nan.evaluate(Vec{0.0});
    FAIL("expected NonFiniteObjective");
  } catch (const MoleError& e) {
    CHECK(e.code() == ErrorCode::NonFiniteObjective);
  }
}

TEST_CASE("one-sided differences next to a bound stay feasible") {
  Mop mop = make_test_problem(TestProblem::BiSphere);
  mop.without_gradients();
  const GradientPair g = mop.estimate_gradients(Vec{5.0, -5.0});
  CHECK(g.g1[0] == doctest::Approx(12.0).epsilon(1e-4));
  CHECK(g.g1[1] == doctest::Approx(-8.0).epsilon(1e-4));
  CHECK(mop.evaluations() == 4);
}

TEST_CASE("dominance relation") {
  CHECK(dominates({0, 0}, {1, 1}) == Dominance::Dominates);
  CHECK(dominates({1, 1}, {0, 0}) == Dominance::DominatedBy);
  CHECK(dominates({0, 1}, {1, 0}) == Dominance::Incomparable);
  CHECK(dominates({1, 0}, {1, 0}) == Dominance::Equal);
}

TEST_CASE("dominance is a strict partial order on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(0, 3);
  for (int i = 0; i < 20000; ++i) {
    const Objectives a{double(u(rng)), double(u(rng))};
    const Objectives b{double(u(rng)), double(u(rng))};
    const Objectives c{double(u(rng)), double(u(rng))};
    CHECK_FALSE(pareto_dominates(a, a));
    if (pareto_dominates(a, b)) CHECK_FALSE(pareto_dominates(b, a));
    if (pareto_dominates(a, b) && pareto_dominates(b, c)) CHECK(pareto_dominates(a, c));
    CHECK((dominates(a, b) == Dominance::Dominates) ==
          (dominates(b, a) == Dominance::DominatedBy));
  }
}

TEST_CASE("box diagonal") {
  CHECK(diag(BoxBounds(Vec(2, -5.0), Vec(2, 5.0))) == doctest::Approx(std::sqrt(200.0)));
  CHECK(diag(BoxBounds(Vec(3, 0.0), Vec(3, 1.0))) == doctest::Approx(std::sqrt(3.0)));
  CHECK(diag(BoxBounds(Vec(20, -5.0), Vec(20, 5.0))) == doctest::Approx(std::sqrt(2000.0)));
  CHECK(diag(std::nullopt, BoxBounds(Vec(1, 0.0), Vec(1, 2.0))) == doctest::Approx(2.0));
  CHECK_THROWS_AS(diag(std::nullopt), MoleError);
  CHECK_THROWS_AS(BoxBounds(Vec{1.0}, Vec{1.0}), MoleError);
}

TEST_CASE("finite differences agree with analytic gradients at random interior points") {
  std::mt19937_64 rng(3);
  for (TestProblem p : {TestProblem::BiSphere, TestProblem::Aspar, TestProblem::BiRosenbrock}) {
    Mop mop = make_test_problem(p);
    for (int i = 0; i < 100; ++i) {
      const Vec x = test::random_vec(rng, 2, -4.5, 4.5);
      const GradientPair a = mop.estimate_gradients(x);
      const GradientPair f = mop.finite_difference_gradients(x);
      const double e1 = test::euclid(a.g1, f.g1) / std::max(1.0, norm(a.g1));
      const double e2 = test::euclid(a.g2, f.g2) / std::max(1.0, norm(a.g2));
      CHECK(e1 <= 1e-4);
      CHECK(e2 <= 1e-4);
    }
  }
}

TEST_CASE("name-based construction") {
  CHECK(make_test_problem("Bi-Sphere", {{"dim", "3"}}).dimension() == 3);
  CHECK(make_test_problem("bi_rosenbrock", {}).name() == "birosenbrock");
  try {
    make_test_problem("nosuch", {});
    FAIL("expected UnknownProblem");
  } catch (const MoleError& e) {
    CHECK(e.code() == ErrorCode::UnknownProblem);
    CHECK(std::string(e.what()).find("nosuch") != std::string::npos);
  }
  CHECK_THROWS_AS(make_test_problem("aspar", {{"dim", "3"}}), MoleError);
  CHECK_THROWS_AS(make_test_problem("bisphere", {{"bogus", "1"}}), MoleError);
  Mop m = make_test_problem("bisphere", {{"c1", "0,0"}, {"c2", "2,0"}, {"scale1", "100"}});
  CHECK(m.evaluate(Vec{2.0, 0.0})[0] == doctest::Approx(400.0));
}

}
