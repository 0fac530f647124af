#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mole/landscape.hpp"
#include "mole/mog.hpp"
#include "support.hpp"

using namespace mole;

namespace {

GridSpec grid(double lo1, double lo2, double hi1, double hi2, std::size_t n) {
  GridSpec g;
  g.bounds = BoxBounds({lo1, lo2}, {hi1, hi2});
  g.nx = g.ny = n;
  return g;
}

GridSpec bisphere_grid() { return grid(-2, -2, 2, 2, 100); }
GridSpec aspar_grid() { return grid(-2, -1, 2, 3, 200); }

// Aspar with f1 multiplied by 100, gradients scaled accordingly.
Mop scaled_aspar() {
  Mop base = make_test_problem(TestProblem::Aspar);
  Mop m(2, [base](std::span<const double> x) {
    Objectives f = base.peek(x);
    f[0] *= 100.0;
    return f;
  });
  m.with_gradients([base](std::span<const double> x) mutable {
    GradientPair g = base.estimate_gradients(x);
    for (double& v : g.g1) v *= 100.0;
    return g;
  });
  m.with_bounds(*base.bounds());
  return m;
}

// Independent O(n^2) dominance counter over LE cells.
std::vector<std::uint32_t> brute_counts(const Landscape& l) {
  std::vector<std::uint32_t> out;
  for (const auto& a : l.cells) {
    if (!a.is_le) continue;
    std::uint32_t c = 0;
    for (const auto& b : l.cells) {
      if (b.is_le && pareto_dominates(b.f, a.f)) ++c;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<std::uint32_t> le_counts(const Landscape& l) {
  std::vector<std::uint32_t> out;
  for (const auto& c : l.cells) {
    if (c.is_le) out.push_back(c.dom_count);
  }
  return out;
}

}  // namespace

TEST_SUITE("landscape_grid") {

TEST_CASE("Bi-Sphere: diagonal cells on the segment are LE with height 0") {
  Mop mop = make_test_problem(TestProblem::BiSphere);
  const Landscape l = compute_landscape(mop, bisphere_grid());
  REQUIRE(l.cells.size() == 10000);
  std::size_t on_segment = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const GridCellRecord& c = l.cells[l.index(i, i)];
    if (std::abs(c.x1) < 1.0 - 0.04) {
      ++on_segment;
      CHECK(c.is_le);
      CHECK(c.height == 0.0);
    }
  }
  CHECK(on_segment > 40);
  // Every LE cell lies within one cell diagonal of the analytic segment.
  const double cell_diag = std::hypot(0.04, 0.04);
  for (const auto& c : l.cells) {
    if (c.is_le) {
      CHECK(test::segment_distance({c.x1, c.x2}, {-1, -1}, {1, 1}) <= cell_diag * (1 + 1e-9));
    }
  }
  CHECK(count_le_components(l) == 1);
  // Cells centred on the segment are globally efficient; only LE cells
  // beside it can be dominated.
  for (const auto& c : l.cells) {
    if (!c.is_le) continue;
    const double off = test::segment_distance({c.x1, c.x2}, {-1, -1}, {1, 1});
    if (off < 1e-12) CHECK(c.dom_count == 0);
    if (c.dom_count > 0) CHECK(off > 0.0);
  }
}

TEST_CASE("height recurrence and memoization") {
  for (TestProblem p : {TestProblem::BiSphere, TestProblem::Aspar}) {
    Mop mop = make_test_problem(p);
    const GridSpec g = p == TestProblem::Aspar ? aspar_grid() : bisphere_grid();
    const Landscape l = compute_landscape(mop, g);
    CHECK(height_violations(l) == 0);
    CHECK(l.resolutions == l.cells.size());
    const double dx = 4.0 / static_cast<double>(g.nx);
    const double dy = (g.bounds.upper[1] - g.bounds.lower[1]) / static_cast<double>(g.ny);
    for (const auto& c : l.cells) {
      CHECK(c.height >= 0.0);
      if (c.is_le || c.cycle_artifact) {
        CHECK(c.height == 0.0);
        CHECK(c.next == -1);
        continue;
      }
      // Independent recurrence: one grid step plus the successor's height.
      REQUIRE(c.next >= 0);
      const GridCellRecord& n = l.cells[static_cast<std::size_t>(c.next)];
      CHECK(std::abs(static_cast<long>(n.ix) - static_cast<long>(c.ix)) <= 1);
      CHECK(std::abs(static_cast<long>(n.iy) - static_cast<long>(c.iy)) <= 1);
      const double step = std::hypot((n.x1 - c.x1), (n.x2 - c.x2));
      CHECK(step <= std::hypot(dx, dy) * (1 + 1e-12));
      CHECK(c.height == doctest::Approx(step + n.height).epsilon(1e-12));
    }
  }
}

TEST_CASE("Aspar 200x200: two LE components and dominance structure") {
  Mop mop = make_test_problem(TestProblem::Aspar);
  const Landscape l = compute_landscape(mop, aspar_grid());
  CHECK(count_le_components(l) == 2);
  CHECK(le_counts(l) == brute_counts(l));
  // Right-hand set (x1 > 0) is partly dominated; the left set has front cells
  // with count 0.
  std::size_t right_dominated = 0, left_free = 0;
  for (const auto& c : l.cells) {
    if (!c.is_le) continue;
    CHECK(c.log_dom == doctest::Approx(std::log1p(static_cast<double>(c.dom_count))));
    if (c.x1 > 0.0 && c.dom_count > 0) ++right_dominated;
    if (c.x1 < 0.0 && c.dom_count == 0) ++left_free;
  }
  CHECK(right_dominated > 0);
  CHECK(left_free > 0);
}

TEST_CASE("counts are invariant under f1 -> 100 f1") {
  Mop a = make_test_problem(TestProblem::Aspar);
  Mop b = scaled_aspar();
  const Landscape la = compute_landscape(a, aspar_grid());
  const Landscape lb = compute_landscape(b, aspar_grid());
  REQUIRE(la.cells.size() == lb.cells.size());
  std::size_t le_mismatch = 0;
  for (std::size_t i = 0; i < la.cells.size(); ++i) {
    le_mismatch += la.cells[i].is_le != lb.cells[i].is_le;
  }
  CHECK(le_mismatch == 0);
  CHECK(le_counts(la) == le_counts(lb));
}

TEST_CASE("domination_counts matches brute force") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Objectives> pts(300);
  for (auto& p : pts) p = {std::round(u(rng) * 20), std::round(u(rng) * 20)};  // with ties
  const auto counts = domination_counts(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::uint32_t c = 0;
    for (const auto& q : pts) c += pareto_dominates(q, pts[i]);
    CHECK(counts[i] == c);
  }
}

TEST_CASE("CSV round trip passes the independent verifier") {
  Mop mop = make_test_problem(TestProblem::BiRosenbrock);
  const Landscape l = compute_landscape(mop, grid(-2, -2, 2, 2, 60));
  std::stringstream ss;
  write_landscape_csv(ss, l);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "ix,iy,x1,x2,f1,f2,mog_x,mog_y,height,is_le,dom_count,log_dom");
  ss.seekg(0);
  const LandscapeCheck chk = verify_landscape_csv(ss);
  CHECK(chk.cells == 3600);
  CHECK(chk.violations == 0);
  std::size_t le = 0;
  for (const auto& c : l.cells) le += c.is_le;
  CHECK(chk.le_cells == le);

  // A corrupted height is caught.
  std::stringstream bad;
  write_landscape_csv(bad, l);
  std::string text = bad.str();
  std::size_t pos = 0;
  for (const auto& c : l.cells) {
    if (!c.is_le && c.height > 0.5) {
      std::ostringstream key;
      key << "\n" << c.ix << "," << c.iy << ",";
      pos = text.find(key.str());
      break;
    }
  }
  REQUIRE(pos != std::string::npos);
  // Replace the height field (9th column) of that row.
  std::size_t field = pos + 1;
  for (int k = 0; k < 8; ++k) field = text.find(',', field) + 1;
  const std::size_t end = text.find(',', field);
  text.replace(field, end - field, "123.5");
  std::istringstream in(text);
  CHECK(verify_landscape_csv(in).violations >= 1);
}

TEST_CASE("errors") {
  TestProblemParams p3;
  p3.dimension = 3;
  Mop mop = make_test_problem(TestProblem::BiSphere, p3);
  GridSpec g;
  g.bounds = BoxBounds({-1, -1}, {1, 1});
  CHECK_THROWS_AS(compute_landscape(mop, g), MoleError);
  Mop m2 = make_test_problem(TestProblem::BiSphere);
  g.nx = 1;
  CHECK_THROWS_AS(compute_landscape(m2, g), MoleError);
}

}  // TEST_SUITE
