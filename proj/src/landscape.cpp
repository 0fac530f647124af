#include "mole/landscape.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mole/efficient_set.hpp"
#include "mole/kernels.hpp"

namespace mole {

void GridSpec::validate() const {
  if (bounds.dimension() != 2) {
    throw MoleError(ErrorCode::DimensionMismatch, "grid: only two-dimensional problems");
  }
  if (nx < 2 || ny < 2) throw MoleError(ErrorCode::InvalidConfig, "grid: need at least 2x2 cells");
}

namespace {

constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

enum class State : std::uint8_t { Open, OnPath, Done };

}  // namespace

std::vector<std::uint32_t> domination_counts(const std::vector<Objectives>& objectives) {
  const std::size_t n = objectives.size();
  std::vector<double> f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    f1[i] = objectives[i][0];
    f2[i] = objectives[i][1];
  }
  std::vector<std::uint32_t> counts(n);
  kernels::domination_counts(n, f1.data(), f2.data(), counts.data());
  return counts;
}

Landscape compute_landscape(Mop& mop, const GridSpec& grid, MogVariant variant, double eps) {
  grid.validate();
  if (mop.dimension() != 2) {
    throw MoleError(ErrorCode::DimensionMismatch, "grid: problem must be two-dimensional");
  }
  Landscape L;
  L.nx = grid.nx;
  L.ny = grid.ny;
  const std::size_t n = grid.nx * grid.ny;
  const double hx = (grid.bounds.upper[0] - grid.bounds.lower[0]) / grid.nx;
  const double hy = (grid.bounds.upper[1] - grid.bounds.lower[1]) / grid.ny;
  L.cells.resize(n);

  std::vector<double> g1x(n), g1y(n), g2x(n), g2y(n);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t i = L.index(ix, iy);
      GridCellRecord& c = L.cells[i];
      c.ix = ix;
      c.iy = iy;
      c.x1 = grid.bounds.lower[0] + (static_cast<double>(ix) + 0.5) * hx;
      c.x2 = grid.bounds.lower[1] + (static_cast<double>(iy) + 0.5) * hy;
      const Vec x{c.x1, c.x2};
      c.f = mop.evaluate(x);
      const GradientPair g = mop.estimate_gradients(x);
      g1x[i] = g.g1[0];
      g1y[i] = g.g1[1];
      g2x[i] = g.g2[0];
      g2y[i] = g.g2[1];
    }
  }
  std::vector<double> mx(n), my(n);
  if (variant == MogVariant::GeometricMean) {
    kernels::mog_gm_2d(n, g1x.data(), g1y.data(), g2x.data(), g2y.data(), mx.data(), my.data());
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const MogResult m = compute_mog(variant, Vec{g1x[i], g1y[i]}, Vec{g2x[i], g2y[i]});
      mx[i] = m.direction[0];
      my[i] = m.direction[1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    L.cells[i].mog_x = mx[i];
    L.cells[i].mog_y = my[i];
  }

  // Successor of every cell: the in-grid neighbour closest in angle to -MOG.
  std::vector<std::int64_t> succ(n, -1);
  std::vector<double> step(n, 0.0);
  std::vector<char> crossing(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const GridCellRecord& c = L.cells[i];
    if (std::hypot(c.mog_x, c.mog_y) < eps) continue;
    const Vec down{-c.mog_x, -c.mog_y};
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 8; ++k) {
      const auto jx = static_cast<std::int64_t>(c.ix) + kDx[k];
      const auto jy = static_cast<std::int64_t>(c.iy) + kDy[k];
      if (jx < 0 || jy < 0 || jx >= static_cast<std::int64_t>(grid.nx) ||
          jy >= static_cast<std::int64_t>(grid.ny)) {
        continue;
      }
      const Vec dir{kDx[k] * hx, kDy[k] * hy};
      const double a = angle_between(down, dir);
      if (a < best) {
        best = a;
        succ[i] = static_cast<std::int64_t>(L.index(jx, jy));
        step[i] = norm(dir);
      }
    }
    // Opposing gradients across the step: the set passes between the cells.
    if (succ[i] >= 0) {
      const GridCellRecord& d = L.cells[static_cast<std::size_t>(succ[i])];
      if (c.mog_x * d.mog_x + c.mog_y * d.mog_y < 0.0) {
        succ[i] = -1;
        step[i] = 0.0;
        crossing[i] = 1;
      }
    }
  }

  std::vector<State> state(n, State::Open);
  std::vector<std::size_t> path;
  auto finalize = [&](std::size_t i, double height, std::int64_t next) {
    L.cells[i].height = height;
    L.cells[i].next = next;
    state[i] = State::Done;
    ++L.resolutions;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] == State::Done) continue;
    path.clear();
    std::size_t cur = start;
    while (state[cur] == State::Open && succ[cur] >= 0) {
      state[cur] = State::OnPath;
      path.push_back(cur);
      cur = static_cast<std::size_t>(succ[cur]);
    }
    if (state[cur] == State::Open) {
      // Vanishing gradient or a step across the set.
      L.cells[cur].is_le = true;
      finalize(cur, 0.0, -1);
    } else if (state[cur] == State::OnPath) {
      // The path closed a cycle starting at `cur`.
      std::size_t first = 0;
      while (path[first] != cur) ++first;
      bool opposing = false;
      for (std::size_t a = first; a < path.size() && !opposing; ++a) {
        for (std::size_t b = a + 1; b < path.size(); ++b) {
          const GridCellRecord& p = L.cells[path[a]];
          const GridCellRecord& q = L.cells[path[b]];
          if (p.mog_x * q.mog_x + p.mog_y * q.mog_y < 0.0) {
            opposing = true;
            break;
          }
        }
      }
      for (std::size_t a = first; a < path.size(); ++a) {
        L.cells[path[a]].is_le = opposing;
        L.cells[path[a]].cycle_artifact = !opposing;
        finalize(path[a], 0.0, -1);
      }
      path.resize(first);
    }
    for (std::size_t k = path.size(); k-- > 0;) {
      const std::size_t i = path[k];
      const auto j = static_cast<std::size_t>(succ[i]);
      finalize(i, step[i] + L.cells[j].height, succ[i]);
    }
  }

  std::vector<std::size_t> le;
  std::vector<Objectives> fs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!L.cells[i].is_le) continue;
    le.push_back(i);
    fs.push_back(L.cells[i].f);
  }
  const std::vector<std::uint32_t> counts = domination_counts(fs);
  for (std::size_t k = 0; k < le.size(); ++k) {
    L.cells[le[k]].dom_count = counts[k];
    L.cells[le[k]].log_dom = std::log1p(static_cast<double>(counts[k]));
  }
  return L;
}

std::size_t count_le_components(const Landscape& L) {
  std::vector<char> seen(L.cells.size(), 0);
  std::vector<std::size_t> todo;
  std::size_t components = 0;
  for (std::size_t s = 0; s < L.cells.size(); ++s) {
    if (!L.cells[s].is_le || seen[s]) continue;
    ++components;
    seen[s] = 1;
    todo.push_back(s);
    while (!todo.empty()) {
      const GridCellRecord& c = L.cells[todo.back()];
      todo.pop_back();
      for (int k = 0; k < 8; ++k) {
        const auto jx = static_cast<std::int64_t>(c.ix) + kDx[k];
        const auto jy = static_cast<std::int64_t>(c.iy) + kDy[k];
        if (jx < 0 || jy < 0 || jx >= static_cast<std::int64_t>(L.nx) ||
            jy >= static_cast<std::int64_t>(L.ny)) {
          continue;
        }
        const std::size_t j = L.index(jx, jy);
        if (L.cells[j].is_le && !seen[j]) {
          seen[j] = 1;
          todo.push_back(j);
        }
      }
    }
  }
  return components;
}

std::size_t height_violations(const Landscape& L, double tol) {
  std::size_t bad = 0;
  for (const GridCellRecord& c : L.cells) {
    if (c.next < 0) {
      if (c.height != 0.0) ++bad;
      continue;
    }
    const GridCellRecord& d = L.cells[static_cast<std::size_t>(c.next)];
    const double step = std::hypot(c.x1 - d.x1, c.x2 - d.x2);
    if (std::abs(c.height - (step + d.height)) > tol * std::max(1.0, c.height)) ++bad;
  }
  return bad;
}

void write_landscape_csv(std::ostream& out, const Landscape& L) {
  out << "ix,iy,x1,x2,f1,f2,mog_x,mog_y,height,is_le,dom_count,log_dom\n";
  for (const GridCellRecord& c : L.cells) {
    out << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},", c.ix,
                       c.iy, c.x1, c.x2, c.f[0], c.f[1], c.mog_x, c.mog_y, c.height,
                       c.is_le ? 1 : 0);
    if (c.is_le) {
      out << fmt::format("{},{:.17g}\n", c.dom_count, c.log_dom);
    } else {
      out << ",\n";
    }
  }
}

LandscapeCheck verify_landscape_csv(std::istream& in, double tol) {
  struct Row {
    long ix, iy;
    double x1, x2, mx, my, height;
    bool le;
  };
  std::string line;
  if (!std::getline(in, line) || line.rfind("ix,iy,x1,x2,", 0) != 0) {
    throw MoleError(ErrorCode::InvalidConfig, "landscape csv: missing header");
  }
  std::vector<Row> rows;
  long nx = 0, ny = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    if (f.size() < 10) throw MoleError(ErrorCode::InvalidConfig, "landscape csv: short row");
    try {
      rows.push_back({std::stol(f[0]), std::stol(f[1]), std::stod(f[2]), std::stod(f[3]),
                      std::stod(f[6]), std::stod(f[7]), std::stod(f[8]), f[9] == "1"});
    } catch (const std::exception&) {
      throw MoleError(ErrorCode::InvalidConfig, "landscape csv: malformed row");
    }
    nx = std::max(nx, rows.back().ix + 1);
    ny = std::max(ny, rows.back().iy + 1);
  }
  if (rows.size() != static_cast<std::size_t>(nx * ny)) {
    throw MoleError(ErrorCode::InvalidConfig, "landscape csv: rows do not form a full grid");
  }
  std::vector<const Row*> at(rows.size(), nullptr);
  for (const Row& r : rows) at[static_cast<std::size_t>(r.iy * nx + r.ix)] = &r;

  LandscapeCheck out;
  out.cells = rows.size();
  for (const Row& c : rows) {
    if (c.le) {
      ++out.le_cells;
      if (c.height != 0.0) ++out.violations;
      continue;
    }
    if (c.height == 0.0) continue;  // terminal cell
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, const Row*>> cand;
    for (int k = 0; k < 8; ++k) {
      const long jx = c.ix + kDx[k];
      const long jy = c.iy + kDy[k];
      if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
      const Row* d = at[static_cast<std::size_t>(jy * nx + jx)];
      const Vec dir{d->x1 - c.x1, d->x2 - c.x2};
      const double a = angle_between(Vec{-c.mx, -c.my}, dir);
      best = std::min(best, a);
      cand.emplace_back(a, d);
    }
    bool ok = false;
    for (const auto& [a, d] : cand) {
      if (a > best + 1e-7) continue;
      const double step = std::hypot(d->x1 - c.x1, d->x2 - c.x2);
      if (std::abs(c.height - (step + d->height)) <= tol * std::max(1.0, c.height)) ok = true;
    }
    if (!ok) ++out.violations;
  }
  return out;
}

}  // namespace mole
