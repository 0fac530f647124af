#include "mole/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace mole {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::MissingBounds: return "MissingBounds";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::OrderingViolation: return "OrderingViolation";
    case ErrorCode::NotComparablePair: return "NotComparablePair";
    case ErrorCode::StalledRefinement: return "StalledRefinement";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Vector helpers

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  Vec out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * x[i];
  return out;
}

// ---------------------------------------------------------------------------
// Bounds

BoxBounds::BoxBounds(Vec lo, Vec up) : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size() || lower.empty()) {
    throw MoleError(ErrorCode::InvalidConfig, "bounds: lower/upper size mismatch");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw MoleError(ErrorCode::InvalidConfig, "bounds: lower must be < upper");
    }
  }
}

bool BoxBounds::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

Vec BoxBounds::clamp(std::span<const double> x) const {
  Vec out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], lower[i], upper[i]);
  }
  return out;
}

double diag(const std::optional<BoxBounds>& bounds,
            const std::optional<BoxBounds>& fallback) {
  const BoxBounds* box = bounds ? &*bounds : (fallback ? &*fallback : nullptr);
  if (box == nullptr) {
    throw MoleError(ErrorCode::MissingBounds, "diag: no bounds and no fallback box");
  }
  return distance(box->lower, box->upper);
}

// ---------------------------------------------------------------------------
// Mop

Mop::Mop(std::size_t dimension, Evaluator evaluator)
    : dimension_(dimension), evaluator_(std::move(evaluator)) {
  if (dimension_ == 0) {
    throw MoleError(ErrorCode::InvalidConfig, "problem dimension must be positive");
  }
}

Mop& Mop::with_gradients(AnalyticGradients gradients) {
  gradients_ = std::move(gradients);
  return *this;
}

Mop& Mop::with_bounds(BoxBounds bounds) {
  if (bounds.dimension() != dimension_) {
    throw MoleError(ErrorCode::DimensionMismatch, "bounds dimension differs from problem");
  }
  bounds_ = std::move(bounds);
  return *this;
}

Mop& Mop::with_budget(std::size_t budget) {
  if (budget == 0) throw MoleError(ErrorCode::InvalidConfig, "budget must be positive");
  budget_ = budget;
  return *this;
}

Mop& Mop::with_name(std::string name) {
  name_ = std::move(name);
  return *this;
}

Mop& Mop::with_observer(Observer observer) {
  observer_ = std::move(observer);
  return *this;
}

Mop& Mop::without_gradients() {
  gradients_ = nullptr;
  return *this;
}

Objectives Mop::evaluate(std::span<const double> x) {
  if (x.size() != dimension_) {
    throw MoleError(ErrorCode::DimensionMismatch, "evaluate: wrong decision vector length");
  }
  if (budget_ && counter_ >= *budget_) {
    throw MoleError(ErrorCode::BudgetExhausted, "evaluation budget exhausted");
  }
  if (bounds_ && !bounds_->contains(x)) {
    throw MoleError(ErrorCode::OutOfBounds, "evaluate: point violates box bounds");
  }
  ++counter_;
  const Objectives f = evaluator_(x);
  if (!std::isfinite(f[0]) || !std::isfinite(f[1])) {
    throw MoleError(ErrorCode::NonFiniteObjective, "evaluate: non-finite objective value");
  }
  if (observer_) observer_(x, f);
  return f;
}

Objectives Mop::peek(std::span<const double> x) const { return evaluator_(x); }

GradientPair Mop::estimate_gradients(std::span<const double> x) {
  if (gradients_) return gradients_(x);
  return finite_difference_gradients(x);
}

GradientPair Mop::finite_difference_gradients(std::span<const double> x) {
  constexpr double h = kFiniteDifferenceStep;
  GradientPair out{Vec(dimension_), Vec(dimension_)};
  Vec probe(x.begin(), x.end());
  for (std::size_t i = 0; i < dimension_; ++i) {
    double lo = x[i] - h;
    double hi = x[i] + h;
    // One-sided at the box boundary; still two evaluations per coordinate.
    if (bounds_) {
      if (lo < bounds_->lower[i]) lo = x[i];
      if (hi > bounds_->upper[i]) hi = x[i];
    }
    probe[i] = hi;
    const Objectives f_hi = evaluate(probe);
    probe[i] = lo;
    const Objectives f_lo = evaluate(probe);
    probe[i] = x[i];
    const double width = hi - lo;
    out.g1[i] = (f_hi[0] - f_lo[0]) / width;
    out.g2[i] = (f_hi[1] - f_lo[1]) / width;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dominance

Dominance dominates(const Objectives& a, const Objectives& b) {
  if (a == b) return Dominance::Equal;
  if (a[0] <= b[0] && a[1] <= b[1]) return Dominance::Dominates;
  if (b[0] <= a[0] && b[1] <= a[1]) return Dominance::DominatedBy;
  return Dominance::Incomparable;
}

// ---------------------------------------------------------------------------
// Test problems

std::optional<TestProblem> parse_test_problem(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(c)));
  }
  if (key == "bisphere") return TestProblem::BiSphere;
  if (key == "aspar") return TestProblem::Aspar;
  if (key == "birosenbrock") return TestProblem::BiRosenbrock;
  return std::nullopt;
}

std::string to_string(TestProblem problem) {
  switch (problem) {
    case TestProblem::BiSphere: return "bisphere";
    case TestProblem::Aspar: return "aspar";
    case TestProblem::BiRosenbrock: return "birosenbrock";
  }
  return "unknown";
}

namespace {

BoxBounds cube(std::size_t d, double lo, double hi) {
  return BoxBounds(Vec(d, lo), Vec(d, hi));
}

Mop make_bisphere(const TestProblemParams& p) {
  const std::size_t d = p.dimension;
  Vec c1 = p.center1.value_or(Vec(d, -1.0));
  Vec c2 = p.center2.value_or(Vec(d, 1.0));
  if (c1.size() != d || c2.size() != d) {
    throw MoleError(ErrorCode::DimensionMismatch, "bisphere: center dimension mismatch");
  }
  const double s1 = p.scale1;
  const double s2 = p.scale2;
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    throw MoleError(ErrorCode::InvalidConfig, "bisphere: scales must be positive");
  }
  auto eval = [c1, c2, s1, s2](std::span<const double> x) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      a += (x[i] - c1[i]) * (x[i] - c1[i]);
      b += (x[i] - c2[i]) * (x[i] - c2[i]);
    }
    return Objectives{s1 * a, s2 * b};
  };
  auto grad = [c1, c2, s1, s2](std::span<const double> x) {
    GradientPair g{Vec(x.size()), Vec(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
      g.g1[i] = 2.0 * s1 * (x[i] - c1[i]);
      g.g2[i] = 2.0 * s2 * (x[i] - c2[i]);
    }
    return g;
  };
  Mop mop(d, eval);
  mop.with_gradients(grad).with_bounds(p.bounds.value_or(cube(d, -5.0, 5.0)));
  mop.with_name("bisphere");
  return mop;
}

Mop make_aspar(const TestProblemParams& p) {
  if (p.dimension != 2) {
    throw MoleError(ErrorCode::DimensionMismatch, "aspar is defined for d = 2 only");
  }
  auto eval = [](std::span<const double> x) {
    const double a = x[0], b = x[1];
    return Objectives{a * a * a * a - 2.0 * a * a + 2.0 * b * b + 1.0,
                      (a + 0.5) * (a + 0.5) + (b - 2.0) * (b - 2.0)};
  };
  auto grad = [](std::span<const double> x) {
    const double a = x[0], b = x[1];
    return GradientPair{{4.0 * a * a * a - 4.0 * a, 4.0 * b},
                        {2.0 * (a + 0.5), 2.0 * (b - 2.0)}};
  };
  Mop mop(2, eval);
  mop.with_gradients(grad).with_bounds(p.bounds.value_or(cube(2, -5.0, 5.0)));
  mop.with_name("aspar");
  return mop;
}

Mop make_birosenbrock(const TestProblemParams& p) {
  if (p.dimension != 2) {
    throw MoleError(ErrorCode::DimensionMismatch, "birosenbrock is defined for d = 2 only");
  }
  auto eval = [](std::span<const double> x) {
    const double a = x[0], b = x[1];
    const double r1 = b - a * a;
    const double r2 = 3.0 - b - a * a;
    return Objectives{(1.0 - a) * (1.0 - a) + r1 * r1, (1.0 + a) * (1.0 + a) + r2 * r2};
  };
  auto grad = [](std::span<const double> x) {
    const double a = x[0], b = x[1];
    const double r1 = b - a * a;
    const double r2 = 3.0 - b - a * a;
    return GradientPair{{-2.0 * (1.0 - a) - 4.0 * a * r1, 2.0 * r1},
                        {2.0 * (1.0 + a) - 4.0 * a * r2, -2.0 * r2}};
  };
  Mop mop(2, eval);
  mop.with_gradients(grad).with_bounds(p.bounds.value_or(cube(2, -5.0, 5.0)));
  mop.with_name("birosenbrock");
  return mop;
}

Vec parse_list(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw MoleError(ErrorCode::InvalidConfig, "cannot parse number '" + item + "'");
    }
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw MoleError(ErrorCode::InvalidConfig, "parameter '" + key + "': bad number '" + text + "'");
  }
}

}  // namespace

Mop make_test_problem(TestProblem problem, const TestProblemParams& params) {
  switch (problem) {
    case TestProblem::BiSphere: return make_bisphere(params);
    case TestProblem::Aspar: return make_aspar(params);
    case TestProblem::BiRosenbrock: return make_birosenbrock(params);
  }
  throw MoleError(ErrorCode::UnknownProblem, "unknown test problem");
}

Mop make_test_problem(const std::string& name,
                      const std::map<std::string, std::string>& params) {
  const auto kind = parse_test_problem(name);
  if (!kind) throw MoleError(ErrorCode::UnknownProblem, "unknown problem '" + name + "'");
  TestProblemParams p;
  std::optional<Vec> lower, upper;
  for (const auto& [key, value] : params) {
    if (key == "dim") {
      const double d = parse_number(key, value);
      if (d < 1 || d != std::floor(d)) {
        throw MoleError(ErrorCode::InvalidConfig, "parameter 'dim' must be a positive integer");
      }
      p.dimension = static_cast<std::size_t>(d);
    } else if (key == "c1") {
      p.center1 = parse_list(value);
    } else if (key == "c2") {
      p.center2 = parse_list(value);
    } else if (key == "scale1") {
      p.scale1 = parse_number(key, value);
    } else if (key == "scale2") {
      p.scale2 = parse_number(key, value);
    } else if (key == "lower") {
      lower = parse_list(value);
    } else if (key == "upper") {
      upper = parse_list(value);
    } else {
      throw MoleError(ErrorCode::InvalidConfig, "unknown problem parameter '" + key + "'");
    }
  }
  if (lower || upper) {
    Vec lo = lower.value_or(Vec(p.dimension, -5.0));
    Vec up = upper.value_or(Vec(p.dimension, 5.0));
    if (lo.size() == 1) lo.assign(p.dimension, lo[0]);
    if (up.size() == 1) up.assign(p.dimension, up[0]);
    p.bounds = BoxBounds(lo, up);
  }
  return make_test_problem(*kind, p);
}

}  // namespace mole
