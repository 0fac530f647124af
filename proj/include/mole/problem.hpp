// Bi-objective problem definition, dominance, gradient estimation and the
// analytic test problems used throughout the toolkit.

#ifndef MOLE_PROBLEM_HPP
#define MOLE_PROBLEM_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mole {

using Vec = std::vector<double>;
using Objectives = std::array<double, 2>;

/// Pair of single-objective gradients (grad f1, grad f2).
struct GradientPair {
  Vec g1;
  Vec g2;
};

enum class ErrorCode {
  BudgetExhausted,
  OutOfBounds,
  NonFiniteObjective,
  UnknownProblem,
  MissingBounds,
  DimensionMismatch,
  InvalidConfig,
  OrderingViolation,
  NotComparablePair,
  StalledRefinement,
};

const char* to_string(ErrorCode code);

class MoleError : public std::runtime_error {
 public:
  MoleError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct BoxBounds {
  Vec lower;
  Vec upper;

  BoxBounds() = default;
  BoxBounds(Vec lo, Vec up);

  std::size_t dimension() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  Vec clamp(std::span<const double> x) const;
};

/// Euclidean length of the box diagonal. Throws MissingBounds when neither
/// argument is present.
double diag(const std::optional<BoxBounds>& bounds,
            const std::optional<BoxBounds>& fallback = std::nullopt);

/// A bi-objective minimization problem with an evaluation counter.
///
/// Every call to evaluate() costs one evaluation. Gradients come from the
/// attached analytic callback at zero cost, or from central differences at
/// a cost of 2d evaluations.
class Mop {
 public:
  using Evaluator = std::function<Objectives(std::span<const double>)>;
  using AnalyticGradients = std::function<GradientPair(std::span<const double>)>;
  using Observer = std::function<void(std::span<const double>, const Objectives&)>;

  static constexpr double kFiniteDifferenceStep = 1e-8;

  Mop(std::size_t dimension, Evaluator evaluator);

  Mop& with_gradients(AnalyticGradients gradients);
  Mop& with_bounds(BoxBounds bounds);
  Mop& with_budget(std::size_t budget);
  Mop& with_name(std::string name);
  /// Called after every successful evaluation (used by the benchmark harness).
  Mop& with_observer(Observer observer);
  /// Drops analytic gradients so that estimate_gradients falls back to
  /// finite differences.
  Mop& without_gradients();

  std::size_t dimension() const { return dimension_; }
  const std::string& name() const { return name_; }
  const std::optional<BoxBounds>& bounds() const { return bounds_; }
  std::optional<std::size_t> budget() const { return budget_; }
  std::size_t evaluations() const { return counter_; }
  bool has_analytic_gradients() const { return static_cast<bool>(gradients_); }
  bool exhausted() const { return budget_ && counter_ >= *budget_; }

  Objectives evaluate(std::span<const double> x);

  /// Analytic gradients if attached, central differences otherwise.
  GradientPair estimate_gradients(std::span<const double> x);

  /// Always uses finite differences (central, one-sided within one step of a
  /// bound). Costs exactly 2d evaluations.
  GradientPair finite_difference_gradients(std::span<const double> x);

  /// Evaluates the objectives without touching the counter or the observer.
  /// Only meant for verification code.
  Objectives peek(std::span<const double> x) const;

 private:
  std::size_t dimension_;
  Evaluator evaluator_;
  AnalyticGradients gradients_;
  Observer observer_;
  std::optional<BoxBounds> bounds_;
  std::optional<std::size_t> budget_;
  std::size_t counter_ = 0;
  std::string name_ = "custom";
};

enum class Dominance { Dominates, DominatedBy, Incomparable, Equal };

Dominance dominates(const Objectives& a, const Objectives& b);

/// a <= b componentwise and a != b.
inline bool pareto_dominates(const Objectives& a, const Objectives& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

/// a < b in every component.
inline bool strictly_dominates(const Objectives& a, const Objectives& b) {
  return a[0] < b[0] && a[1] < b[1];
}

enum class TestProblem { BiSphere, Aspar, BiRosenbrock };

struct TestProblemParams {
  std::size_t dimension = 2;
  /// Centers for the Bi-Sphere problem; default (-1,..,-1) and (1,..,1).
  std::optional<Vec> center1;
  std::optional<Vec> center2;
  /// Multiplicative objective scaling for Bi-Sphere.
  double scale1 = 1.0;
  double scale2 = 1.0;
  std::optional<BoxBounds> bounds;
};

std::optional<TestProblem> parse_test_problem(const std::string& name);
std::string to_string(TestProblem problem);

/// Builds one of the analytic test problems with gradients attached and
/// [-5, 5]^d bounds unless overridden. Aspar and Bi-Rosenbrock are 2-D.
Mop make_test_problem(TestProblem problem, const TestProblemParams& params = {});

/// Name-based variant used by the CLI. Recognized keys: dim, c1, c2 (comma
/// separated coordinates), scale1, scale2, lower, upper.
Mop make_test_problem(const std::string& name,
                      const std::map<std::string, std::string>& params);

// Small vector helpers shared across modules.
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);
Vec axpy(double alpha, std::span<const double> x, std::span<const double> y);

}  // namespace mole

#endif  // MOLE_PROBLEM_HPP
