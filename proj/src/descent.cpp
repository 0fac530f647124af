#include "mole/descent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "mole/mog.hpp"

namespace mole {

DescentConfig DescentConfig::defaults_for(double diag) {
  DescentConfig c;
  c.alpha_max = diag / 100.0;
  return c;
}

void DescentConfig::validate() const {
  if (!(crit_gamma > 0.0) || !(alpha_min > 0.0) || !(alpha_max > alpha_min)) {
    throw MoleError(ErrorCode::InvalidConfig,
                    "descent: need crit_gamma > 0 and 0 < alpha_min < alpha_max");
  }
  if (!(lambda > 1.0)) throw MoleError(ErrorCode::InvalidConfig, "descent: lambda must be > 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw MoleError(ErrorCode::InvalidConfig, "descent: beta must lie in (0, 1)");
  }
  if (history == 0 || max_iter == 0) {
    throw MoleError(ErrorCode::InvalidConfig, "descent: history and max_iter must be positive");
  }
}

const char* to_string(DescentTermination t) {
  switch (t) {
    case DescentTermination::CriticalPoint: return "CriticalPoint";
    case DescentTermination::MinStepNoImprovement: return "MinStepNoImprovement";
    case DescentTermination::MaxIter: return "MaxIter";
    case DescentTermination::BudgetExhausted: return "BudgetExhausted";
    case DescentTermination::EarlyEscape: return "EarlyEscape";
  }
  return "Unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class DescentRun {
 public:
  DescentRun(std::span<const double> start, Mop& mop, const DescentConfig& config,
             std::optional<double> escape_radius)
      : start_(start.begin(), start.end()),
        mop_(mop),
        cfg_(config),
        escape_(escape_radius),
        evals_at_start_(mop.evaluations()) {
    cfg_.validate();
    if (start.size() != mop.dimension()) {
      throw MoleError(ErrorCode::DimensionMismatch, "descent: start has wrong dimension");
    }
    res_.final_point = start_;
  }

  DescentResult run(std::optional<Objectives> start_objectives) {
    try {
      const Objectives f0 = start_objectives ? *start_objectives : mop_.evaluate(start_);
      accept(start_, f0, 0.0, {kNaN, kNaN}, false);
      search();
    } catch (const MoleError& e) {
      if (e.code() != ErrorCode::BudgetExhausted) throw;
      res_.termination = DescentTermination::BudgetExhausted;
    }
    res_.evals_used = mop_.evaluations() - evals_at_start_;
    return std::move(res_);
  }

 private:
  Vec step_from(const Vec& x, const Vec& unit, double h) const {
    Vec p = axpy(-h, unit, x);
    if (mop_.bounds()) p = mop_.bounds()->clamp(p);
    return p;
  }

  void accept(const Vec& x, const Objectives& f, double step, const Objectives& reference,
              bool bb_phase) {
    res_.final_point = x;
    res_.final_objectives = f;
    if (cfg_.record_trace) {
      res_.trace.push_back({res_.trace.size(), x, f, step, kNaN, reference, bb_phase});
    }
  }

  void note_mog(double mog_norm) {
    if (cfg_.record_trace && !res_.trace.empty()) res_.trace.back().mog_norm = mog_norm;
  }

  bool escaped(const Vec& x) const { return escape_ && distance(x, start_) > *escape_; }

  void search() {
    // Initial doubling line search from the start point.
    const Vec x0 = start_;
    const Objectives f0 = res_.final_objectives;
    const GradientPair g0 = mop_.estimate_gradients(x0);
    const MogResult m0 = mog_geometric_mean(g0.g1, g0.g2);
    const double n0 = m0.length();
    note_mog(n0);
    if (n0 < cfg_.crit_gamma) {
      res_.termination = DescentTermination::CriticalPoint;
      return;
    }
    Vec u0 = m0.direction;
    for (double& v : u0) v /= n0;

    Vec x1 = x0;
    Objectives f1 = f0;
    double h = cfg_.alpha_min;
    double h_accepted = 0.0;
    while (h <= cfg_.alpha_max) {
      Vec p = step_from(x0, u0, h);
      if (p == x1) break;
      const Objectives fp = mop_.evaluate(p);
      if (!pareto_dominates(fp, f1)) break;
      x1 = std::move(p);
      f1 = fp;
      h_accepted = h;
      ++res_.phase1_steps;
      accept(x1, f1, h, {kNaN, kNaN}, false);
      if (escaped(x1)) {
        res_.termination = DescentTermination::EarlyEscape;
        return;
      }
      h *= cfg_.lambda;
    }
    if (res_.phase1_steps == 0) {
      res_.termination = DescentTermination::MinStepNoImprovement;
      return;
    }

    // Barzilai-Borwein phase with nonmonotone Armijo safeguard.
    std::deque<Objectives> history{f0, f1};
    while (history.size() > cfg_.history) history.pop_front();
    Vec x_prev = x0;
    Vec mog_prev = m0.direction;
    Vec x_cur = x1;
    Objectives f_cur = f1;
    double h_prev = h_accepted;

    for (std::size_t t = 1; t <= cfg_.max_iter; ++t) {
      const GradientPair g = mop_.estimate_gradients(x_cur);
      const MogResult m = mog_geometric_mean(g.g1, g.g2);
      const double n = m.length();
      note_mog(n);
      if (n < cfg_.crit_gamma) {
        res_.termination = DescentTermination::CriticalPoint;
        return;
      }

      Objectives ref = history.front();
      for (const Objectives& f : history) {
        ref[0] = std::max(ref[0], f[0]);
        ref[1] = std::max(ref[1], f[1]);
      }

      Vec s(x_cur.size()), y(x_cur.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = x_cur[i] - x_prev[i];
        y[i] = m.direction[i] - mog_prev[i];
      }
      const double sy = dot(s, y);
      const double y_norm = norm(y);
      double h_try = h_prev;
      if (y_norm > 0.0) {
        // The second term keeps the step positive under negative curvature.
        double relative = norm(s) / y_norm;
        if (sy > 0.0) relative = std::max(dot(s, s) / sy, relative);
        h_try = relative * n;
      }
      h_try = std::clamp(h_try, cfg_.alpha_min, cfg_.alpha_max);

      Vec unit = m.direction;
      for (double& v : unit) v /= n;
      const double slope1 = dot(unit, g.g1);
      const double slope2 = dot(unit, g.g2);

      Vec p;
      Objectives fp{};
      bool armijo = false;
      for (;;) {
        p = step_from(x_cur, unit, h_try);
        if (p == x_cur) {
          res_.termination = DescentTermination::MinStepNoImprovement;
          return;
        }
        fp = mop_.evaluate(p);
        armijo = fp[0] < ref[0] - cfg_.beta * h_try * slope1 &&
                 fp[1] < ref[1] - cfg_.beta * h_try * slope2;
        if (armijo || h_try <= cfg_.alpha_min) break;
        h_try = std::max(h_try / cfg_.lambda, cfg_.alpha_min);
      }
      if (h_try <= cfg_.alpha_min && (!armijo || !pareto_dominates(fp, f_cur))) {
        res_.termination = DescentTermination::MinStepNoImprovement;
        return;
      }

      x_prev = std::move(x_cur);
      mog_prev = m.direction;
      x_cur = std::move(p);
      f_cur = fp;
      h_prev = h_try;
      history.push_back(fp);
      if (history.size() > cfg_.history) history.pop_front();
      ++res_.iterations;
      accept(x_cur, f_cur, h_try, ref, true);
      if (escaped(x_cur)) {
        res_.termination = DescentTermination::EarlyEscape;
        return;
      }
    }
    res_.termination = DescentTermination::MaxIter;
  }

  Vec start_;
  Mop& mop_;
  DescentConfig cfg_;
  std::optional<double> escape_;
  std::size_t evals_at_start_;
  DescentResult res_;
};

}  // namespace

DescentResult multi_objective_descent(std::span<const double> start, Mop& mop,
                                      const DescentConfig& config,
                                      std::optional<double> escape_radius) {
  return DescentRun(start, mop, config, escape_radius).run(std::nullopt);
}

DescentResult multi_objective_descent(std::span<const double> start,
                                      const Objectives& start_objectives, Mop& mop,
                                      const DescentConfig& config,
                                      std::optional<double> escape_radius) {
  return DescentRun(start, mop, config, escape_radius).run(start_objectives);
}

}  // namespace mole
