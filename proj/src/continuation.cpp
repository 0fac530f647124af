#include "mole/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mole {

ExploreConfig ExploreConfig::defaults_for(double diag) {
  ExploreConfig c;
  c.sigma_max = diag / 100.0;
  return c;
}

void ExploreConfig::validate() const {
  if (!(sigma_min > 0.0) || !(sigma_max > sigma_min)) {
    throw MoleError(ErrorCode::InvalidConfig, "explore: need 0 < sigma_min < sigma_max");
  }
  if (!(phi_max > 0.0 && phi_max < 180.0)) {
    throw MoleError(ErrorCode::InvalidConfig, "explore: phi_max must lie in (0, 180)");
  }
  if (!(lambda > 1.0)) throw MoleError(ErrorCode::InvalidConfig, "explore: lambda must be > 1");
  if (max_steps == 0) throw MoleError(ErrorCode::InvalidConfig, "explore: max_steps must be > 0");
}

const char* to_string(DirectionTermination t) {
  switch (t) {
    case DirectionTermination::SoOptimum: return "SoOptimum";
    case DirectionTermination::BasinCrossed: return "BasinCrossed";
    case DirectionTermination::Stalled: return "Stalled";
    case DirectionTermination::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

namespace {

using Outcome = ExploreStep::Outcome;

class Explorer {
 public:
  Explorer(Mop& mop, const ExploreConfig& cfg, const DescentConfig& dcfg, int set_id)
      : mop_(mop), cfg_(cfg), dcfg_(dcfg) {
    cfg_.validate();
    dcfg_.validate();
    dcfg_.record_trace = false;
    res_.set.set_id(set_id);
  }

  ExploreResult run(std::span<const double> x_star, std::optional<Objectives> f_star) {
    const std::size_t evals0 = mop_.evaluations();
    step_evals0_ = evals0;
    int obj = 0;
    try {
      const Objectives f = f_star ? *f_star : mop_.evaluate(x_star);
      res_.set.insert(Vec(x_star.begin(), x_star.end()), f);
      for (; obj < 2; ++obj) res_.termination[obj] = trace_direction(obj);
    } catch (const MoleError& e) {
      if (e.code() != ErrorCode::BudgetExhausted) throw;
      res_.budget_exhausted = true;
      for (; obj < 2; ++obj) res_.termination[obj] = DirectionTermination::BudgetExhausted;
    }
    res_.evals_used = mop_.evaluations() - evals0;
    return std::move(res_);
  }

 private:
  void record(int obj, double sigma, bool use_gradient, double angle, Outcome outcome,
              DescentTermination corrector = DescentTermination::CriticalPoint) {
    if (cfg_.record_trace) {
      res_.trace.push_back({obj, sigma, use_gradient, angle, outcome, corrector,
                            mop_.evaluations() - step_evals0_});
    }
    step_evals0_ = mop_.evaluations();
  }

  DescentResult corrector(const Vec& p, const Objectives& fp, std::optional<double> escape) {
    DescentResult r = multi_objective_descent(p, fp, mop_, dcfg_, escape);
    if (r.termination == DescentTermination::BudgetExhausted) {
      throw MoleError(ErrorCode::BudgetExhausted, "budget exhausted during correction");
    }
    return r;
  }

  DirectionTermination trace_direction(int obj) {
    const EfficientSetModel& set = res_.set;
    double sigma = cfg_.sigma_min;
    bool use_gradient = true;
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    auto reject = [&] {
      if (sigma <= cfg_.sigma_min) use_gradient = true;
      sigma = std::max(sigma / cfg_.lambda, cfg_.sigma_min);
    };

    for (std::size_t step = 0; step < cfg_.max_steps; ++step) {
      // Endpoint in the traced direction and its neighbour on the set.
      auto last = obj == 0 ? set.begin() : std::prev(set.end());
      const SetNode& prev = last->second;
      const SetNode* prev2 = nullptr;
      if (set.size() >= 2) {
        prev2 = obj == 0 ? &std::next(last)->second : &std::prev(last)->second;
      }

      Vec d;
      if (use_gradient || prev2 == nullptr) {
        const GradientPair g = mop_.estimate_gradients(prev.x);
        d = obj == 0 ? g.g1 : g.g2;
        for (double& v : d) v = -v;
      } else {
        d.resize(prev.x.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = prev.x[i] - prev2->x[i];
      }
      const double dn = norm(d);
      if (dn == 0.0) {
        record(obj, sigma, use_gradient, kNaN, Outcome::Stopped);
        return DirectionTermination::SoOptimum;
      }

      Vec p = axpy(sigma / dn, d, prev.x);
      if (mop_.bounds()) p = mop_.bounds()->clamp(p);
      bool improves = false;
      Objectives fp{};
      if (p != prev.x) {
        fp = mop_.evaluate(p);
        improves = fp[obj] < prev.f[obj];
      }
      if (!improves) {
        if (sigma <= cfg_.sigma_min && use_gradient) {
          record(obj, sigma, use_gradient, kNaN, Outcome::Stopped);
          return DirectionTermination::SoOptimum;
        }
        record(obj, sigma, use_gradient, kNaN, Outcome::PredictorRejected);
        reject();
        continue;
      }

      // At sigma_min with the gradient predictor the corrector may not be
      // rejected, so it runs to convergence instead of escaping early.
      const bool rejectable = sigma > cfg_.sigma_min || !use_gradient;
      const std::optional<double> escape =
          rejectable ? std::optional<double>(sigma) : std::nullopt;
      DescentResult corrected = corrector(p, fp, escape);
      const bool escaped = corrected.termination == DescentTermination::EarlyEscape;
      if (escaped && pareto_dominates(corrected.final_objectives, prev.f)) {
        // Dominating escape: finish the descent to obtain a locally efficient
        // point in the superposed basin.
        corrected = corrector(corrected.final_point, corrected.final_objectives, std::nullopt);
      }
      const Vec& p_star = corrected.final_point;
      const Objectives& f_star = corrected.final_objectives;
      const bool dominating = pareto_dominates(f_star, prev.f);

      double angle = kNaN;
      if (prev2 != nullptr) angle = turn_angle(prev2->x, prev.x, p_star);
      const bool too_far = escaped || distance(p, p_star) > sigma;
      const bool too_sharp = prev2 != nullptr && angle > cfg_.phi_max;
      if (rejectable && ((too_far && !dominating) || too_sharp)) {
        record(obj, sigma, use_gradient, angle, Outcome::CorrectorRejected,
               corrected.termination);
        reject();
        continue;
      }

      if ((use_gradient && distance(prev.x, p_star) > cfg_.sigma_max) || dominating) {
        res_.superposed.push_back({p_star, f_star});
        record(obj, sigma, use_gradient, angle, Outcome::Superposed, corrected.termination);
        return DirectionTermination::BasinCrossed;
      }

      try {
        if (res_.set.insert(p_star, f_star) == EfficientSetModel::InsertOutcome::Duplicate) {
          record(obj, sigma, use_gradient, angle, Outcome::Stopped, corrected.termination);
          return DirectionTermination::Stalled;
        }
      } catch (const MoleError& e) {
        if (e.code() != ErrorCode::OrderingViolation) throw;
        record(obj, sigma, use_gradient, angle, Outcome::Stopped, corrected.termination);
        return DirectionTermination::Stalled;
      }
      record(obj, sigma, use_gradient, angle, Outcome::Inserted, corrected.termination);
      sigma = std::min(sigma * cfg_.lambda, cfg_.sigma_max);
      use_gradient = false;
    }
    return DirectionTermination::Stalled;
  }

  Mop& mop_;
  ExploreConfig cfg_;
  DescentConfig dcfg_;
  ExploreResult res_;
  std::size_t step_evals0_ = 0;
};

}  // namespace

ExploreResult explore_efficient_set(std::span<const double> x_star, Mop& mop,
                                    const ExploreConfig& config,
                                    const DescentConfig& descent_config, int set_id) {
  return Explorer(mop, config, descent_config, set_id).run(x_star, std::nullopt);
}

ExploreResult explore_efficient_set(std::span<const double> x_star,
                                    const Objectives& f_star, Mop& mop,
                                    const ExploreConfig& config,
                                    const DescentConfig& descent_config, int set_id) {
  return Explorer(mop, config, descent_config, set_id).run(x_star, f_star);
}

}  // namespace mole
