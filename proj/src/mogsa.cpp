#include "mole/mogsa.hpp"

#include "mole/efficient_set.hpp"
#include "mole/mog.hpp"

namespace mole {

MogsaConfig MogsaConfig::defaults_for(double diag) {
  MogsaConfig c;
  c.descent_step = diag / 100.0;
  c.explore_step = diag / 200.0;
  return c;
}

void MogsaConfig::validate() const {
  if (!(descent_step > 0.0) || !(explore_step > 0.0) || !(mog_eps > 0.0)) {
    throw MoleError(ErrorCode::InvalidConfig, "mogsa: steps and mog_eps must be positive");
  }
  if (max_descent_iter == 0 || max_explore_iter == 0 || max_rounds == 0) {
    throw MoleError(ErrorCode::InvalidConfig, "mogsa: iteration caps must be positive");
  }
}

const char* to_string(MogsaTermination t) {
  switch (t) {
    case MogsaTermination::StrictSetPresumed: return "StrictSetPresumed";
    case MogsaTermination::IterationCap: return "IterationCap";
    case MogsaTermination::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

namespace {

Vec clamp_to(const Mop& mop, Vec x) {
  if (mop.bounds()) return mop.bounds()->clamp(x);
  return x;
}

void note(MogsaArchive* log, const Vec& x, const Objectives& f, MogsaPhase phase) {
  if (log != nullptr) log->visited.push_back({x, f, phase, log->rounds});
}

}  // namespace

MogsaDescentResult mogsa_descent(std::span<const double> x0, Mop& mop, const MogsaConfig& cfg,
                                 MogsaArchive* log) {
  cfg.validate();
  MogsaDescentResult r{Vec(x0.begin(), x0.end()), {}, false, 0};
  r.f = mop.evaluate(r.x);
  note(log, r.x, r.f, MogsaPhase::Descent);
  for (; r.iterations < cfg.max_descent_iter; ++r.iterations) {
    const GradientPair g = mop.estimate_gradients(r.x);
    const MogResult m = mog_normalized(g.g1, g.g2);
    if (m.length() < cfg.mog_eps) {
      r.converged = true;
      return r;
    }
    Vec next = clamp_to(mop, axpy(-cfg.descent_step, m.direction, r.x));
    if (next == r.x) {
      r.converged = true;
      return r;
    }
    r.x = std::move(next);
    r.f = mop.evaluate(r.x);
    note(log, r.x, r.f, MogsaPhase::Descent);
  }
  return r;
}

MogsaExploreResult mogsa_explore(std::span<const double> x_star, Mop& mop,
                                 const MogsaConfig& cfg, MogsaArchive* log) {
  cfg.validate();
  MogsaExploreResult out;
  for (int obj = 0; obj < 2; ++obj) {
    Vec x(x_star.begin(), x_star.end());
    Vec tracked_prev;
    bool optimum = false;
    for (std::size_t it = 0; it < cfg.max_explore_iter; ++it) {
      const GradientPair g = mop.estimate_gradients(x);
      const Vec& tracked = obj == 0 ? g.g1 : g.g2;
      const double n = norm(tracked);
      if (n < kDegeneracyTolerance || norm(obj == 0 ? g.g2 : g.g1) < kDegeneracyTolerance ||
          (!tracked_prev.empty() && angle_between(tracked_prev, tracked) > 90.0)) {
        optimum = true;
        break;
      }
      if (angle_between(g.g1, g.g2) < 90.0) {
        out.next = std::move(x);
        return out;
      }
      Vec next = clamp_to(mop, axpy(-cfg.explore_step / n, tracked, x));
      if (next == x) {
        optimum = true;
        break;
      }
      x = std::move(next);
      note(log, x, mop.evaluate(x), MogsaPhase::Explore);
      tracked_prev = tracked;
    }
    if (!optimum) {
      out.capped = true;
      return out;
    }
  }
  return out;
}

MogsaArchive run_mogsa(std::span<const double> x, Mop& mop, const MogsaConfig& cfg) {
  cfg.validate();
  MogsaArchive archive;
  Vec current(x.begin(), x.end());
  try {
    for (; archive.rounds < cfg.max_rounds; ++archive.rounds) {
      const MogsaDescentResult d = mogsa_descent(current, mop, cfg, &archive);
      if (!d.converged) {
        archive.termination = MogsaTermination::IterationCap;
        return archive;
      }
      archive.efficient_points.push_back(d.x);
      MogsaExploreResult e = mogsa_explore(d.x, mop, cfg, &archive);
      if (e.capped) {
        archive.termination = MogsaTermination::IterationCap;
        return archive;
      }
      if (!e.next) {
        archive.termination = MogsaTermination::StrictSetPresumed;
        return archive;
      }
      current = std::move(*e.next);
    }
    archive.termination = MogsaTermination::IterationCap;
  } catch (const MoleError& e) {
    if (e.code() != ErrorCode::BudgetExhausted) throw;
    archive.termination = MogsaTermination::BudgetExhausted;
  }
  return archive;
}

}  // namespace mole
