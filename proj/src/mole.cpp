#include "mole/mole.hpp"

#include <random>

namespace mole {

MoleConfig MoleConfig::defaults_for(const Mop& mop) {
  MoleConfig c;
  const double d = diag(mop.bounds());
  c.descent = DescentConfig::defaults_for(d);
  c.explore = ExploreConfig::defaults_for(d);
  return c;
}

void MoleConfig::validate() const {
  if (max_starting_points == 0 || max_sets == 0) {
    throw MoleError(ErrorCode::InvalidConfig,
                    "mole: max_starting_points and max_sets must be positive");
  }
  if (source == StartSource::ExplicitList && start_points.empty()) {
    throw MoleError(ErrorCode::InvalidConfig, "mole: explicit start list is empty");
  }
  descent.validate();
  explore.validate();
  postprocess.validate();
}

std::optional<SetHit> find_containing_set(std::span<const double> x, const Objectives& f,
                                          const SetsArchive& archive, double sigma_min) {
  for (const EfficientSetModel& s : archive.sets()) {
    for (auto it = s.begin(); it != s.end(); ++it) {
      const SetNode& a = it->second;
      if (distance(x, a.x) <= sigma_min) return SetHit{s.id(), a.id, a.id};
      const auto nx = std::next(it);
      if (nx == s.end()) continue;
      const SetNode& b = nx->second;
      const bool inside_box = a.f[0] < f[0] && f[0] < b.f[0] && b.f[1] < f[1] && f[1] < a.f[1];
      if (!inside_box) continue;
      const double spacing = distance(a.x, b.x);
      if (distance(x, a.x) <= spacing && distance(x, b.x) <= spacing) {
        return SetHit{s.id(), a.id, b.id};
      }
    }
  }
  return std::nullopt;
}

namespace {

struct Pending {
  Vec x;
  Objectives f;
  std::optional<int> parent_set;
};

class MoleRun {
 public:
  MoleRun(Mop& mop, const MoleConfig& cfg) : mop_(mop), cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    if (cfg_.source == StartSource::UniformRandom && !mop_.bounds()) {
      throw MoleError(ErrorCode::MissingBounds, "mole: random starts need box bounds");
    }
    for (const Vec& p : cfg_.start_points) {
      if (p.size() != mop_.dimension()) {
        throw MoleError(ErrorCode::DimensionMismatch, "mole: start point has wrong dimension");
      }
    }
  }

  MoleRunReport run() {
    const std::size_t evals0 = mop_.evaluations();
    try {
      process_starts();
    } catch (const MoleError& e) {
      if (e.code() != ErrorCode::BudgetExhausted) throw;
      rep_.budget_exhausted = true;
    }
    // Final flush so that sets found after the last scheduled pass are refined too.
    if (cfg_.postprocess_enabled && !rep_.archive.empty() && !rep_.budget_exhausted) {
      post_process();
    }
    rep_.evals_used = mop_.evaluations() - evals0;
    return std::move(rep_);
  }

 private:
  std::optional<Vec> next_start() {
    const std::size_t i = rep_.starting_points_consumed;
    if (i >= cfg_.max_starting_points) return std::nullopt;
    if (cfg_.source == StartSource::ExplicitList) {
      if (i >= cfg_.start_points.size()) return std::nullopt;
      return cfg_.start_points[i];
    }
    const BoxBounds& b = *mop_.bounds();
    Vec x(mop_.dimension());
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::uniform_real_distribution<double> u(b.lower[k], b.upper[k]);
      x[k] = u(rng_);
    }
    return x;
  }

  void process_starts() {
    while (!rep_.max_sets_reached) {
      std::optional<Vec> start = next_start();
      if (!start) break;
      const std::size_t start_index = rep_.starting_points_consumed++;
      bool new_front_set = false;
      const bool ok = process_start(*start, start_index, new_front_set);
      if (!ok) {
        rep_.budget_exhausted = true;
        return;
      }
      ++rep_.successful_starts;
      if (!cfg_.postprocess_enabled) continue;
      const bool warm = rep_.successful_starts >= cfg_.postprocess_warmup;
      if (warm && (rep_.successful_starts == cfg_.postprocess_warmup || new_front_set)) {
        if (!post_process()) return;
      }
    }
  }

  // Returns false when the budget ran out.
  bool process_start(const Vec& start, std::size_t start_index, bool& new_front_set) {
    if (mop_.bounds() && !mop_.bounds()->contains(start)) {
      throw MoleError(ErrorCode::OutOfBounds, "mole: starting point outside the box");
    }
    const DescentResult d = multi_objective_descent(start, mop_, cfg_.descent);
    if (d.termination == DescentTermination::BudgetExhausted) return false;

    std::vector<Pending> stack;
    push(stack, {d.final_point, d.final_objectives, std::nullopt});
    std::vector<int> created;
    while (!stack.empty()) {
      Pending p = std::move(stack.back());
      stack.pop_back();
      if (cfg_.record_stack_trace) rep_.stack_trace.push_back({StackEvent::Kind::Pop, p.x});

      if (const auto hit = find_containing_set(p.x, p.f, rep_.archive, cfg_.explore.sigma_min)) {
        ++rep_.archive_hits;
        try {
          rep_.archive.insert(hit->set_id, p.x, p.f);
        } catch (const MoleError& e) {
          if (e.code() != ErrorCode::OrderingViolation) throw;
          rep_.quarantine.push_back({hit->set_id, p.x, p.f});
        }
        continue;
      }

      ++rep_.explore_calls;
      ExploreResult e = explore_efficient_set(p.x, p.f, mop_, cfg_.explore, cfg_.descent);
      const int id = rep_.archive.add(std::move(e.set));
      created.push_back(id);
      rep_.provenance.push_back({id, start_index, p.parent_set, p.x, e.evals_used});
      if (e.budget_exhausted) return false;
      if (rep_.archive.size() >= cfg_.max_sets) {
        rep_.max_sets_reached = true;
        break;
      }
      for (SuperposedPoint& s : e.superposed) push(stack, {std::move(s.x), s.f, id});
    }
    for (int id : created) {
      if (rep_.archive.contributes_to_front(id)) new_front_set = true;
    }
    return true;
  }

  void push(std::vector<Pending>& stack, Pending p) {
    if (cfg_.record_stack_trace) rep_.stack_trace.push_back({StackEvent::Kind::Push, p.x});
    stack.push_back(std::move(p));
  }

  // Returns false when the budget ran out.
  bool post_process() {
    PostProcessReport r = post_process_hv(rep_.archive, mop_, cfg_.postprocess, cfg_.descent);
    ++rep_.postprocess_runs;
    rep_.postprocess_evals += r.evals_used;
    const bool exhausted = r.budget_exhausted;
    rep_.postprocess.push_back(std::move(r));
    if (exhausted) rep_.budget_exhausted = true;
    return !exhausted;
  }

  Mop& mop_;
  MoleConfig cfg_;
  std::mt19937_64 rng_;
  MoleRunReport rep_;
};

}  // namespace

MoleRunReport run_mole(Mop& mop, const MoleConfig& config) { return MoleRun(mop, config).run(); }

}  // namespace mole
