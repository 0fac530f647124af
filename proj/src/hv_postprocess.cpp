#include "mole/hv_postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>
#include <tuple>

namespace mole {

void PostProcessConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw MoleError(ErrorCode::InvalidConfig, "postprocess: theta must lie in (0, 1]");
  }
  if (max_iterations == 0) {
    throw MoleError(ErrorCode::InvalidConfig, "postprocess: max_iterations must be positive");
  }
}

double hypervolume_2d(std::span<const Objectives> points, const Objectives& reference) {
  std::vector<Objectives> inside;
  inside.reserve(points.size());
  for (const Objectives& p : points) {
    if (p[0] < reference[0] && p[1] < reference[1]) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end());
  double area = 0.0;
  double ceiling = reference[1];
  for (const Objectives& p : inside) {
    if (p[1] >= ceiling) continue;
    area += (reference[0] - p[0]) * (ceiling - p[1]);
    ceiling = p[1];
  }
  return area;
}

double hv_gap(const Objectives& a, const Objectives& b) {
  if (strictly_dominates(a, b) || strictly_dominates(b, a)) {
    throw MoleError(ErrorCode::NotComparablePair, "hv_gap: one vector dominates the other");
  }
  return std::abs(a[0] - b[0]) * std::abs(a[1] - b[1]);
}

double max_expected_descent(std::span<const double> x1, std::span<const double> x2,
                            double phi1_deg, double phi2_deg) {
  const double phi = std::min(std::max(phi1_deg, phi2_deg), 179.0);
  if (phi <= 0.0) return 0.0;
  const double half_open = (180.0 - phi) / 2.0 * std::numbers::pi / 180.0;
  return 0.5 * distance(x1, x2) / std::tan(half_open);
}

double GapSummary::normalized() const {
  if (max_hv > 0.0) return total_gap / max_hv;
  return total_gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

double PostProcessReport::normalized_gap() const {
  return GapSummary{total_gap, max_hv, 0}.normalized();
}

namespace {

// Nondominated objective vectors keyed by f1 with strictly decreasing f2.
class Staircase {
 public:
  /// False if q is weakly dominated by the staircase.
  bool insert(const Objectives& q) {
    auto it = steps_.upper_bound(q[0]);
    if (it != steps_.begin() && std::prev(it)->second <= q[1]) return false;
    while (it != steps_.end() && it->second >= q[1]) it = steps_.erase(it);
    steps_[q[0]] = q[1];
    return true;
  }

  /// True if some step strictly dominates p.
  bool dominates(const Objectives& p) const {
    auto it = steps_.upper_bound(p[0]);
    if (it == steps_.begin()) return false;
    --it;
    return it->second < p[1] || (it->second == p[1] && it->first < p[0]);
  }

  double max_hv() const {
    if (steps_.size() < 2) return 0.0;
    const auto& first = *steps_.begin();
    const auto& last = *steps_.rbegin();
    return (last.first - first.first) * (first.second - last.second);
  }

 private:
  std::map<double, double> steps_;
};

Objectives ideal_of(const Objectives& a, const Objectives& b) {
  return {std::min(a[0], b[0]), std::min(a[1], b[1])};
}

bool strictly_between(const Objectives& f, const Objectives& a, const Objectives& b) {
  return std::min(a[0], b[0]) < f[0] && f[0] < std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) < f[1] && f[1] < std::max(a[1], b[1]);
}

using PairKey = std::tuple<int, std::uint64_t, std::uint64_t>;

struct Candidate {
  double gap;
  PairKey key;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.gap != b.gap) return a.gap < b.gap;
    return a.key > b.key;
  }
};

class Refiner {
 public:
  Refiner(SetsArchive& archive, Mop& mop, const PostProcessConfig& cfg,
          const DescentConfig& dcfg)
      : archive_(archive), mop_(mop), cfg_(cfg), dcfg_(dcfg) {
    cfg_.validate();
    dcfg_.validate();
    dcfg_.record_trace = false;
  }

  PostProcessReport run() {
    const std::size_t evals0 = mop_.evaluations();
    for (const auto& s : archive_.sets()) {
      for (const auto& [key, node] : s) front_.insert(node.f);
    }
    for (const auto& s : archive_.sets()) {
      for (auto it = s.begin(); it != s.end() && std::next(it) != s.end(); ++it) {
        consider(s.id(), it->second, std::next(it)->second);
      }
    }

    double last_max_hv = front_.max_hv();
    while (rep_.iterations < cfg_.max_iterations) {
      const double max_hv = front_.max_hv();
      if (converged(max_hv)) {
        rep_.converged = true;
        break;
      }
      const Candidate c = pop_best();
      const bool stop = refine(c);
      ++rep_.iterations;
      if (cfg_.record_log) {
        rep_.log.push_back({rep_.iterations, total_, front_.max_hv(), last_inserted_,
                            last_skipped_, front_.max_hv() != last_max_hv});
      }
      last_max_hv = front_.max_hv();
      if (stop) break;
    }
    rep_.total_gap = exact_total();
    rep_.max_hv = front_.max_hv();
    if (!rep_.converged) {
      rep_.converged = rep_.total_gap <= cfg_.theta * rep_.max_hv;
    }
    rep_.evals_used = mop_.evaluations() - evals0;
    return std::move(rep_);
  }

 private:
  double exact_total() {
    double t = 0.0;
    for (const auto& [key, gap] : counted_) t += gap;
    total_ = t;
    return t;
  }

  bool converged(double max_hv) {
    if (++since_recompute_ >= 4096) {
      since_recompute_ = 0;
      exact_total();
    }
    if (total_ > cfg_.theta * max_hv) return false;
    return exact_total() <= cfg_.theta * max_hv;
  }

  void consider(int set_id, const SetNode& a, const SetNode& b) {
    const PairKey key{set_id, a.id, b.id};
    if (excluded_.count(key) != 0) return;
    if (front_.dominates(ideal_of(a.f, b.f))) return;
    const double gap = hv_gap(a.f, b.f);
    counted_[key] = gap;
    total_ += gap;
    heap_.push({gap, key});
  }

  void drop(const PairKey& key) {
    auto it = counted_.find(key);
    if (it == counted_.end()) return;
    total_ -= it->second;
    counted_.erase(it);
  }

  // Drops every counted pair whose ideal point q dominates.
  void invalidate_dominated_by(const Objectives& q) {
    for (const auto& s : archive_.sets()) {
      // Only pairs starting at or right of q1 can have a dominated ideal.
      for (auto it = s.lower_bound(q[0]); it != s.end() && std::next(it) != s.end(); ++it) {
        const SetNode& a = it->second;
        const SetNode& b = std::next(it)->second;
        if (b.f[1] < q[1]) break;
        if (pareto_dominates(q, ideal_of(a.f, b.f))) drop({s.id(), a.id, b.id});
      }
    }
  }

  Candidate pop_best() {
    while (!heap_.empty()) {
      const Candidate c = heap_.top();
      heap_.pop();
      if (counted_.count(c.key) != 0) return c;
    }
    throw MoleError(ErrorCode::StalledRefinement,
                    "postprocess: gap above target but no eligible pair left");
  }

  // Returns true when the budget ran out.
  bool refine(const Candidate& c) {
    last_inserted_ = false;
    last_skipped_ = false;
    const auto [set_id, left_id, right_id] = c.key;
    const EfficientSetModel& set = *archive_.find(set_id);
    const auto left = set.find(left_id);
    const auto right = set.find(right_id);
    const SetNode a = left->second;
    const SetNode b = right->second;

    Vec mid(a.x.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (a.x[i] + b.x[i]);
    const double d =
        max_expected_descent(a.x, b.x, set.turn_angle(left), set.turn_angle(right));

    Vec p;
    Objectives fp{};
    bool exhausted = false;
    if (d > dcfg_.alpha_min) {
      DescentResult r = multi_objective_descent(mid, mop_, dcfg_);
      if (r.termination == DescentTermination::BudgetExhausted) {
        exhausted = true;
        if (r.evals_used == 0) {
          rep_.budget_exhausted = true;
          return true;
        }
      }
      p = std::move(r.final_point);
      fp = r.final_objectives;
    } else {
      try {
        fp = mop_.evaluate(mid);
      } catch (const MoleError& e) {
        if (e.code() != ErrorCode::BudgetExhausted) throw;
        rep_.budget_exhausted = true;
        return true;
      }
      last_skipped_ = true;
      ++rep_.skipped_descents;
      if (cfg_.record_skipped) rep_.skipped_midpoints.push_back(mid);
      p = std::move(mid);
    }

    drop(c.key);
    bool placed = false;
    if (strictly_between(fp, a.f, b.f)) {
      try {
        placed = archive_.insert(set_id, p, fp) == EfficientSetModel::InsertOutcome::Inserted;
      } catch (const MoleError& e) {
        if (e.code() != ErrorCode::OrderingViolation) throw;
      }
    }
    if (placed) {
      last_inserted_ = true;
      ++rep_.inserted;
      if (front_.insert(fp)) invalidate_dominated_by(fp);
      const EfficientSetModel& s = *archive_.find(set_id);
      const auto m = std::next(s.find(left_id));
      consider(set_id, a, m->second);
      consider(set_id, m->second, b);
    } else {
      excluded_.insert(c.key);
      ++rep_.excluded_pairs;
    }
    if (exhausted) rep_.budget_exhausted = true;
    return exhausted;
  }

  SetsArchive& archive_;
  Mop& mop_;
  PostProcessConfig cfg_;
  DescentConfig dcfg_;
  PostProcessReport rep_;
  Staircase front_;
  std::map<PairKey, double> counted_;
  std::set<PairKey> excluded_;
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap_;
  double total_ = 0.0;
  std::size_t since_recompute_ = 0;
  bool last_inserted_ = false;
  bool last_skipped_ = false;
};

}  // namespace

GapSummary hv_gap_summary(const SetsArchive& archive) {
  Staircase front;
  for (const auto& s : archive.sets()) {
    for (const auto& [key, node] : s) front.insert(node.f);
  }
  GapSummary g;
  g.max_hv = front.max_hv();
  for (const auto& s : archive.sets()) {
    for (auto it = s.begin(); it != s.end() && std::next(it) != s.end(); ++it) {
      const Objectives& a = it->second.f;
      const Objectives& b = std::next(it)->second.f;
      if (front.dominates(ideal_of(a, b))) continue;
      g.total_gap += hv_gap(a, b);
      ++g.eligible_pairs;
    }
  }
  return g;
}

PostProcessReport post_process_hv(SetsArchive& archive, Mop& mop, const PostProcessConfig& config,
                                  const DescentConfig& descent_config) {
  return Refiner(archive, mop, config, descent_config).run();
}

}  // namespace mole
