#include "mole/efficient_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mole {

double angle_between(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double turn_angle(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c) {
  Vec in(b.size()), out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    in[i] = b[i] - a[i];
    out[i] = c[i] - b[i];
  }
  return angle_between(in, out);
}

EfficientSetModel::InsertOutcome EfficientSetModel::insert(Vec x, const Objectives& f) {
  auto same_point = [&](const SetNode& n) {
    return distance(n.x, x) < kDuplicateDistance;
  };
  auto next = nodes_.lower_bound(f[0]);
  if (next != nodes_.end() && same_point(next->second)) return InsertOutcome::Duplicate;
  if (next != nodes_.begin() && same_point(std::prev(next)->second)) {
    return InsertOutcome::Duplicate;
  }
  if (next != nodes_.end() && next->first == f[0]) {
    throw MoleError(ErrorCode::OrderingViolation, "set model: f1 ties an existing node");
  }
  if (next != nodes_.end() && !(next->second.f[1] < f[1])) {
    throw MoleError(ErrorCode::OrderingViolation,
                    "set model: node dominates or ties its right neighbour");
  }
  if (next != nodes_.begin() && !(std::prev(next)->second.f[1] > f[1])) {
    throw MoleError(ErrorCode::OrderingViolation,
                    "set model: node is dominated by its left neighbour");
  }
  key_of_.emplace(next_node_id_, f[0]);
  nodes_.emplace_hint(next, f[0], SetNode{std::move(x), f, next_node_id_++});
  return InsertOutcome::Inserted;
}

EfficientSetModel::const_iterator EfficientSetModel::find(std::uint64_t node_id) const {
  const auto k = key_of_.find(node_id);
  return k == key_of_.end() ? nodes_.end() : nodes_.find(k->second);
}

std::vector<SetNode> EfficientSetModel::nodes() const {
  std::vector<SetNode> out;
  out.reserve(nodes_.size());
  for (const auto& kv : nodes_) out.push_back(kv.second);
  return out;
}

double EfficientSetModel::turn_angle(const_iterator it) const {
  if (it == nodes_.begin() || it == nodes_.end() || std::next(it) == nodes_.end()) return 0.0;
  return mole::turn_angle(std::prev(it)->second.x, it->second.x, std::next(it)->second.x);
}

}  // namespace mole
