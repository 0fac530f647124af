#include "mole/archive.hpp"

#include <algorithm>

namespace mole {

int SetsArchive::add(EfficientSetModel set) {
  const int id = next_set_id_++;
  set.set_id(id);
  sets_.push_back(std::move(set));
  front_.reset();
  return id;
}

EfficientSetModel::InsertOutcome SetsArchive::insert(int set_id, Vec x, const Objectives& f) {
  for (EfficientSetModel& s : sets_) {
    if (s.id() != set_id) continue;
    const auto outcome = s.insert(std::move(x), f);
    if (outcome == EfficientSetModel::InsertOutcome::Inserted) front_.reset();
    return outcome;
  }
  throw MoleError(ErrorCode::InvalidConfig, "archive: unknown set id");
}

std::size_t SetsArchive::total_nodes() const {
  std::size_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

const EfficientSetModel* SetsArchive::find(int set_id) const {
  for (const auto& s : sets_) {
    if (s.id() == set_id) return &s;
  }
  return nullptr;
}

const std::vector<ArchivePoint>& SetsArchive::nondominated() const {
  if (front_) return *front_;
  std::vector<ArchivePoint> all;
  all.reserve(total_nodes());
  for (const auto& s : sets_) {
    for (const auto& [key, node] : s) all.push_back({s.id(), node.id, node.x, node.f});
  }
  std::stable_sort(all.begin(), all.end(), [](const ArchivePoint& a, const ArchivePoint& b) {
    return a.f[0] < b.f[0] || (a.f[0] == b.f[0] && a.f[1] < b.f[1]);
  });
  std::vector<ArchivePoint> front;
  for (auto& p : all) {
    if (!front.empty() && front.back().f[1] <= p.f[1]) continue;
    front.push_back(std::move(p));
  }
  front_ = std::move(front);
  return *front_;
}

bool SetsArchive::contributes_to_front(int set_id) const {
  const auto& front = nondominated();
  return std::any_of(front.begin(), front.end(),
                     [set_id](const ArchivePoint& p) { return p.set_id == set_id; });
}

std::vector<Objectives> nondominated_front(std::vector<Objectives> points) {
  std::sort(points.begin(), points.end());
  std::vector<Objectives> front;
  for (const Objectives& p : points) {
    if (!front.empty() && front.back()[1] <= p[1]) continue;
    front.push_back(p);
  }
  return front;
}

}  // namespace mole
