// Collection of discovered locally efficient sets.

#ifndef MOLE_ARCHIVE_HPP
#define MOLE_ARCHIVE_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "mole/efficient_set.hpp"

namespace mole {

struct ArchivePoint {
  int set_id;
  std::uint64_t node_id;
  Vec x;
  Objectives f;
};

class SetsArchive {
 public:
  /// Takes ownership of `set` and assigns it the next set id.
  int add(EfficientSetModel set);

  /// Inserts a node into the set with the given id. Throws OrderingViolation
  /// like EfficientSetModel::insert and InvalidConfig for unknown ids.
  EfficientSetModel::InsertOutcome insert(int set_id, Vec x, const Objectives& f);

  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  std::size_t total_nodes() const;
  int next_set_id() const { return next_set_id_; }

  const std::deque<EfficientSetModel>& sets() const { return sets_; }
  const EfficientSetModel* find(int set_id) const;

  /// Nondominated nodes over all sets, sorted by f1. Nodes with identical
  /// objective vectors appear once. Cached until the next mutation.
  const std::vector<ArchivePoint>& nondominated() const;

  /// True if some node of the set is in the nondominated front.
  bool contributes_to_front(int set_id) const;

 private:
  std::deque<EfficientSetModel> sets_;
  int next_set_id_ = 0;
  mutable std::optional<std::vector<ArchivePoint>> front_;
};

/// Nondominated subset of `points`, sorted by f1 (duplicates removed).
std::vector<Objectives> nondominated_front(std::vector<Objectives> points);

}  // namespace mole

#endif  // MOLE_ARCHIVE_HPP
