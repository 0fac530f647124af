// Piece-wise linear model of one bi-objective locally efficient set.

#ifndef MOLE_EFFICIENT_SET_HPP
#define MOLE_EFFICIENT_SET_HPP

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "mole/problem.hpp"

namespace mole {

struct SetNode {
  Vec x;
  Objectives f;
  /// Unique within the owning model; stable across insertions.
  std::uint64_t id;
};

/// Nodes are kept strictly increasing in f1 and strictly decreasing in f2,
/// so consecutive nodes are mutually nondominating. Iterators are stable.
class EfficientSetModel {
 public:
  using Map = std::map<double, SetNode>;
  using const_iterator = Map::const_iterator;

  static constexpr double kDuplicateDistance = 1e-12;

  enum class InsertOutcome { Inserted, Duplicate };

  explicit EfficientSetModel(int set_id = 0) : set_id_(set_id) {}

  int id() const { return set_id_; }
  void set_id(int id) { set_id_ = id; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const_iterator begin() const { return nodes_.begin(); }
  const_iterator end() const { return nodes_.end(); }
  /// First node with f1 >= value.
  const_iterator lower_bound(double f1) const { return nodes_.lower_bound(f1); }
  /// Node with the smallest f1.
  const SetNode& front() const { return nodes_.begin()->second; }
  /// Node with the largest f1.
  const SetNode& back() const { return nodes_.rbegin()->second; }

  /// Inserts at the position implied by f1. Throws OrderingViolation when
  /// the node would break the ordering invariant.
  InsertOutcome insert(Vec x, const Objectives& f);

  /// Returns the iterator of the node with the given id, or end().
  const_iterator find(std::uint64_t node_id) const;

  /// Ordered copy of the nodes.
  std::vector<SetNode> nodes() const;

  /// Turn angle in degrees at `it` between the incoming and outgoing
  /// segments; 0 at the endpoints.
  double turn_angle(const_iterator it) const;

 private:
  Map nodes_;
  std::unordered_map<std::uint64_t, double> key_of_;
  int set_id_;
  std::uint64_t next_node_id_ = 0;
};

/// Angle in degrees between two vectors; 0 if either is zero.
double angle_between(std::span<const double> a, std::span<const double> b);

/// Turn angle at `b` along the polyline a -> b -> c, in degrees.
double turn_angle(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c);

}  // namespace mole

#endif  // MOLE_EFFICIENT_SET_HPP
