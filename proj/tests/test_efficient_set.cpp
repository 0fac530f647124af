#include <doctest.h>

#include "mole/efficient_set.hpp"

using namespace mole;

TEST_SUITE("efficient_set") {

TEST_CASE("insertion keeps the ordering") {
  EfficientSetModel s;
  CHECK(s.insert(Vec{0.0, 0.0}, {0.0, 2.0}) == EfficientSetModel::InsertOutcome::Inserted);
  CHECK(s.insert(Vec{2.0, 0.0}, {2.0, 0.0}) == EfficientSetModel::InsertOutcome::Inserted);
  CHECK(s.insert(Vec{1.0, 0.0}, {1.0, 1.0}) == EfficientSetModel::InsertOutcome::Inserted);
  CHECK(s.size() == 3);
  const auto n = s.nodes();
  CHECK(n[1].x == Vec{1.0, 0.0});
  CHECK(s.find(n[1].id)->second.x == Vec{1.0, 0.0});
  CHECK(s.find(999) == s.end());
}

TEST_CASE("duplicates are ignored") {
  EfficientSetModel s;
  s.insert(Vec{0.0, 0.0}, {0.0, 2.0});
  CHECK(s.insert(Vec{0.0, 0.0}, {0.0, 2.0}) == EfficientSetModel::InsertOutcome::Duplicate);
  CHECK(s.size() == 1);
}

TEST_CASE("ordering violations throw") {
  EfficientSetModel s;
  s.insert(Vec{0.0, 0.0}, {0.0, 2.0});
  s.insert(Vec{2.0, 0.0}, {2.0, 0.0});
  auto code = [&](Vec x, Objectives f) {
    try {
      s.insert(std::move(x), f);
    } catch (const MoleError& e) {
      return e.code();
    }
    return ErrorCode::InvalidConfig;
  };
  CHECK(code(Vec{5.0, 5.0}, {0.0, 1.0}) == ErrorCode::OrderingViolation);  // f1 tie
  CHECK(code(Vec{5.0, 5.0}, {1.0, 3.0}) == ErrorCode::OrderingViolation);  // dominated
  CHECK(code(Vec{5.0, 5.0}, {1.0, -1.0}) == ErrorCode::OrderingViolation); // dominates
  CHECK(s.size() == 2);
}

TEST_CASE("turn angles") {
  EfficientSetModel s;
  s.insert(Vec{0.0, 0.0}, {0.0, 2.0});
  s.insert(Vec{1.0, 0.0}, {1.0, 1.0});
  s.insert(Vec{1.0, 1.0}, {2.0, 0.0});
  auto it = s.begin();
  CHECK(s.turn_angle(it) == 0.0);
  CHECK(s.turn_angle(std::next(it)) == doctest::Approx(90.0));
  CHECK(turn_angle(Vec{0, 0}, Vec{1, 0}, Vec{2, 0}) == doctest::Approx(0.0));
}

}
