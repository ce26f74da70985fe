#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "cmaxpp/schedule.hpp"

using namespace cmaxpp;

TEST_CASE("schedule hand values") {
  CHECK(AlphaSchedule::exponential(100.0, 0.9).alpha(2) ==
        doctest::Approx(91.0));
  CHECK(AlphaSchedule::linear(200.0, 200).alpha(200) == doctest::Approx(1.0));
  CHECK(AlphaSchedule::time_decay(100.0).alpha(2) == doctest::Approx(51.0));
  CHECK(AlphaSchedule::nav_default().alpha(6) == doctest::Approx(98.5));
  CHECK(AlphaSchedule::nav_default().alpha(1) == doctest::Approx(101.0));
  CHECK(AlphaSchedule::step(100.0, 5, 200).alpha(200) == doctest::Approx(1.0));
}

TEST_CASE("constant schedule accepts infinity") {
  const AlphaSchedule inf =
      AlphaSchedule::constant(std::numeric_limits<double>::infinity());
  CHECK(std::isinf(inf.alpha(1)));
  CHECK(std::isinf(inf.alpha(500)));
  CHECK(AlphaSchedule::constant(1.0).alpha(3) == 1.0);
}

TEST_CASE("every schedule is non-increasing and at least one") {
  const AlphaSchedule schedules[] = {
      AlphaSchedule::constant(7.0),
      AlphaSchedule::exponential(100.0, 0.9),
      AlphaSchedule::linear(100.0, 200),
      AlphaSchedule::time_decay(100.0),
      AlphaSchedule::step(100.0, 5, 200),
      AlphaSchedule::nav_default(),
  };
  for (const AlphaSchedule& s : schedules) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 400; ++i) {
      const double a = s.alpha(i);
      CHECK(a >= 1.0);
      CHECK(a <= prev);
      prev = a;
    }
  }
}

TEST_CASE("invalid schedule parameters rejected") {
  CHECK_THROWS_AS(AlphaSchedule::exponential(100.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::exponential(100.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::exponential(-1.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::linear(-1.0, 200), std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::linear(100.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::time_decay(-5.0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::step(100.0, 0, 200), std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::constant(0.5), std::invalid_argument);
  CHECK_THROWS_AS(AlphaSchedule::constant(2.0).alpha(0),
                  std::invalid_argument);
}

TEST_CASE("describe names the schedule") {
  CHECK(AlphaSchedule::nav_default().describe() == "nav_default");
  CHECK(AlphaSchedule::time_decay(100.0).describe().find("time_decay") !=
        std::string::npos);
}
