#include <catch2/catch_amalgamated.hpp>

#include "lsg/grid.hpp"

using namespace lsg;

TEST_CASE("forward difference of a constant vanishes") {
  auto f = sample_grid<Rational>(0, 8, [](long) { return Rational(5); });
  auto d = forward_difference(f, 1);
  REQUIRE(d.size() == 7);
  for (const auto& v : d.values) CHECK(v == 0);
}

TEST_CASE("second difference of n^2 is constant 2") {
  auto f = sample_grid<Rational>(-3, 10, [](long n) { return Rational(n) * n; });
  auto d = forward_difference(f, 2);
  for (const auto& v : d.values) CHECK(v == 2);
}

TEST_CASE("fourth difference of n^3 vanishes") {
  auto f = sample_grid<Rational>(0, 9, [](long n) { return Rational(n) * n * n; });
  auto d = forward_difference(f, 4);
  for (const auto& v : d.values) CHECK(v == 0);
}

TEST_CASE("forward difference demands a large enough window") {
  auto f = sample_grid<double>(0, 3, [](long n) { return static_cast<double>(n); });
  CHECK_THROWS_AS(forward_difference(f, 3), std::invalid_argument);
  CHECK_THROWS_AS(forward_difference(f, -1), std::invalid_argument);
}

TEST_CASE("slow order of affine and quadratic data") {
  auto lin = sample_grid<Rational>(0, 6, [](long n) { return Rational(3) * n + 5; });
  CHECK(slow_order(lin) == 1);
  auto quad = sample_grid<Rational>(0, 6, [](long n) { return Rational(n) * n; });
  CHECK(slow_order(quad) == 2);
  auto con = sample_grid<Rational>(0, 6, [](long) { return Rational(9); });
  CHECK(slow_order(con) == 0);
}

TEST_CASE("exponential data exhausts the window") {
  auto f = sample_grid<Rational>(0, 6, [](long n) {
    Rational v = 1;
    for (long j = 0; j < n; ++j) v *= 2;
    return v;
  });
  CHECK(slow_order(f, 0.0) == std::nullopt);
}

TEST_CASE("slow order tolerates floating-point noise") {
  auto f = sample_grid<double>(0, 8, [](long n) {
    return static_cast<double>(n * n) + 1e-13 * ((n * 2654435761u) % 7);
  });
  CHECK(slow_order(f, 1e-10) == 2);
}
