#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lsg/shift_expansion.hpp"
#include "lsg/two_scale_system.hpp"

using namespace lsg;

namespace {

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng), den(rng));
}

int offset_index(int i, int j) {
  for (std::size_t k = 0; k < two_scale_offsets.size(); ++k)
    if (two_scale_offsets[k] == std::pair<int, int>{i, j}) return static_cast<int>(k);
  FAIL("offset outside stencil");
  return -1;
}

}  // namespace

TEST_CASE("forward matrix rows for pure coarse shifts") {
  const int n = 4;
  const auto a = two_scale_forward_matrix<Rational>(Rational(n));
  const int r = offset_index(1, 0);
  CHECK(a[r][offset_index(1, 0)] == Rational(n) + Rational(n * (n - 1), 2));
  CHECK(a[r][offset_index(-1, 0)] == Rational(n * (n - 1), 2));
  CHECK(a[r][offset_index(0, 1)] == 0);
  const int r2 = offset_index(0, -1);
  CHECK(a[r2][offset_index(0, -1)] ==
        Rational(n * n) + Rational(n * n * (n * n - 1), 2));
  CHECK(a[r2][offset_index(0, 1)] == Rational(n * n * (n * n - 1), 2));
  CHECK(a[r2][offset_index(1, 0)] == 0);
}

TEST_CASE("oracle inverse is exact") {
  for (int n : {2, 4, 7}) {
    const TwoScaleSystem s = two_scale_system_oracle(n);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        Rational acc = 0;
        for (int j = 0; j < 8; ++j) acc += s.forward[r][j] * s.inverse[j][c];
        CHECK(acc == (r == c ? 1 : 0));
      }
  }
}

TEST_CASE("round trip through the system on random deviations") {
  std::mt19937 rng(2024);
  const TwoScaleSystem s = two_scale_system_oracle(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Rational, 8> x;
    for (auto& v : x) v = rand_rational(rng);
    std::array<Rational, 8> b{};
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) b[r] += s.forward[r][c] * x[c];
    for (int r = 0; r < 8; ++r) {
      Rational acc = 0;
      for (int c = 0; c < 8; ++c) acc += s.inverse[r][c] * b[c];
      CHECK(acc == x[r]);
    }
  }
}

TEST_CASE("Laurent truncation of the exact inverse is the nine-point stencil") {
  for (int n : {4, 8, 16}) {
    for (int sign : {+1, -1}) {
      const auto truncated = two_scale_inverse_truncated(n, sign);
      const auto stencil = two_scale_expansion(n, 1, 1, 2, sign).coefficients;
      CHECK(truncated == stencil);
    }
  }
}

TEST_CASE("stencil coefficient spot values at N=4") {
  const auto c = two_scale_inverse_truncated(4, +1);
  // antisymmetric n1 part: 1/(2N)
  CHECK((c.at({1, 0}) - c.at({-1, 0})) / 2 == Rational(1, 8));
  // mixed corner block: 1/(4N^3)
  CHECK(c.at({1, 1}) == Rational(1, 256));
  CHECK(c.at({-1, 1}) == -Rational(1, 256));
  CHECK(c.at({1, -1}) == -Rational(1, 256));
  CHECK(c.at({-1, -1}) == Rational(1, 256));
}

TEST_CASE("leading orders are the two first symmetric differences") {
  // below the N^-3 mixed terms the stencil splits into independent n1 and
  // n2 symmetric differences
  const RatFunc n = RatFunc::variable();
  const auto inv = invert_matrix(two_scale_forward_matrix<RatFunc>(n));
  const int row = 4;  // fine offset (1,1)
  const auto s1 = laurent_series(inv[row][0] - inv[row][1], 2);  // (1,0) minus (-1,0)
  REQUIRE(s1.count(1) == 1);
  CHECK(s1.at(1) == 1);  // 2 * 1/(2N)
  const auto s2 = laurent_series(inv[row][2] - inv[row][3], 2);  // (0,1) minus (0,-1)
  REQUIRE(s2.count(2) == 1);
  CHECK(s2.at(2) == 1);  // 2 * 1/(2N^2)
}

TEST_CASE("polynomial fields survive forward-then-inverse exactly") {
  // deviations sampled from a polynomial in the fine corrections
  std::mt19937 rng(99);
  for (int n : {3, 6}) {
    const TwoScaleSystem s = two_scale_system_oracle(n);
    const Rational eps(1, n);
    Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);
    auto g = [&](const Rational& x1, const Rational& x2) {
      return a * x1 * x1 + b * x1 + c * x2;
    };
    std::array<Rational, 8> x;
    for (int i = 0; i < 8; ++i) {
      auto [d1, d2] = two_scale_offsets[i];
      x[i] = g(Rational(d1) * eps, Rational(d2) * eps * eps) - g(0, 0);
    }
    std::array<Rational, 8> coarse{};
    for (int r = 0; r < 8; ++r)
      for (int col = 0; col < 8; ++col) coarse[r] += s.forward[r][col] * x[col];
    // the coarse shifts must equal the polynomial sampled at coarse offsets
    for (int r = 0; r < 8; ++r) {
      auto [e1, e2] = two_scale_offsets[r];
      CHECK(coarse[r] == g(Rational(e1), Rational(e2)) - g(0, 0));
    }
  }
}

TEST_CASE("singular and invalid inputs are rejected") {
  CHECK_THROWS_AS(two_scale_system_oracle(1), std::invalid_argument);
  CHECK_THROWS_AS(two_scale_inverse_truncated(4, 2), std::invalid_argument);
  Mat8<Rational> zero{};
  CHECK_THROWS_AS(invert_matrix(zero), std::runtime_error);
}
