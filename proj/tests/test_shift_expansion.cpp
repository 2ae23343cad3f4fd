#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lsg/grid.hpp"
#include "lsg/shift_expansion.hpp"
#include "lsg/stirling.hpp"

using namespace lsg;

namespace {

struct Poly2 {
  // coefficients c[i][j] of x1^i x2^j
  Rational c[3][3]{};
  Rational eval(const Rational& x1, const Rational& x2) const {
    Rational acc = 0;
    Rational p1 = 1;
    for (int i = 0; i < 3; ++i) {
      Rational p2 = 1;
      for (int j = 0; j < 3; ++j) {
        acc += c[i][j] * p1 * p2;
        p2 *= x2;
      }
      p1 *= x1;
    }
    return acc;
  }
};

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("symmetric p=2 stencil on n^2 with N=3") {
  // f(n) = n^2, coarse samples g_{n1} = (3 n1)^2: g_{-1} = g_1 = 9, g_0 = 0
  auto g = sample_grid<Rational>(-1, 3, [](long n1) { return Rational(9) * n1 * n1; });
  CHECK(shift_one_scale(g, 0, 3, 2, ShiftMode::Symmetric, +1) == 1);
  CHECK(shift_one_scale(g, 0, 3, 2, ShiftMode::Symmetric, -1) == 1);
}

TEST_CASE("forward p=1 on linear data is exact") {
  const int n = 5;
  auto g = sample_grid<Rational>(0, 4, [&](long n1) { return Rational(n) * n1; });  // f(n) = n
  for (long base = 0; base <= 2; ++base) {
    CHECK(shift_one_scale(g, base, n, 1, ShiftMode::Forward, +1) == Rational(n) * base + 1);
  }
}

TEST_CASE("constant data is reproduced by every stencil") {
  auto g = sample_grid<Rational>(-2, 5, [](long) { return Rational(7, 3); });
  for (int sign : {+1, -1}) {
    CHECK(shift_one_scale(g, 0, 4, 1, ShiftMode::Forward, sign) == Rational(7, 3));
    CHECK(shift_one_scale(g, 0, 4, 2, ShiftMode::Forward, sign) == Rational(7, 3));
    CHECK(shift_one_scale(g, 0, 4, 2, ShiftMode::Symmetric, sign) == Rational(7, 3));
  }
}

TEST_CASE("one-scale stencils are exact on polynomials of matching degree") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);
    for (int n = 2; n <= 10; ++n) {
      const Rational eps(1, n);
      auto f = [&](const Rational& x) { return a * x * x + b * x + c; };
      auto g = sample_grid<Rational>(-2, 6, [&](long n1) { return f(Rational(n1)); });
      for (int sign : {+1, -1}) {
        // fine point n*base + sign maps to coarse argument base + sign/N
        const Rational expect = f(Rational(sign) * eps);
        CHECK(shift_one_scale(g, 0, n, 2, ShiftMode::Symmetric, sign) == expect);
        CHECK(shift_one_scale(g, 0, n, 2, ShiftMode::Forward, sign) == expect);
        const Rational lin_expect = b * Rational(sign) * eps + c;
        auto glin = sample_grid<Rational>(-2, 6,
                                          [&](long n1) { return b * Rational(n1) + c; });
        CHECK(shift_one_scale(glin, 0, n, 1, ShiftMode::Forward, sign) == lin_expect);
      }
    }
  }
}

TEST_CASE("unsupported stencil parameters are rejected") {
  CHECK_THROWS_AS(one_scale_expansion(4, 1, ShiftMode::Symmetric), std::invalid_argument);
  CHECK_THROWS_AS(one_scale_expansion(4, 3, ShiftMode::Forward), std::invalid_argument);
  CHECK_THROWS_AS(one_scale_expansion(1, 1, ShiftMode::Forward), std::invalid_argument);
  CHECK_THROWS_AS(one_scale_expansion(4, 1, ShiftMode::Forward, 2), std::invalid_argument);
  CHECK_THROWS_AS(two_scale_expansion(4, 1, 1, 3), std::invalid_argument);
}

TEST_CASE("two-scale stencil on constant and linear envelopes") {
  auto constant = [](int, int) { return Rational(4, 7); };
  CHECK(shift_two_scale<Rational>(constant, 6, 1, 1, 2, +1) == Rational(4, 7));
  CHECK(shift_two_scale<Rational>(constant, 6, 1, 1, 1, -1) == Rational(4, 7));

  // g = n1: the first symmetric difference alone carries the shift
  const int n = 8;
  auto linear = [](int d1, int) { return Rational(d1); };
  const Rational fwd = shift_two_scale<Rational>(linear, n, 1, 1, 2, +1);
  const Rational bwd = shift_two_scale<Rational>(linear, n, 1, 1, 2, -1);
  CHECK(fwd == Rational(1, n));
  CHECK(fwd - bwd == Rational(2, n));
}

TEST_CASE("nine-point stencil reproduces A n1^2 + B n2 exactly") {
  // degree-2-in-n1, degree-1-in-n2 data sits inside the truncation order:
  // the O(N^-4) remainder vanishes identically for it
  Poly2 g;
  g.c[2][0] = Rational(3, 2);  // A
  g.c[0][1] = Rational(-5, 4);  // B
  for (int n : {4, 8}) {
    const Rational eps(1, n);
    const Rational x1 = 2, x2 = Rational(1, 3);
    for (int sign : {+1, -1}) {
      auto sampler = [&](int d1, int d2) { return g.eval(x1 + d1, x2 + d2); };
      const Rational approx = shift_two_scale<Rational>(sampler, n, 1, 1, 2, sign);
      const Rational exact = g.eval(x1 + Rational(sign) * eps, x2 + Rational(sign) * eps * eps);
      CHECK(approx == exact);
    }
  }
}

TEST_CASE("truncation order of the two-scale stencils") {
  // n1^2 n2 excites the dropped orders: the nine-point residual scales as
  // N^-4 and the mixed-order variant as N^-3
  Poly2 g;
  g.c[2][1] = 1;
  const Rational x1 = 2, x2 = Rational(1, 2);
  auto residual = [&](int n, int n2_order) {
    const Rational eps(1, n);
    auto sampler = [&](int d1, int d2) { return g.eval(x1 + d1, x2 + d2); };
    const Rational approx = shift_two_scale<Rational>(sampler, n, 1, 1, n2_order, +1);
    const Rational exact = g.eval(x1 + eps, x2 + eps * eps);
    return abs(approx - exact);
  };
  for (int n : {8, 16}) {
    const double r1 = to_double(residual(n, 2)) / to_double(residual(2 * n, 2));
    CHECK(r1 >= 16.0 / 1.2);
    CHECK(r1 <= 16.0 * 1.2);
    const double r2 = to_double(residual(n, 1)) / to_double(residual(2 * n, 1));
    CHECK(r2 >= 8.0 / 1.2);
    CHECK(r2 <= 8.0 * 1.2);
  }
  // the nine-point residual on this data is exactly eps^4
  CHECK(residual(8, 2) == Rational(1, 4096));
}

TEST_CASE("integer slow lattices require divisibility") {
  auto constant = [](int, int) { return Rational(1); };
  CHECK_NOTHROW(shift_two_scale<Rational>(constant, 6, 3, 4, 2, +1, true));
  CHECK_THROWS_AS(shift_two_scale<Rational>(constant, 6, 4, 1, 2, +1, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(shift_two_scale<Rational>(constant, 6, 1, 5, 2, +1, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(shift_two_scale<Rational>(constant, 6, 0, 1, 2, +1, true),
                  std::invalid_argument);
}

TEST_CASE("coarse and fine difference expansions invert each other") {
  // degree-4 polynomial: both expansions terminate at i = 4 and composing
  // them is the exact identity
  std::mt19937 rng(777);
  const int n = 5;
  const Rational eps(1, n);
  for (int trial = 0; trial < 10; ++trial) {
    Rational coef[5];
    for (auto& c : coef) c = rand_rational(rng);
    auto gfun = [&](const Rational& x) {
      Rational acc = 0, p = 1;
      for (const auto& c : coef) {
        acc += c * p;
        p *= x;
      }
      return acc;
    };
    auto fine = sample_grid<Rational>(0, 6, [&](long j) { return gfun(Rational(j) * eps); });
    auto coarse = sample_grid<Rational>(0, 6, [&](long n1) { return gfun(Rational(n1)); });
    Rational fact[6] = {1, 1, 2, 6, 24, 120};
    // forward: Delta^k g from fine differences with omega = N
    for (int k = 0; k <= 4; ++k) {
      Rational acc = 0;
      for (int i = k; i <= 4; ++i)
        acc += fact[k] / fact[i] * coeff_P(i, k, Rational(n)) *
               forward_difference(fine, i).at(0);
      CHECK(acc == forward_difference(coarse, k).at(0));
    }
    // inverse: Delta^k f from coarse differences with omega = 1/N
    for (int k = 0; k <= 4; ++k) {
      Rational acc = 0;
      for (int i = k; i <= 4; ++i)
        acc += fact[k] / fact[i] * coeff_P(i, k, eps) * forward_difference(coarse, i).at(0);
      CHECK(acc == forward_difference(fine, k).at(0));
    }
  }
}
