#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

#include "lsg/grid.hpp"
#include "lsg/rational.hpp"

namespace lsg {

enum class ShiftMode { Forward, Symmetric };

/// Rational stencil expressing a fine-lattice shift f_{n+sign} through
/// samples of the envelope g on the coarse lattice(s).  Coefficients are
/// exact; terms beyond N^{-truncation_order+1} are dropped by construction.
struct ShiftExpansion {
  int base_order = 1;   // p
  int N = 2;
  int M1 = 1;
  int M2 = 1;
  int truncation_order = 2;
  // (offset in n1, offset in n2) -> coefficient; one-scale stencils use
  // n2 offset 0 throughout.
  std::map<std::pair<int, int>, Rational> coefficients;

  template <class T, class Sampler>
  T apply(Sampler&& sample) const {
    T acc{};
    for (const auto& [off, w] : coefficients)
      acc = acc + rational_cast<T>(w) * sample(off.first, off.second);
    return acc;
  }
};

/// Stencils of the one-scale expansions: forward p=1, forward p=2 and the
/// symmetric p=2 version.  `sign` selects f_{n+1} (+1) or f_{n-1} (-1);
/// negative shifts reuse the same formulas with a mirrored lattice.
inline ShiftExpansion one_scale_expansion(int N, int p, ShiftMode mode, int sign = +1) {
  if (N < 2) throw std::invalid_argument("one_scale_expansion: N must be >= 2");
  if (sign != 1 && sign != -1) throw std::invalid_argument("one_scale_expansion: sign must be +-1");
  ShiftExpansion e;
  e.base_order = p;
  e.N = N;
  const Rational n{N};
  auto& c = e.coefficients;
  if (mode == ShiftMode::Forward && p == 1) {
    e.truncation_order = 2;
    c[{0, 0}] = 1 - 1 / n;
    c[{sign, 0}] = 1 / n;
  } else if (mode == ShiftMode::Forward && p == 2) {
    e.truncation_order = 3;
    c[{0, 0}] = 1 - Rational(3) / (2 * n) + 1 / (2 * n * n);
    c[{sign, 0}] = 2 / n - 1 / (n * n);
    c[{2 * sign, 0}] = -1 / (2 * n) + 1 / (2 * n * n);
  } else if (mode == ShiftMode::Symmetric && p == 2) {
    e.truncation_order = 3;
    const Rational s{sign};
    c[{0, 0}] = 1 - 1 / (n * n);
    c[{1, 0}] = s / (2 * n) + 1 / (2 * n * n);
    c[{-1, 0}] = -s / (2 * n) + 1 / (2 * n * n);
  } else {
    throw std::invalid_argument(
        "one_scale_expansion: supported stencils are forward p in {1,2} and symmetric p=2");
  }
  return e;
}

/// Two-scale stencils: n2_order=2 gives the nine-point symmetric expansion
/// with O(N^-4) remainder, n2_order=1 the one-sided-in-n2 variant with
/// O(N^-3) remainder.  M1, M2 are the slow-variable scale ratios.
inline ShiftExpansion two_scale_expansion(int N, int M1, int M2, int n2_order, int sign = +1) {
  if (N < 2) throw std::invalid_argument("two_scale_expansion: N must be >= 2");
  if (sign != 1 && sign != -1) throw std::invalid_argument("two_scale_expansion: sign must be +-1");
  if (n2_order != 1 && n2_order != 2)
    throw std::invalid_argument("two_scale_expansion: n2_order must be 1 or 2");
  ShiftExpansion e;
  e.base_order = 2;
  e.N = N;
  e.M1 = M1;
  e.M2 = M2;
  const Rational n{N}, m1{M1}, m2{M2}, s{sign};
  auto& c = e.coefficients;
  auto add = [&](int d1, int d2, const Rational& w) { c[{d1, d2}] += w; };
  add(0, 0, 1);
  add(1, 0, s * m1 / (2 * n));
  add(-1, 0, -s * m1 / (2 * n));
  add(1, 0, m1 * m1 / (2 * n * n));
  add(0, 0, -m1 * m1 / (n * n));
  add(-1, 0, m1 * m1 / (2 * n * n));
  if (n2_order == 2) {
    e.truncation_order = 4;
    add(0, 1, s * m2 / (2 * n * n));
    add(0, -1, -s * m2 / (2 * n * n));
    const Rational w = m1 * m2 / (4 * n * n * n);
    add(1, 1, w);
    add(-1, 1, -w);
    add(1, -1, -w);
    add(-1, -1, w);
  } else {
    e.truncation_order = 3;
    add(0, sign, m2 / (n * n));
    add(0, 0, -m2 / (n * n));
  }
  return e;
}

/// f_{n+sign} from coarse samples of g around the base point.  Exact for
/// polynomial data of degree <= p in the symmetric p=2 case.
template <class T>
T shift_one_scale(const Grid1D<T>& g, long base, int N, int p, ShiftMode mode, int sign = +1) {
  const ShiftExpansion e = one_scale_expansion(N, p, mode, sign);
  return e.apply<T>([&](int d1, int) { return g.at(base + d1); });
}

/// f_{n+sign} for a function of two slow scales; `sample(i, j)` must return
/// g at coarse offsets (n1 + i, n2 + j), i, j in {-1, 0, 1}.
template <class T, class Sampler>
T shift_two_scale(Sampler&& sample, int N, int M1, int M2, int n2_order, int sign = +1,
                  bool require_integer_lattices = false) {
  if (require_integer_lattices) {
    if (M1 == 0 || N % std::abs(M1) != 0)
      throw std::invalid_argument("shift_two_scale: M1 must divide N for integer slow lattices");
    if (M2 == 0 || (static_cast<long>(N) * N) % std::abs(M2) != 0)
      throw std::invalid_argument("shift_two_scale: M2 must divide N^2 for integer slow lattices");
  }
  const ShiftExpansion e = two_scale_expansion(N, M1, M2, n2_order, sign);
  return e.template apply<T>(sample);
}

}  // namespace lsg
