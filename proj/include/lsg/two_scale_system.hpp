#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>

#include "lsg/rational.hpp"
#include "lsg/rational_function.hpp"

namespace lsg {

template <class F>
using Mat8 = std::array<std::array<F, 8>, 8>;

/// Fine samples f_{n+i,n+j} - g entering the two-scale linear system, and
/// the coarse shifts g at (n1+e1, n2+e2) it determines; same ordering.
inline constexpr std::array<std::pair<int, int>, 8> two_scale_offsets{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

namespace detail {

inline int two_scale_index(int i, int j) {
  for (std::size_t k = 0; k < two_scale_offsets.size(); ++k)
    if (two_scale_offsets[k] == std::pair<int, int>{i, j}) return static_cast<int>(k);
  throw std::logic_error("two_scale_index: offset outside stencil");
}

inline bool field_is_zero(const Rational& v) { return v == 0; }
inline bool field_is_zero(const RatFunc& v) { return v.is_zero(); }

}  // namespace detail

/// Matrix of the 8 equations expressing the coarse shifts of g through the
/// fine neighbors of f (deviations from g).  Row r gives
/// g(coarse offset r) - g = sum_c A[r][c] * (f(fine offset c) - g).
/// Works over any exact field F containing the scale n (Rational for a
/// concrete N, RatFunc for N kept symbolic).
template <class F>
Mat8<F> two_scale_forward_matrix(const F& n) {
  Mat8<F> a{};
  const F one(Rational(1));
  const F half(Rational(1, 2));
  const F quarter(Rational(1, 4));
  const F n2 = n * n;
  const F n3 = n2 * n;
  auto row_add = [&](std::array<F, 8>& row, int i, int j, const F& w) {
    if (i == 0 && j == 0) return;  // deviations vanish at the center
    const int c = detail::two_scale_index(i, j);
    row[c] = row[c] + w;
  };
  for (std::size_t r = 0; r < two_scale_offsets.size(); ++r) {
    auto [e1, e2] = two_scale_offsets[r];
    auto& row = a[r];
    if (e2 == 0) {
      // pure n1 shift: N D1 + N(N-1)/2 S1, with S1 the symmetric second
      // difference (nearest neighbors suffice for slow order 2)
      row_add(row, e1, 0, n);
      const F w = half * n * (n - one);
      row_add(row, 1, 0, w);
      row_add(row, -1, 0, w);
    } else if (e1 == 0) {
      row_add(row, 0, e2, n2);
      const F w = half * n2 * (n2 - one);
      row_add(row, 0, 1, w);
      row_add(row, 0, -1, w);
    } else {
      // composed shift of both indices
      row_add(row, 0, e2, n2);
      const F w_s2 = half * n2 * (n2 - one);
      row_add(row, 0, 1, w_s2);
      row_add(row, 0, -1, w_s2);
      row_add(row, e1, 0, n);
      const F w_s1 = half * n * (n - one);
      row_add(row, 1, 0, w_s1);
      row_add(row, -1, 0, w_s1);
      // D1 D2
      row_add(row, e1, e2, n3);
      row_add(row, e1, 0, F{} - n3);
      row_add(row, 0, e2, F{} - n3);
      // D1 S2
      const F w_ds = half * n3 * (n2 - one);
      row_add(row, e1, 1, w_ds);
      row_add(row, e1, 0, F{} - (w_ds + w_ds));
      row_add(row, e1, -1, w_ds);
      row_add(row, 0, 1, F{} - w_ds);
      row_add(row, 0, -1, F{} - w_ds);
      // S1 D2
      const F w_sd = n3 * (n - one);
      row_add(row, 1, e2, w_sd);
      row_add(row, 0, e2, F{} - (w_sd + w_sd));
      row_add(row, -1, e2, w_sd);
      row_add(row, 1, 0, F{} - w_sd);
      row_add(row, -1, 0, F{} - w_sd);
      // S1 S2
      const F w_ss = quarter * n3 * (n2 - one) * (n - one);
      for (int i : {1, -1}) {
        row_add(row, i, 1, w_ss);
        row_add(row, i, 0, F{} - (w_ss + w_ss));
        row_add(row, i, -1, w_ss);
      }
      row_add(row, 0, 1, F{} - (w_ss + w_ss));
      row_add(row, 0, -1, F{} - (w_ss + w_ss));
    }
  }
  return a;
}

/// Gauss-Jordan over an exact field; throws on a singular matrix.
template <class F>
Mat8<F> invert_matrix(Mat8<F> a) {
  Mat8<F> inv{};
  const F one(Rational(1));
  for (int i = 0; i < 8; ++i) inv[i][i] = one;
  for (int col = 0; col < 8; ++col) {
    int pivot = -1;
    for (int r = col; r < 8; ++r)
      if (!detail::field_is_zero(a[r][col])) { pivot = r; break; }
    if (pivot < 0) throw std::runtime_error("invert_matrix: singular system");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const F d = a[col][col];
    for (int c = 0; c < 8; ++c) {
      a[col][c] = a[col][c] / d;
      inv[col][c] = inv[col][c] / d;
    }
    for (int r = 0; r < 8; ++r) {
      if (r == col || detail::field_is_zero(a[r][col])) continue;
      const F f = a[r][col];
      for (int c = 0; c < 8; ++c) {
        a[r][c] = a[r][c] - f * a[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

struct TwoScaleSystem {
  int N = 2;
  Mat8<Rational> forward;
  Mat8<Rational> inverse;
};

/// Exact forward table and its inverse for a concrete scale N.
inline TwoScaleSystem two_scale_system_oracle(int N) {
  if (N < 2) throw std::invalid_argument("two_scale_system_oracle: N must be >= 2");
  TwoScaleSystem s;
  s.N = N;
  s.forward = two_scale_forward_matrix<Rational>(Rational(N));
  s.inverse = invert_matrix(s.forward);
  return s;
}

/// Exact Laurent truncation of the inverse system: coefficients of the
/// coarse samples of g (offset (0,0) included) in f_{n+sign}, with all
/// terms beyond N^{-max_inverse_order} dropped before evaluating at N.
/// With the default order 3 this reproduces the closed nine-point stencil.
inline std::map<std::pair<int, int>, Rational> two_scale_inverse_truncated(
    int N, int sign = +1, int max_inverse_order = 3) {
  if (N < 2) throw std::invalid_argument("two_scale_inverse_truncated: N must be >= 2");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("two_scale_inverse_truncated: sign must be +-1");
  const RatFunc n = RatFunc::variable();
  const Mat8<RatFunc> inv = invert_matrix(two_scale_forward_matrix<RatFunc>(n));
  const int row = detail::two_scale_index(sign, sign);
  const Rational rn(N);
  auto truncated_eval = [&](const RatFunc& f) {
    Rational acc = 0;
    Rational pw = 1;
    int last = 0;
    for (const auto& [j, c] : laurent_series(f, max_inverse_order)) {
      if (j < 0) throw std::logic_error("two_scale_inverse_truncated: growing coefficient");
      for (; last < j; ++last) pw /= rn;
      acc += c * pw;
    }
    return acc;
  };
  std::map<std::pair<int, int>, Rational> out;
  RatFunc g_coeff(Rational(1));
  for (std::size_t c = 0; c < two_scale_offsets.size(); ++c) {
    g_coeff = g_coeff - inv[row][c];
    const Rational v = truncated_eval(inv[row][c]);
    if (v != 0) out[two_scale_offsets[c]] = v;
  }
  out[{0, 0}] = truncated_eval(g_coeff);
  return out;
}

}  // namespace lsg
