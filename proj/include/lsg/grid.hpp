#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lsg/rational.hpp"

namespace lsg {

/// A lattice function sampled on a finite index window [n0, n0 + size).
template <class T>
struct Grid1D {
  long n0 = 0;
  std::vector<T> values;

  long lo() const { return n0; }
  long hi() const { return n0 + static_cast<long>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }

  const T& at(long n) const {
    if (n < lo() || n > hi()) throw std::out_of_range("Grid1D: index outside window");
    return values[static_cast<std::size_t>(n - n0)];
  }
  T& at(long n) { return const_cast<T&>(static_cast<const Grid1D&>(*this).at(n)); }
};

template <class T>
Grid1D<T> sample_grid(long n0, std::size_t count, auto&& fn) {
  Grid1D<T> g;
  g.n0 = n0;
  g.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) g.values.push_back(fn(n0 + static_cast<long>(i)));
  return g;
}

namespace detail {
inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const Rational& v) { return std::abs(to_double(v)); }
inline bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
inline bool is_zero(const Rational& v, double) { return v == 0; }
}  // namespace detail

/// k-th forward difference: (Delta^k f)_n = sum_i (-1)^{k-i} C(k,i) f_{n+i}.
/// The window shrinks by k points.
template <class T>
Grid1D<T> forward_difference(const Grid1D<T>& f, int k) {
  if (k < 0) throw std::invalid_argument("forward_difference: negative order");
  if (f.size() < static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("forward_difference: window too small for requested order");
  Grid1D<T> out = f;
  for (int step = 0; step < k; ++step) {
    Grid1D<T> next;
    next.n0 = out.n0;
    next.values.resize(out.size() - 1);
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      next.values[i] = out.values[i + 1] - out.values[i];
    out = std::move(next);
  }
  return out;
}

/// Smallest p such that Delta^{p+1} f vanishes on the window (exactly for
/// rational data, relative to tolerance * max|f| for floating data).
/// Returns nullopt when the window is exhausted first.
template <class T>
std::optional<int> slow_order(const Grid1D<T>& f, double tolerance = 1e-10) {
  double scale = 0.0;
  for (const auto& v : f.values) scale = std::max(scale, detail::abs_value(v));
  const double tol = tolerance * scale;
  Grid1D<T> d = f;
  for (int p = 0;; ++p) {
    if (d.size() < 2) return std::nullopt;  // order exceeds window
    Grid1D<T> next = forward_difference(d, 1);
    bool zero = true;
    for (const auto& v : next.values)
      if (!detail::is_zero(v, tol)) { zero = false; break; }
    if (zero) return p;
    d = std::move(next);
  }
}

}  // namespace lsg
