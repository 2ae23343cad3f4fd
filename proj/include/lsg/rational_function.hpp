#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "lsg/rational.hpp"

namespace lsg {

/// Polynomial in one indeterminate with exact rational coefficients,
/// stored in ascending powers.  The zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  poly_trim(r);
  return r;
}

inline Poly poly_neg(Poly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

inline Poly poly_scale(Poly a, const Rational& s) {
  for (auto& c : a) c *= s;
  poly_trim(a);
  return a;
}

inline Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Euclidean division a = q * b + r with deg r < deg b.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  if (b.empty()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  Poly q;
  if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  poly_trim(q);
  return {std::move(q), std::move(a)};
}

/// Monic gcd, used only to keep fraction sizes in check.
inline Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

/// Element of the fraction field Q(N): a ratio of polynomials in the
/// lattice scale N, kept in lowest terms with a monic denominator.
struct RatFunc {
  Poly num;
  Poly den{Rational(1)};

  RatFunc() = default;
  RatFunc(const Rational& c) {
    if (c != 0) num = {c};
  }
  RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  static RatFunc variable() { return RatFunc(Poly{Rational(0), Rational(1)}, Poly{Rational(1)}); }

  bool is_zero() const { return num.empty(); }

  void normalize() {
    poly_trim(num);
    poly_trim(den);
    if (den.empty()) throw std::invalid_argument("RatFunc: zero denominator");
    if (num.empty()) {
      den = {Rational(1)};
      return;
    }
    Poly g = poly_gcd(num, den);
    if (poly_degree(g) > 0) {
      num = poly_divmod(num, g).first;
      den = poly_divmod(den, g).first;
    }
    const Rational lead = den.back();
    for (auto& c : num) c /= lead;
    for (auto& c : den) c /= lead;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                   poly_mul(a.den, b.den));
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_sub(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                   poly_mul(a.den, b.den));
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::invalid_argument("RatFunc: division by zero");
    return RatFunc(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }

  Rational eval(const Rational& x) const { return poly_eval(num, x) / poly_eval(den, x); }
};

/// Laurent expansion of f(N) around N = infinity: the returned map sends
/// j to the coefficient of N^{-j}, for all j up to max_inverse_order with
/// nonvanishing leading part (j may be negative when f grows with N).
inline std::map<int, Rational> laurent_series(const RatFunc& f, int max_inverse_order) {
  std::map<int, Rational> out;
  if (f.is_zero()) return out;
  const int dn = poly_degree(f.num);
  const int dd = poly_degree(f.den);
  // substitute N = 1/x: reversed coefficient arrays are Taylor series at x=0
  Poly rnum(f.num.rbegin(), f.num.rend());
  Poly rden(f.den.rbegin(), f.den.rend());
  const int lead = dd - dn;  // lowest inverse power present
  const int terms = max_inverse_order - lead + 1;
  if (terms <= 0) return out;
  // long division of power series rnum / rden
  std::vector<Rational> q(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    Rational acc = (static_cast<std::size_t>(k) < rnum.size()) ? rnum[k] : Rational(0);
    for (int j = 1; j <= k; ++j)
      if (static_cast<std::size_t>(j) < rden.size()) acc -= rden[j] * q[k - j];
    q[k] = acc / rden[0];
  }
  for (int k = 0; k < terms; ++k)
    if (q[k] != 0) out[lead + k] = q[k];
  return out;
}

}  // namespace lsg
