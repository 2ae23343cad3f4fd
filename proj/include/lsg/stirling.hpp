#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsg/rational.hpp"

namespace lsg {

/// Exact tables of Stirling numbers.
///
/// First kind (signed) S_i^a with S_{i+1}^a = S_i^{a-1} - i * S_i^a,
/// second kind  G_a^k with G_{a+1}^k = k * G_a^k + G_a^{k-1}.
/// Entries outside the triangle (a > i, resp. k > a) are zero.
class StirlingCache {
 public:
  const BigInt& first(std::size_t i, std::size_t a) {
    ensure_first(i);
    if (a > i) return zero_;
    return first_[i][a];
  }

  const BigInt& second(std::size_t a, std::size_t k) {
    ensure_second(a);
    if (k > a) return zero_;
    return second_[a][k];
  }

 private:
  void ensure_first(std::size_t i) {
    if (first_.empty()) first_.push_back({BigInt(1)});
    while (first_.size() <= i) {
      const std::size_t n = first_.size();  // building row n from row n-1
      const auto& prev = first_[n - 1];
      std::vector<BigInt> row(n + 1);
      for (std::size_t a = 0; a <= n; ++a) {
        BigInt v = (a > 0 && a - 1 < prev.size()) ? prev[a - 1] : BigInt(0);
        if (a < prev.size()) v -= BigInt(n - 1) * prev[a];
        row[a] = std::move(v);
      }
      first_.push_back(std::move(row));
    }
  }

  void ensure_second(std::size_t a) {
    if (second_.empty()) second_.push_back({BigInt(1)});
    while (second_.size() <= a) {
      const std::size_t n = second_.size();
      const auto& prev = second_[n - 1];
      std::vector<BigInt> row(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        BigInt v = (k < prev.size()) ? BigInt(k) * prev[k] : BigInt(0);
        if (k > 0 && k - 1 < prev.size()) v += prev[k - 1];
        row[k] = std::move(v);
      }
      second_.push_back(std::move(row));
    }
  }

  std::vector<std::vector<BigInt>> first_;
  std::vector<std::vector<BigInt>> second_;
  BigInt zero_{0};
};

inline StirlingCache& stirling_cache() {
  thread_local StirlingCache cache;
  return cache;
}

inline BigInt stirling_first(std::size_t i, std::size_t a) {
  return stirling_cache().first(i, a);
}

inline BigInt stirling_second(std::size_t a, std::size_t k) {
  return stirling_cache().second(a, k);
}

/// P(i,k) = sum_{a=k}^{i} omega^a S_i^a G_a^k, exact in the scalar type of
/// omega.  With omega = N this is P(i,k); with omega = 1/N it is Q(i,k).
template <class F>
F coeff_P(std::size_t i, std::size_t k, const F& omega) {
  if (i < k) throw std::invalid_argument("coeff_P: requires i >= k");
  F acc{};
  F pw = F(1);
  for (std::size_t a = 0; a < k; ++a) pw = pw * omega;
  for (std::size_t a = k; a <= i; ++a) {
    const BigInt s1 = stirling_first(i, a);
    const BigInt s2 = stirling_second(a, k);
    F term = pw;
    term = term * F(Rational(s1 * s2));
    acc = acc + term;
    pw = pw * omega;
  }
  return acc;
}

inline Rational coeff_P(std::size_t i, std::size_t k, const Rational& omega) {
  return coeff_P<Rational>(i, k, omega);
}

}  // namespace lsg
