#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wicg {

// Elementary number theory on signed 64-bit integers. Factorization is by
// trial division, which is plenty for the orders a census touches.

inline constexpr std::int64_t kMaxFactorInput = std::int64_t{1} << 62;

struct Factorization {
  std::int64_t n = 1;
  std::vector<std::pair<std::int64_t, int>> factors;  // (prime, exponent), primes ascending

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Proper divisors of n (d | n, d < n), ascending.
struct DivisorSet {
  std::int64_t n = 0;
  std::vector<std::int64_t> divisors;

  bool contains(std::int64_t d) const {
    for (auto x : divisors) {
      if (x == d) return true;
    }
    return false;
  }

  friend bool operator==(const DivisorSet&, const DivisorSet&) = default;
};

inline Factorization factorize(std::int64_t n) {
  if (n < 1 || n > kMaxFactorInput) {
    throw std::out_of_range("factorize: n must be in [1, 2^62], got " + std::to_string(n));
  }
  Factorization f;
  f.n = n;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p <= rest / p; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (rest > 1) f.factors.emplace_back(rest, 1);
  return f;
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p > kMaxFactorInput) throw std::out_of_range("is_prime: input exceeds 2^62");
  auto f = factorize(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

inline std::int64_t euler_phi(std::int64_t n) {
  auto f = factorize(n);
  std::int64_t result = n;
  for (auto [p, e] : f.factors) result = result / p * (p - 1);
  return result;
}

inline int mobius(std::int64_t n) {
  auto f = factorize(n);
  int sign = 1;
  for (auto [p, e] : f.factors) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

/// Largest a with p^a dividing |n|. Zero has no valuation and is rejected.
inline int valuation(std::int64_t p, std::int64_t n) {
  if (!is_prime(p)) throw std::invalid_argument("valuation: p must be prime, got " + std::to_string(p));
  if (n == 0) throw std::domain_error("valuation: undefined for zero");
  int a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  return a;
}

/// Two-adic valuation of a nonzero integer; avoids the primality check on the hot path.
inline int valuation2(std::int64_t n) {
  if (n == 0) throw std::domain_error("valuation2: undefined for zero");
  int a = 0;
  while ((n & 1) == 0) {
    n /= 2;
    ++a;
  }
  return a;
}

inline DivisorSet proper_divisors(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("proper_divisors: n must be >= 2, got " + std::to_string(n));
  std::vector<std::int64_t> low, high;
  for (std::int64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  DivisorSet out{n, std::move(low)};
  for (auto it = high.rbegin(); it != high.rend(); ++it) out.divisors.push_back(*it);
  out.divisors.pop_back();  // drop n itself
  return out;
}

/// tau(n), counting n itself.
inline std::int64_t divisor_count(std::int64_t n) {
  std::int64_t t = 1;
  for (auto [p, e] : factorize(n).factors) t *= e + 1;
  return t;
}

/// G_n(d) = {k in [1, n-1] : gcd(k, n) = d}.
inline std::vector<std::int64_t> gcd_class(std::int64_t n, std::int64_t d) {
  if (n < 2 || d < 1 || d >= n || n % d != 0) {
    throw std::invalid_argument("gcd_class: d=" + std::to_string(d) + " is not a proper divisor of n=" +
                                std::to_string(n));
  }
  std::vector<std::int64_t> out;
  for (std::int64_t k = d; k < n; k += d) {
    if (std::gcd(k, n) == d) out.push_back(k);
  }
  return out;
}

inline std::int64_t floor_mod(std::int64_t j, std::int64_t n) {
  auto r = j % n;
  return r < 0 ? r + n : r;
}

/// Ramanujan sum c(j, n) = mu(t) phi(n) / phi(t), t = n / gcd(n, j).
/// c(., n) has period n, so j is reduced first.
inline std::int64_t ramanujan(std::int64_t j, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("ramanujan: n must be positive");
  j = floor_mod(j, n);
  const std::int64_t t = n / std::gcd(n, j);
  const int m = mobius(t);
  if (m == 0) return 0;
  return m * (euler_phi(n) / euler_phi(t));
}

inline constexpr double kRamanujanOracleTolerance = 1e-8;

/// c(j, n) evaluated as the literal sum of j-th powers of the primitive
/// n-th roots of unity. Independent of the closed form above; used to check it.
inline std::int64_t ramanujan_oracle(std::int64_t j, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("ramanujan_oracle: n must be positive");
  j = floor_mod(j, n);
  double re = 0.0, im = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (std::gcd(i, n) != 1) continue;
    // reduce i*j mod n before scaling so the angle stays in [0, 2pi)
    const auto k = static_cast<double>(static_cast<std::int64_t>((static_cast<__int128>(i) * j) % n));
    const double angle = 2.0 * std::numbers::pi * k / static_cast<double>(n);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  const double rounded = std::round(re);
  if (std::abs(im) > kRamanujanOracleTolerance || std::abs(re - rounded) > kRamanujanOracleTolerance) {
    throw std::runtime_error("ramanujan_oracle: character sum not integral for j=" + std::to_string(j) +
                             ", n=" + std::to_string(n));
  }
  return static_cast<std::int64_t>(rounded);
}

/// Parity of c(j, n) from the prime-power structure of n alone: odd iff 4 does
/// not divide n and j = (prod p^(a-1)) * J with gcd(J, n) in {1, 2}.
inline bool ramanujan_is_odd(std::int64_t j, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("ramanujan_is_odd: n must be positive");
  if (n % 4 == 0) return false;
  j = floor_mod(j, n);
  std::int64_t core = 1;  // n / rad(n)
  for (auto [p, e] : factorize(n).factors) {
    for (int i = 1; i < e; ++i) core *= p;
  }
  if (j % core != 0) return false;
  const auto g = std::gcd(j / core, n);
  return g == 1 || g == 2;
}

}  // namespace wicg
