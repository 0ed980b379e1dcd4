#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wicg/numtheory.hpp"

namespace wicg {

enum class GraphMode { Graph, Digraph };

/// First row (c_0, ..., c_{n-1}) of a circulant adjacency matrix.
class RowVector {
 public:
  RowVector(std::vector<std::int64_t> c, GraphMode mode = GraphMode::Graph) : c_(std::move(c)), mode_(mode) {
    if (c_.size() < 2) throw std::invalid_argument("RowVector: order must be at least 2");
    if (mode_ == GraphMode::Graph) {
      if (c_[0] != 0) throw std::invalid_argument("RowVector: graph mode requires c_0 = 0 (no loops)");
      const auto n = c_.size();
      for (std::size_t i = 1; i < n; ++i) {
        if (c_[i] != c_[n - i]) {
          throw std::invalid_argument("RowVector: graph mode requires c_i = c_{n-i}; c_" + std::to_string(i) +
                                      " = " + std::to_string(c_[i]) + " but c_" + std::to_string(n - i) +
                                      " = " + std::to_string(c_[n - i]));
        }
      }
    }
  }

  std::int64_t n() const { return static_cast<std::int64_t>(c_.size()); }
  GraphMode mode() const { return mode_; }
  const std::vector<std::int64_t>& entries() const { return c_; }
  std::int64_t operator[](std::int64_t i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_symmetric() const {
    const auto n = c_.size();
    for (std::size_t i = 1; i < n; ++i) {
      if (c_[i] != c_[n - i]) return false;
    }
    return true;
  }

  std::int64_t entry_sum() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }

  friend bool operator==(const RowVector&, const RowVector&) = default;

 private:
  std::vector<std::int64_t> c_;
  GraphMode mode_;
};

/// Weighted integral circulant graph in canonical form: order n and one
/// integer weight per proper divisor d of n (missing divisors weigh 0).
class DivisorWeights {
 public:
  DivisorWeights() = default;

  explicit DivisorWeights(std::int64_t n, std::map<std::int64_t, std::int64_t> weights = {})
      : n_(n), weights_(std::move(weights)) {
    if (n_ < 2) throw std::invalid_argument("DivisorWeights: order must be at least 2");
    for (auto [d, c] : weights_) {
      if (d < 1 || d >= n_ || n_ % d != 0) {
        throw std::invalid_argument("DivisorWeights: key " + std::to_string(d) + " is not a proper divisor of " +
                                    std::to_string(n_));
      }
    }
  }

  std::int64_t n() const { return n_; }
  const std::map<std::int64_t, std::int64_t>& weights() const { return weights_; }

  std::int64_t weight(std::int64_t d) const {
    auto it = weights_.find(d);
    return it == weights_.end() ? 0 : it->second;
  }

  void set(std::int64_t d, std::int64_t c) {
    if (d < 1 || d >= n_ || n_ % d != 0) {
      throw std::invalid_argument("DivisorWeights: key " + std::to_string(d) + " is not a proper divisor of " +
                                  std::to_string(n_));
    }
    weights_[d] = c;
  }

  /// Divisors carrying a nonzero weight, ascending.
  std::vector<std::int64_t> support() const {
    std::vector<std::int64_t> out;
    for (auto [d, c] : weights_) {
      if (c != 0) out.push_back(d);
    }
    return out;
  }

  DivisorWeights pruned() const {
    std::map<std::int64_t, std::int64_t> w;
    for (auto [d, c] : weights_) {
      if (c != 0) w.emplace(d, c);
    }
    return DivisorWeights(n_, std::move(w));
  }

  /// All weights nonnegative (the physical coupling regime).
  bool is_physical() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const auto& kv) { return kv.second >= 0; });
  }

  DivisorWeights scaled(std::int64_t factor) const {
    std::map<std::int64_t, std::int64_t> w;
    for (auto [d, c] : weights_) w.emplace(d, c * factor);
    return DivisorWeights(n_, std::move(w));
  }

  // Zero entries are insignificant.
  friend bool operator==(const DivisorWeights& a, const DivisorWeights& b) {
    return a.n_ == b.n_ && a.pruned().weights_ == b.pruned().weights_;
  }

 private:
  std::int64_t n_ = 0;
  std::map<std::int64_t, std::int64_t> weights_;
};

/// Witness that a row is not constant on the gcd class G_n(divisor).
struct ClassViolation {
  std::int64_t divisor;
  std::int64_t index;
  std::int64_t other_index;

  friend bool operator==(const ClassViolation&, const ClassViolation&) = default;
};

struct ExactSpectrum {
  std::int64_t n = 0;
  std::vector<std::int64_t> values;  // lambda_0 .. lambda_{n-1}
};

struct NumericSpectrum {
  std::int64_t n = 0;
  std::vector<std::complex<double>> values;
};

inline RowVector expand(const DivisorWeights& w) {
  const auto n = w.n();
  std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 1; i < n; ++i) c[static_cast<std::size_t>(i)] = w.weight(std::gcd(i, n));
  return RowVector(std::move(c), GraphMode::Graph);
}

/// Inverse of expand: succeeds iff the row is constant on every gcd class,
/// which is exactly when the circulant has an integral spectrum.
inline std::variant<DivisorWeights, ClassViolation> collapse(const RowVector& row) {
  if (row[0] != 0) throw std::invalid_argument("collapse: c_0 must be 0");
  const auto n = row.n();
  std::map<std::int64_t, std::int64_t> weights;
  std::map<std::int64_t, std::int64_t> first_index;
  for (std::int64_t i = 1; i < n; ++i) {
    const auto d = std::gcd(i, n);
    auto [it, fresh] = first_index.emplace(d, i);
    if (fresh) {
      weights[d] = row[i];
    } else if (row[i] != weights[d]) {
      return ClassViolation{d, it->second, i};
    }
  }
  return DivisorWeights(n, std::move(weights));
}

inline constexpr std::int64_t kSpectrumBound = std::int64_t{1} << 62;

/// Upper bound on max_j |lambda_j|: sum_d |c_d| phi(n/d). Saturates at 2^62.
inline std::int64_t spectral_radius_bound(const DivisorWeights& w) {
  __int128 total = 0;
  for (auto [d, c] : w.weights()) {
    if (c == 0) continue;
    const __int128 mag = c < 0 ? -static_cast<__int128>(c) : static_cast<__int128>(c);
    total += mag * euler_phi(w.n() / d);
    if (total >= kSpectrumBound) return kSpectrumBound;
  }
  return static_cast<std::int64_t>(total);
}

/// lambda_j = sum_d c_d c(j, n/d), exact.
inline ExactSpectrum spectrum_exact(const DivisorWeights& w) {
  if (spectral_radius_bound(w) >= kSpectrumBound) {
    throw std::overflow_error("spectrum_exact: sum |c_d| phi(n/d) reaches 2^62");
  }
  const auto n = w.n();
  ExactSpectrum s{n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  for (auto [d, c] : w.weights()) {
    if (c == 0) continue;
    const auto m = n / d;
    // c(j, m) only depends on gcd(j, m); cache per gcd
    std::map<std::int64_t, std::int64_t> by_gcd;
    for (std::int64_t j = 0; j < n; ++j) {
      const auto g = std::gcd(j, m);
      auto it = by_gcd.find(g);
      if (it == by_gcd.end()) it = by_gcd.emplace(g, ramanujan(g, m)).first;
      s.values[static_cast<std::size_t>(j)] += c * it->second;
    }
  }
  return s;
}

/// lambda_j = sum_i c_i w^{ji}, w = exp(2 pi i / n), by direct summation.
inline NumericSpectrum spectrum_numeric(const RowVector& row) {
  const auto n = row.n();
  NumericSpectrum s{n, std::vector<std::complex<double>>(static_cast<std::size_t>(n))};
  for (std::int64_t j = 0; j < n; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t i = 0; i < n; ++i) {
      if (row[i] == 0) continue;
      const auto k = static_cast<double>((static_cast<__int128>(i) * j) % n);
      acc += static_cast<double>(row[i]) * std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(n));
    }
    s.values[static_cast<std::size_t>(j)] = acc;
  }
  return s;
}

/// gcd(n, d_1, ..., d_t) over the nonzero-weight divisors; connected iff 1.
inline std::int64_t support_gcd(const DivisorWeights& w) {
  std::int64_t g = w.n();
  for (auto d : w.support()) g = std::gcd(g, d);
  return g;
}

inline bool is_connected(const DivisorWeights& w) {
  if (w.support().empty()) return false;
  return support_gcd(w) == 1;
}

inline bool integrality_numeric(const RowVector& row, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("integrality_numeric: tol must be positive");
  for (const auto& v : spectrum_numeric(row).values) {
    if (std::abs(v.imag()) > tol) return false;
    if (std::abs(v.real() - std::round(v.real())) > tol) return false;
  }
  return true;
}

}  // namespace wicg
