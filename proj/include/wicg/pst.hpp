#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wicg/circulant.hpp"
#include "wicg/numtheory.hpp"

namespace wicg {

// Perfect state transfer in weighted integral circulant graphs.
//
// With the exact integer spectrum lambda_0..lambda_{n-1}, PST exists iff every
// adjacent gap lambda_{j+1} - lambda_j is nonzero with one common 2-adic
// valuation m. It then happens between b and b + n/2 at t = 2 pi / 2^{m+1}.

inline constexpr double kFidelityCertificationTolerance = 1e-9;

enum class PstReason { Ok, Disconnected, OddOrder, EqualAdjacentEigenvalues, ValuationMismatch };

inline std::string_view to_string(PstReason r) {
  switch (r) {
    case PstReason::Ok: return "Ok";
    case PstReason::Disconnected: return "Disconnected";
    case PstReason::OddOrder: return "OddOrder";
    case PstReason::EqualAdjacentEigenvalues: return "EqualAdjacentEigenvalues";
    case PstReason::ValuationMismatch: return "ValuationMismatch";
  }
  return "?";
}

inline PstReason pst_reason_from_string(std::string_view s) {
  for (auto r : {PstReason::Ok, PstReason::Disconnected, PstReason::OddOrder, PstReason::EqualAdjacentEigenvalues,
                 PstReason::ValuationMismatch}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown PST reason code: " + std::string(s));
}

struct PstCertificate {
  int m = 0;             // common 2-adic valuation of the eigenvalue gaps
  double time = 0.0;     // 2 pi / 2^{m+1}
  std::int64_t source = 0;
  std::int64_t target = 0;
  double fidelity = 0.0;

  /// t / (2 pi) = 1 / time_denominator().
  std::int64_t time_denominator() const { return std::int64_t{1} << (m + 1); }

  friend bool operator==(const PstCertificate&, const PstCertificate&) = default;
};

struct PstVerdict {
  bool exists = false;
  PstReason reason = PstReason::Disconnected;
  std::optional<PstCertificate> certificate;

  friend bool operator==(const PstVerdict&, const PstVerdict&) = default;
};

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
};

enum class Periodicity { Periodic, NotPeriodic, IndeterminateZeroSum };

inline std::string_view to_string(Periodicity p) {
  switch (p) {
    case Periodicity::Periodic: return "Periodic";
    case Periodicity::NotPeriodic: return "NotPeriodic";
    case Periodicity::IndeterminateZeroSum: return "IndeterminateZeroSum";
  }
  return "?";
}

struct PeriodicityResult {
  Periodicity verdict;
  // Only attached for zero-sum rows, where class-constancy no longer decides.
  std::optional<bool> numerically_integral;
};

inline constexpr double kPeriodicityNumericTolerance = 1e-6;

/// For a loopless integer row with nonzero entry sum, the walk is periodic iff
/// the graph is integral iff the row is constant on gcd classes.
inline PeriodicityResult periodicity_verdict(const RowVector& row) {
  if (row[0] != 0) throw std::invalid_argument("periodicity_verdict: loops (c_0 != 0) are not allowed");
  if (row.entry_sum() == 0) {
    return {Periodicity::IndeterminateZeroSum, integrality_numeric(row, kPeriodicityNumericTolerance)};
  }
  const bool integral = std::holds_alternative<DivisorWeights>(collapse(row));
  return {integral ? Periodicity::Periodic : Periodicity::NotPeriodic, std::nullopt};
}

// |<a| exp(iAt) |b>| = |1/n sum_l exp(i lambda_l t) w^{l(a-b)}|.
inline double fidelity(const ExactSpectrum& s, std::int64_t a, std::int64_t b, double t) {
  const auto n = s.n;
  if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("fidelity: vertex out of range");
  const auto shift = floor_mod(a - b, n);
  std::complex<long double> acc{0.0L, 0.0L};
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::int64_t l = 0; l < n; ++l) {
    const long double walk = std::fmod(static_cast<long double>(s.values[static_cast<std::size_t>(l)]) * t, two_pi);
    const auto k = static_cast<long double>((static_cast<__int128>(l) * shift) % n);
    acc += std::polar(1.0L, walk + two_pi * k / static_cast<long double>(n));
  }
  const double f = static_cast<double>(std::abs(acc) / static_cast<long double>(n));
  return std::clamp(f, 0.0, 1.0);
}

inline double fidelity(const DivisorWeights& w, std::int64_t a, std::int64_t b, double t) {
  return fidelity(spectrum_exact(w), a, b, t);
}

/// Fidelity at the dyadic time t = 2 pi p / 2^s. The phase lambda*p mod 2^s is
/// reduced in exact integer arithmetic, so large eigenvalues lose no precision.
inline double fidelity_dyadic(const ExactSpectrum& s, std::int64_t a, std::int64_t b, std::int64_t p, int shift) {
  const auto n = s.n;
  if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("fidelity_dyadic: vertex out of range");
  if (shift < 0 || shift > 62) throw std::out_of_range("fidelity_dyadic: exponent must be in [0, 62]");
  const __int128 period = static_cast<__int128>(1) << shift;
  const __int128 denom = period * n;
  const auto offset = floor_mod(a - b, n);
  std::complex<long double> acc{0.0L, 0.0L};
  for (std::int64_t l = 0; l < n; ++l) {
    // phase / 2pi = lambda p / 2^s + l (a-b) / n = (lambda p n + l (a-b) 2^s) / (n 2^s)
    __int128 num = static_cast<__int128>(s.values[static_cast<std::size_t>(l)]) % period * p % period * n +
                   static_cast<__int128>(l * offset % n) * period;
    num %= denom;
    if (num < 0) num += denom;
    const long double frac = static_cast<long double>(num) / static_cast<long double>(denom);
    acc += std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * frac);
  }
  const double f = static_cast<double>(std::abs(acc) / static_cast<long double>(n));
  return std::clamp(f, 0.0, 1.0);
}

inline FidelityTrace fidelity_trace(const DivisorWeights& w, std::int64_t a, std::int64_t b, double t_max,
                                    std::int64_t steps) {
  if (steps < 2) throw std::invalid_argument("fidelity_trace: steps must be at least 2");
  if (!(t_max > 0)) throw std::invalid_argument("fidelity_trace: t_max must be positive");
  const auto spectrum = spectrum_exact(w);
  FidelityTrace trace;
  trace.times.reserve(static_cast<std::size_t>(steps));
  trace.values.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    trace.times.push_back(t);
    trace.values.push_back(fidelity(spectrum, a, b, t));
  }
  return trace;
}

/// True when vertex n/2 lies in the connected component of vertex 0.
inline bool antipode_reachable(const DivisorWeights& w) {
  if (w.n() % 2 != 0 || w.support().empty()) return false;
  return (w.n() / 2) % support_gcd(w) == 0;
}

inline PstVerdict pst_verdict_from_spectrum(const DivisorWeights& w, const ExactSpectrum& s) {
  const auto n = w.n();
  // A disconnected graph can still carry PST inside the component of 0
  // (e.g. disjoint copies of K_2), so only an unreachable antipode rules it out.
  if (!is_connected(w) && !antipode_reachable(w)) return {false, PstReason::Disconnected, std::nullopt};
  if (n % 2 != 0) return {false, PstReason::OddOrder, std::nullopt};
  const auto support = w.support();
  if (std::all_of(support.begin(), support.end(), [n](std::int64_t d) { return (n / d) % 2 != 0; })) {
    return {false, PstReason::OddOrder, std::nullopt};
  }
  std::set<int> valuations;
  for (std::size_t j = 0; j + 1 < s.values.size(); ++j) {
    const auto gap = s.values[j + 1] - s.values[j];
    if (gap == 0) return {false, PstReason::EqualAdjacentEigenvalues, std::nullopt};
    valuations.insert(valuation2(gap));
  }
  if (valuations.size() != 1) return {false, PstReason::ValuationMismatch, std::nullopt};

  PstCertificate cert;
  cert.m = *valuations.begin();
  cert.time = 2.0 * std::numbers::pi / std::ldexp(1.0, cert.m + 1);
  cert.source = 0;
  cert.target = n / 2;
  cert.fidelity = fidelity_dyadic(s, cert.source, cert.target, 1, cert.m + 1);
  return {true, PstReason::Ok, cert};
}

inline PstVerdict pst_verdict(const DivisorWeights& w) { return pst_verdict_from_spectrum(w, spectrum_exact(w)); }

/// p/q (lambda_{j+1} - lambda_j) + a/n in Z for every j, in exact arithmetic.
inline bool pq_condition(const DivisorWeights& w, std::int64_t a, std::int64_t p, std::int64_t q) {
  const auto n = w.n();
  if (q <= 0) throw std::invalid_argument("pq_condition: q must be positive");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("pq_condition: p and q must be coprime");
  if (a < 1 || a > n - 1) throw std::invalid_argument("pq_condition: vertex a must be in [1, n-1]");
  const auto s = spectrum_exact(w);
  const __int128 modulus = static_cast<__int128>(q) * n;
  for (std::size_t j = 0; j + 1 < s.values.size(); ++j) {
    const __int128 gap = s.values[j + 1] - s.values[j];
    // p gap / q + a / n = (p gap n + a q) / (q n)
    if ((static_cast<__int128>(p) * gap * n + static_cast<__int128>(a) * q) % modulus != 0) return false;
  }
  return true;
}

struct NormalizedWeights {
  DivisorWeights weights;
  int shift = 0;  // original = 2^shift * weights
};

/// Divide out the largest power of two common to all weights.
inline NormalizedWeights normalize_weights(const DivisorWeights& w) {
  const auto support = w.support();
  if (support.empty()) throw std::invalid_argument("normalize_weights: all weights are zero");
  int k = 64;
  for (auto d : support) k = std::min(k, valuation2(w.weight(d)));
  std::map<std::int64_t, std::int64_t> out;
  for (auto [d, c] : w.weights()) out.emplace(d, c / (std::int64_t{1} << k));
  return {DivisorWeights(w.n(), std::move(out)), k};
}

}  // namespace wicg
