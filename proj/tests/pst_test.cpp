#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wicg/census.hpp"
#include "wicg/pst.hpp"

namespace wicg {
namespace {

using Row = std::vector<std::int64_t>;
constexpr double kPi = std::numbers::pi;

const DivisorWeights kK2(2, {{1, 1}});
const DivisorWeights kC4(4, {{1, 1}});

TEST(Periodicity, Examples) {
  EXPECT_EQ(periodicity_verdict(RowVector(Row{0, 1, 1})).verdict, Periodicity::Periodic);
  EXPECT_EQ(periodicity_verdict(RowVector(Row{0, 1, 2}, GraphMode::Digraph)).verdict, Periodicity::NotPeriodic);
  const auto zero = periodicity_verdict(RowVector(Row{0, 1, -1}, GraphMode::Digraph));
  EXPECT_EQ(zero.verdict, Periodicity::IndeterminateZeroSum);
  ASSERT_TRUE(zero.numerically_integral.has_value());
  EXPECT_FALSE(*zero.numerically_integral);  // eigenvalues +-i sqrt(3)
  EXPECT_THROW(periodicity_verdict(RowVector(Row{1, 1, 1}, GraphMode::Digraph)), std::invalid_argument);
}

TEST(Periodicity, ZeroSumIntegralRowReportsNumericResult) {
  // row (0, 1, -2, 1) sums to zero but is class-constant
  const auto r = periodicity_verdict(expand(DivisorWeights(4, {{1, 1}, {2, -2}})));
  EXPECT_EQ(r.verdict, Periodicity::IndeterminateZeroSum);
  EXPECT_TRUE(r.numerically_integral.value());
}

TEST(PstVerdict, KnownInstances) {
  const auto k2 = pst_verdict(kK2);
  ASSERT_TRUE(k2.exists);
  EXPECT_EQ(k2.reason, PstReason::Ok);
  EXPECT_EQ(k2.certificate->m, 1);
  EXPECT_DOUBLE_EQ(k2.certificate->time, kPi / 2);
  EXPECT_EQ(k2.certificate->source, 0);
  EXPECT_EQ(k2.certificate->target, 1);
  EXPECT_NEAR(k2.certificate->fidelity, 1.0, 1e-12);

  const auto c4 = pst_verdict(kC4);
  ASSERT_TRUE(c4.exists);
  EXPECT_EQ(c4.certificate->m, 1);
  EXPECT_DOUBLE_EQ(c4.certificate->time, kPi / 2);
  EXPECT_EQ(c4.certificate->target, 2);

  const auto six = pst_verdict(DivisorWeights(6, {{1, 4}, {3, 1}}));
  ASSERT_TRUE(six.exists);
  EXPECT_EQ(six.certificate->m, 1);
  EXPECT_EQ(six.certificate->target, 3);
}

TEST(PstVerdict, NegativeReasons) {
  EXPECT_EQ(pst_verdict(DivisorWeights(9, {{1, 1}})).reason, PstReason::OddOrder);
  EXPECT_EQ(pst_verdict(DivisorWeights(12, {{1, 1}, {6, 1}})).reason, PstReason::EqualAdjacentEigenvalues);
  EXPECT_EQ(pst_verdict(DivisorWeights(6, {{2, 1}})).reason, PstReason::Disconnected);
  EXPECT_EQ(pst_verdict(DivisorWeights(6)).reason, PstReason::Disconnected);
  EXPECT_EQ(pst_verdict(DivisorWeights(9, {{3, 1}})).reason, PstReason::Disconnected);
  // n/d odd for the whole support on even n: the antipode is in another component
  EXPECT_EQ(pst_verdict(DivisorWeights(12, {{4, 1}, {1, 0}})).reason, PstReason::Disconnected);
}

TEST(PstVerdict, ValuationMismatch) {
  // K_2-like weights plus a class that breaks the common valuation
  bool seen = false;
  for (std::int64_t n = 6; n <= 40 && !seen; n += 2) {
    for (std::int64_t c = 1; c <= 4 && !seen; ++c) {
      const auto v = pst_verdict(DivisorWeights(n, {{1, c}, {n / 2, 1}}));
      seen = v.reason == PstReason::ValuationMismatch;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(PstVerdict, VerdictInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = std::uniform_int_distribution<std::int64_t>(2, 40)(rng);
    const auto w = oracle::random_weights(rng, n, -3, 3);
    const auto v = pst_verdict(w);
    EXPECT_EQ(v.exists, v.reason == PstReason::Ok);
    EXPECT_EQ(v.exists, v.certificate.has_value());
    if (v.exists) {
      EXPECT_GE(v.certificate->fidelity, 1.0 - kFidelityCertificationTolerance);
      EXPECT_EQ(v.certificate->target - v.certificate->source, n / 2);
    }
  }
}

// Disjoint copies of K_2 transfer perfectly between i and i + n/2.
TEST(PstVerdict, DisconnectedButReachableAntipode) {
  for (std::int64_t n = 4; n <= 40; n += 2) {
    const DivisorWeights matching(n, {{n / 2, 1}});
    EXPECT_FALSE(is_connected(matching));
    const auto v = pst_verdict(matching);
    ASSERT_TRUE(v.exists) << n;
    EXPECT_NEAR(oracle::dense_fidelity(matching, 0, n / 2, v.certificate->time), 1.0, 1e-9);
  }
}

TEST(PqCondition, Examples) {
  EXPECT_TRUE(pq_condition(kK2, 1, 1, 4));
  EXPECT_TRUE(pq_condition(kC4, 2, 1, 4));
  EXPECT_FALSE(pq_condition(kC4, 1, 1, 4));
  EXPECT_THROW(pq_condition(kC4, 2, 2, 4), std::invalid_argument);
  EXPECT_THROW(pq_condition(kC4, 0, 1, 4), std::invalid_argument);
  EXPECT_THROW(pq_condition(kC4, 2, 1, 0), std::invalid_argument);
}

TEST(PqCondition, HoldsAtCertificateTime) {
  for (std::int64_t n = 2; n <= 60; n += 2) {
    const auto w = construct_weighted(n, 1, proper_divisors(n), 4);
    const auto v = pst_verdict(w);
    ASSERT_TRUE(v.exists);
    EXPECT_TRUE(pq_condition(w, n / 2, 1, v.certificate->time_denominator()));
    if (n > 2) {
      EXPECT_FALSE(pq_condition(w, 1, 1, v.certificate->time_denominator()));
    }
  }
}

TEST(Fidelity, Examples) {
  EXPECT_NEAR(fidelity(kK2, 1, 0, kPi / 2), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(kC4, 1, 0, kPi / 2), 0.0, 1e-12);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto n = std::uniform_int_distribution<std::int64_t>(2, 30)(rng);
    const auto w = oracle::random_weights(rng, n, -5, 5);
    EXPECT_NEAR(fidelity(w, 1 % n, 1 % n, 0.0), 1.0, 1e-12);
  }
}

TEST(Fidelity, MatchesDenseMatrixExponential) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> time(0.0, 7.0);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = std::uniform_int_distribution<std::int64_t>(2, 24)(rng);
    const auto w = oracle::random_weights(rng, n, -4, 4);
    const auto a = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
    const auto b = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
    const double t = time(rng);
    EXPECT_NEAR(fidelity(w, a, b, t), oracle::dense_fidelity(w, a, b, t), 1e-9);
    EXPECT_NEAR(fidelity(w, a, b, t), fidelity(w, b, a, t), 1e-12);
  }
}

TEST(Fidelity, DyadicMatchesRealTime) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = std::uniform_int_distribution<std::int64_t>(2, 30)(rng);
    const auto s = spectrum_exact(oracle::random_weights(rng, n, -6, 6));
    for (int shift = 0; shift <= 5; ++shift) {
      for (std::int64_t p = 0; p < (std::int64_t{1} << shift); ++p) {
        const double t = 2.0 * kPi * static_cast<double>(p) / std::ldexp(1.0, shift);
        EXPECT_NEAR(fidelity_dyadic(s, 0, n / 2, p, shift), fidelity(s, 0, n / 2, t), 1e-10);
      }
    }
  }
}

TEST(Fidelity, LargeEigenvaluesStayExactAtDyadicTimes) {
  // weights near the overflow gate: the dyadic route must still certify
  const std::int64_t big = (std::int64_t{1} << 40) + 1;
  const DivisorWeights w(8, {{1, big * 4}, {2, 4}, {4, big}});
  const auto v = pst_verdict(w);
  ASSERT_TRUE(v.exists);
  EXPECT_NEAR(v.certificate->fidelity, 1.0, 1e-12);
}

TEST(Fidelity, ShiftInvariance) {
  for (std::int64_t n = 2; n <= 30; n += 2) {
    const auto w = construct_weighted(n, 1, proper_divisors(n), 4);
    const auto v = pst_verdict(w);
    ASSERT_TRUE(v.exists);
    const double base = fidelity(w, 0, n / 2, v.certificate->time);
    for (std::int64_t b = 0; b < n; ++b) {
      EXPECT_NEAR(fidelity(w, b, (b + n / 2) % n, v.certificate->time), base, 1e-12);
    }
  }
}

TEST(FidelityTrace, Examples) {
  const auto k2 = fidelity_trace(kK2, 1, 0, kPi, 3);
  ASSERT_EQ(k2.values.size(), 3u);
  EXPECT_NEAR(k2.values[0], 0.0, 1e-12);
  EXPECT_NEAR(k2.values[1], 1.0, 1e-12);
  EXPECT_NEAR(k2.values[2], 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(k2.times[1], kPi / 2);

  const auto c4 = fidelity_trace(kC4, 2, 0, kPi / 2, 2);
  EXPECT_NEAR(c4.values.back(), 1.0, 1e-12);

  const auto self = fidelity_trace(kK2, 0, 0, 1e-9, 2);
  EXPECT_NEAR(self.values.front(), 1.0, 1e-15);

  EXPECT_THROW(fidelity_trace(kK2, 0, 1, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(fidelity_trace(kK2, 0, 1, 0.0, 5), std::invalid_argument);
}

TEST(NormalizeWeights, Examples) {
  auto r = normalize_weights(DivisorWeights(6, {{1, 4}, {3, 2}}));
  EXPECT_EQ(r.weights, DivisorWeights(6, {{1, 2}, {3, 1}}));
  EXPECT_EQ(r.shift, 1);
  r = normalize_weights(DivisorWeights(4, {{1, 1}}));
  EXPECT_EQ(r.weights, DivisorWeights(4, {{1, 1}}));
  EXPECT_EQ(r.shift, 0);
  r = normalize_weights(DivisorWeights(4, {{1, 8}, {2, 12}}));
  EXPECT_EQ(r.weights, DivisorWeights(4, {{1, 2}, {2, 3}}));
  EXPECT_EQ(r.shift, 2);
  EXPECT_THROW(normalize_weights(DivisorWeights(4, {{1, 0}})), std::invalid_argument);
}

TEST(NormalizeWeights, ScalingShiftsValuation) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 2 * std::uniform_int_distribution<std::int64_t>(1, 20)(rng);
    const auto w = construct_weighted(n, 1, proper_divisors(n), 4 * std::uniform_int_distribution<std::int64_t>(1, 3)(rng));
    const auto base = pst_verdict(w);
    for (int k = 1; k <= 5; ++k) {
      const auto scaled = w.scaled(std::int64_t{1} << k);
      const auto v = pst_verdict(scaled);
      ASSERT_EQ(v.exists, base.exists);
      if (v.exists) {
        EXPECT_EQ(v.certificate->m, base.certificate->m + k);
      }
      const auto norm = normalize_weights(scaled);
      EXPECT_EQ(norm.shift, k);
      EXPECT_EQ(norm.weights, w);
    }
  }
}

TEST(PstVerdict, OddOrderNeverTransfers) {
  std::mt19937_64 rng(31);
  for (std::int64_t n = 3; n <= 99; n += 2) {
    for (int i = 0; i < 10; ++i) EXPECT_FALSE(pst_verdict(oracle::random_weights(rng, n, -8, 8)).exists);
  }
}

}  // namespace
}  // namespace wicg
