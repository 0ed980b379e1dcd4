#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wicg/circulant.hpp"
#include "wicg/numtheory.hpp"
#include "wicg/pst.hpp"

namespace wicg {

/// D split by the 2-adic valuation of n/d: classes[i] = {d in D : S_2(n/d) = i}.
struct DivisorPartition {
  std::int64_t n = 0;
  std::map<int, std::vector<std::int64_t>> classes;  // every i in [0, S_2(n)] present, possibly empty
  std::vector<std::int64_t> merged_high;              // union of classes[i] for i >= 3

  const std::vector<std::int64_t>& at(int i) const {
    static const std::vector<std::int64_t> empty;
    auto it = classes.find(i);
    return it == classes.end() ? empty : it->second;
  }
};

inline DivisorSet make_divisor_set(std::int64_t n, std::vector<std::int64_t> divisors) {
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  for (auto d : divisors) {
    if (d < 1 || d >= n || n % d != 0) {
      throw std::invalid_argument("divisor set: " + std::to_string(d) + " is not a proper divisor of " +
                                  std::to_string(n));
    }
  }
  return DivisorSet{n, std::move(divisors)};
}

inline DivisorPartition partition_divisors(std::int64_t n, const DivisorSet& set) {
  if (n < 2) throw std::invalid_argument("partition_divisors: n must be >= 2");
  DivisorPartition out;
  out.n = n;
  const int top = valuation2(n);
  for (int i = 0; i <= top; ++i) out.classes[i];
  for (auto d : set.divisors) {
    if (d < 1 || d >= n || n % d != 0) {
      throw std::invalid_argument("partition_divisors: " + std::to_string(d) + " does not properly divide " +
                                  std::to_string(n));
    }
    const int i = valuation2(n / d);
    out.classes[i].push_back(d);
    if (i >= 3) out.merged_high.push_back(d);
  }
  return out;
}

/// Closed-form test for PST in the unweighted graph ICG_n(D):
/// 4 | n, D*_1 = 2 D*_2, D_0 = 4 D*_2, and exactly one of n/4, n/2 in D,
/// where D*_2 = D_2 \ {n/4} and D*_1 = D_1 \ {n/2}.
inline bool unweighted_pst_predicate(std::int64_t n, const DivisorSet& set) {
  if (n % 4 != 0 || set.divisors.empty()) return false;
  const auto part = partition_divisors(n, set);
  auto without = [](const std::vector<std::int64_t>& v, std::int64_t x) {
    std::set<std::int64_t> s(v.begin(), v.end());
    s.erase(x);
    return s;
  };
  auto times = [](const std::set<std::int64_t>& s, std::int64_t k) {
    std::set<std::int64_t> out;
    for (auto x : s) out.insert(k * x);
    return out;
  };
  const auto d2_star = without(part.at(2), n / 4);
  const auto d1_star = without(part.at(1), n / 2);
  const std::set<std::int64_t> d0(part.at(0).begin(), part.at(0).end());
  const bool has_quarter = set.contains(n / 4);
  const bool has_half = set.contains(n / 2);
  return d1_star == times(d2_star, 2) && d0 == times(d2_star, 4) && (has_quarter != has_half);
}

/// All-ones weights on D.
inline DivisorWeights unweighted(std::int64_t n, const DivisorSet& set) {
  std::map<std::int64_t, std::int64_t> w;
  for (auto d : set.divisors) w.emplace(d, 1);
  return DivisorWeights(n, std::move(w));
}

inline constexpr std::int64_t kCensusDivisorCap = 20;  // tau(n) limit
inline constexpr std::int64_t kTwoDivisorWeightSearch = 8;

struct TwoDivisorCount {
  std::int64_t count = 0;            // pairs admitting PST for some positive weights
  std::int64_t formula = 0;          // tau(n)-2 or 2 tau(n)-5
  std::int64_t connected_count = 0;  // the subset with gcd(d1, d2) = 1
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
};

struct CensusReport {
  std::int64_t n = 0;
  std::vector<std::vector<std::int64_t>> predicate_hits;
  std::vector<std::vector<std::int64_t>> spectral_hits;
  std::int64_t weightable_count = 0;
  std::optional<std::int64_t> predicted_weightable;  // only for 4 | n
  std::optional<TwoDivisorCount> two_divisor;        // only for even n >= 6

  bool hits_agree() const { return predicate_hits == spectral_hits; }
  bool weightable_law_holds() const { return !predicted_weightable || *predicted_weightable == weightable_count; }
  bool two_divisor_law_holds() const { return !two_divisor || two_divisor->count == two_divisor->formula; }
  bool consistent() const { return hits_agree() && weightable_law_holds() && two_divisor_law_holds(); }
};

/// Visit every nonempty subset of `items` by increasing size, then lexicographically.
template <typename Visit>
void for_each_subset(const std::vector<std::int64_t>& items, Visit&& visit) {
  const auto k_max = items.size();
  std::vector<std::size_t> idx;
  std::vector<std::int64_t> subset;
  for (std::size_t k = 1; k <= k_max; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      subset.clear();
      for (auto i : idx) subset.push_back(items[i]);
      visit(subset);
      // next combination
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == k_max - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (auto i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

inline DivisorWeights construct_weighted(std::int64_t n, int selector, const DivisorSet& base, std::int64_t filler) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("construct_weighted: n must be even, got " + std::to_string(n));
  if (selector != 1 && selector != 2) throw std::invalid_argument("construct_weighted: selector must be 1 or 2");
  if (selector == 2 && n % 4 != 0) {
    throw std::invalid_argument("construct_weighted: selector 2 needs 4 | n, got n = " + std::to_string(n));
  }
  if (filler <= 0 || filler % 4 != 0) {
    throw std::invalid_argument("construct_weighted: filler must be a positive multiple of 4");
  }
  const auto odd_divisor = n >> selector;
  std::map<std::int64_t, std::int64_t> w;
  for (auto d : base.divisors) {
    if (d < 1 || d >= n || n % d != 0) throw std::invalid_argument("construct_weighted: base is not a subset of D_n");
    if (d != odd_divisor) w.emplace(d, filler);
  }
  w[odd_divisor] = 1;
  return DivisorWeights(n, std::move(w));
}

inline PstVerdict two_divisor_verdict(std::int64_t n, std::int64_t d1, std::int64_t d2, std::int64_t c1,
                                      std::int64_t c2) {
  if (d1 == d2) throw std::invalid_argument("two_divisor_verdict: divisors must differ");
  if (c1 <= 0 || c2 <= 0) throw std::invalid_argument("two_divisor_verdict: weights must be positive");
  const DivisorWeights w(n, {{d1, c1}, {d2, c2}});
  auto verdict = pst_verdict(w);
  auto special = [n](std::int64_t d) { return (n % 4 == 0 && d == n / 4) || (n % 2 == 0 && d == n / 2); };
  if (!special(d1) && !special(d2) && is_connected(w) && verdict.exists) {
    throw std::logic_error("two_divisor_verdict: PST found where two-divisor non-existence forbids it (n=" +
                           std::to_string(n) + ", d=" + std::to_string(d1) + "," + std::to_string(d2) + ")");
  }
  return verdict;
}

/// Unordered pairs {d1, d2} of proper divisors for which some positive weights
/// in [1, 8]^2 give PST, next to the closed-form count.
inline TwoDivisorCount two_divisor_count(std::int64_t n) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("two_divisor_count: n must be even and >= 6");
  const auto divisors = proper_divisors(n).divisors;
  const auto tau = divisor_count(n);
  TwoDivisorCount out;
  out.formula = n % 4 == 0 ? 2 * tau - 5 : tau - 2;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    for (std::size_t k = i + 1; k < divisors.size(); ++k) {
      const auto d1 = divisors[i], d2 = divisors[k];
      bool admits = false;
      for (std::int64_t c1 = 1; c1 <= kTwoDivisorWeightSearch && !admits; ++c1) {
        for (std::int64_t c2 = 1; c2 <= kTwoDivisorWeightSearch && !admits; ++c2) {
          admits = two_divisor_verdict(n, d1, d2, c1, c2).exists;
        }
      }
      if (!admits) continue;
      ++out.count;
      if (std::gcd(d1, d2) == 1) ++out.connected_count;
      out.pairs.emplace_back(d1, d2);
    }
  }
  return out;
}

inline CensusReport enumerate_unweighted(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("enumerate_unweighted: n must be >= 2");
  if (divisor_count(n) > kCensusDivisorCap) {
    throw std::invalid_argument("enumerate_unweighted: tau(n) exceeds the enumeration cap of " +
                                std::to_string(kCensusDivisorCap));
  }
  CensusReport report;
  report.n = n;
  const auto dn = proper_divisors(n).divisors;
  for_each_subset(dn, [&](const std::vector<std::int64_t>& subset) {
    const DivisorSet set{n, subset};
    if (unweighted_pst_predicate(n, set)) report.predicate_hits.push_back(subset);
    if (pst_verdict(unweighted(n, set)).exists) report.spectral_hits.push_back(subset);
    const bool quarter = n % 4 == 0 && set.contains(n / 4);
    const bool half = n % 2 == 0 && set.contains(n / 2);
    if (quarter || half) ++report.weightable_count;
  });
  if (n % 4 == 0) report.predicted_weightable = 3 * (std::int64_t{1} << (divisor_count(n) - 3));
  if (n % 2 == 0 && n >= 6) report.two_divisor = two_divisor_count(n);
  return report;
}

}  // namespace wicg
