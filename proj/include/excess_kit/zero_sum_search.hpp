#pragma once

// Exact maximum-cardinality zero-sum subsets.
//
// A zero-sum subset I is maximal exactly when its complement T is a smallest
// set of vectors whose sum equals the sum of the whole collection, so the
// search can run on either side:
//   - Exhaustive: Gray-code scan over all subsets of the nonzero vectors.
//   - Kernel: Gray-code scan over the null space, spanned by one circuit per
//     non-basis vector. Cheap whenever length - rank is small.
//   - MeetInTheMiddle: increasing target weights for T, each split between a
//     hashed left half and an enumerated right half.
// Zero vectors never belong to a smallest T and are set aside up front. Every
// vector is replaced by its coordinates in the greedy basis, which is linear
// and injective on the span, so keys are at most `rank` bits wide.
//
// Ties are broken toward the lexicographically smallest index set I, which is
// the same as the lexicographically largest complement T. For equal-size sets
// A and B, A precedes B iff the smallest element of A △ B lies in A.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "excess_kit/error.hpp"
#include "excess_kit/gf2.hpp"
#include "excess_kit/parallel.hpp"

namespace excess_kit {

enum class SearchStrategy { Automatic, Exhaustive, Kernel, MeetInTheMiddle };

constexpr std::string_view to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::Automatic: return "automatic";
    case SearchStrategy::Exhaustive: return "exhaustive";
    case SearchStrategy::Kernel: return "kernel";
    case SearchStrategy::MeetInTheMiddle: return "meet-in-the-middle";
  }
  return "unknown";
}

inline constexpr std::size_t kExhaustiveCrossover = 20;
inline constexpr std::size_t kKernelCrossover = 20;
/// Budget used when the caller passes an effort limit of 0. Effort is counted
/// in subsets visited (exhaustive, kernel) or combinations enumerated (meet in
/// the middle); memory of the latter grows with the same count.
inline constexpr std::uint64_t kAutomaticEffort = std::uint64_t{1} << 24;

struct ZeroSumOptions {
  std::uint64_t effort_limit = 0;
  unsigned threads = 1;
  SearchStrategy strategy = SearchStrategy::Automatic;
};

class EffortExceeded : public Error {
 public:
  EffortExceeded(std::uint64_t required, std::uint64_t limit, SubsetCertificate fallback)
      : Error(ErrorCode::EffortExceeded, "exact search needs effort " + std::to_string(required) +
                                             " beyond the limit " + std::to_string(limit) +
                                             "; constructive certificate " + fallback.to_string()),
        required_(required),
        limit_(limit),
        fallback_(std::move(fallback)) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }
  const SubsetCertificate& fallback() const noexcept { return fallback_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
  SubsetCertificate fallback_;
};

struct ZeroSumSearch {
  SubsetCertificate certificate;
  SearchStrategy strategy = SearchStrategy::Automatic;
  std::uint64_t effort = 0;
};

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

inline std::uint64_t pow2(std::size_t n) { return n >= 64 ? kSaturated : std::uint64_t{1} << n; }

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

struct KeyHash {
  std::size_t operator()(std::uint64_t x) const noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
  std::size_t operator()(const Gf2Vector& v) const noexcept { return v.hash(); }
};

/// Same-size index masks: true iff a precedes b lexicographically.
inline bool lex_precedes(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  return diff != 0 && (a & (diff & -diff)) != 0;
}

inline bool lex_precedes(const Gf2Vector& a, const Gf2Vector& b) {
  auto low = (a ^ b).lowest_set_bit();
  return low && a.test(*low);
}

/// Maximum zero-sum mask over keys (n <= 62), lexicographically first on ties.
inline std::uint64_t exhaustive_search(std::span<const std::uint64_t> keys, unsigned threads) {
  const std::size_t n = keys.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = std::min<std::uint64_t>(std::max(1U, threads), total);

  struct Best {
    std::uint64_t mask = 0;
    int pop = 0;
  };
  std::vector<Best> partial(chunks);

  auto consider = [](Best& best, std::uint64_t mask) {
    int pop = std::popcount(mask);
    if (pop > best.pop || (pop == best.pop && lex_precedes(mask, best.mask))) best = {mask, pop};
  };

  parallel_for(chunks, threads, [&](std::size_t c) {
    std::uint64_t lo = total / chunks * c;
    std::uint64_t hi = c + 1 == chunks ? total : total / chunks * (c + 1);
    std::uint64_t gray = lo ^ (lo >> 1);
    std::uint64_t acc = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if ((gray >> b) & 1U) acc ^= keys[b];
    }
    Best best;
    if (acc == 0) consider(best, gray);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
      int bit = std::countr_zero(i);
      gray ^= std::uint64_t{1} << bit;
      acc ^= keys[bit];
      if (acc == 0) consider(best, gray);
    }
    partial[c] = best;
  });

  Best best;
  for (const auto& p : partial) consider(best, p.mask);
  return best.mask;
}

/// Maximum element of the span of `circuits` (n-bit sets), lexicographically
/// first on ties. Every element of that span is a zero-sum subset.
inline Gf2Vector kernel_search(std::span<const Gf2Vector> circuits, std::size_t n, unsigned threads) {
  const std::size_t nullity = circuits.size();
  const std::uint64_t total = std::uint64_t{1} << nullity;
  const std::uint64_t chunks = std::min<std::uint64_t>(std::max(1U, threads), total);

  struct Best {
    Gf2Vector set;
    std::size_t pop = 0;
  };
  std::vector<Best> partial(chunks, Best{Gf2Vector(n), 0});

  auto consider = [](Best& best, const Gf2Vector& set) {
    std::size_t pop = set.popcount();
    if (pop > best.pop || (pop == best.pop && lex_precedes(set, best.set))) best = {set, pop};
  };

  parallel_for(chunks, threads, [&](std::size_t c) {
    std::uint64_t lo = total / chunks * c;
    std::uint64_t hi = c + 1 == chunks ? total : total / chunks * (c + 1);
    std::uint64_t gray = lo ^ (lo >> 1);
    Gf2Vector acc(n);
    for (std::size_t b = 0; b < nullity; ++b) {
      if ((gray >> b) & 1U) acc ^= circuits[b];
    }
    Best best{Gf2Vector(n), 0};
    consider(best, acc);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
      int bit = std::countr_zero(i);
      gray ^= std::uint64_t{1} << bit;
      acc ^= circuits[static_cast<std::size_t>(bit)];
      consider(best, acc);
    }
    partial[c] = std::move(best);
  });

  Best best{Gf2Vector(n), 0};
  for (const auto& p : partial) consider(best, p.set);
  return best.set;
}

/// Visits every size-k subset of [lo, hi) in lexicographic order with the sum
/// of its keys. The visitor returns false to stop early.
template <typename Key, typename Visit>
bool for_each_combination(std::span<const Key> keys, std::size_t lo, std::size_t hi, std::size_t k, const Key& zero,
                          Visit&& visit) {
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  auto rec = [&](auto&& self, std::size_t start, const Key& acc) -> bool {
    if (chosen.size() == k) return visit(acc);
    std::size_t remaining = k - chosen.size();
    for (std::size_t i = start; i + remaining <= hi; ++i) {
      chosen.push_back(i);
      bool keep_going = self(self, i + 1, acc ^ keys[i]);
      chosen.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  return rec(rec, lo, zero);
}

/// Lexicographic unranking of size-k subsets of [lo, hi).
inline std::vector<std::size_t> nth_combination(std::size_t lo, std::size_t hi, std::size_t k, std::uint64_t rank) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = lo;
  while (out.size() < k) {
    std::size_t remaining = k - out.size();
    std::uint64_t with_next = binomial(hi - next - 1, remaining - 1);
    if (rank < with_next) {
      out.push_back(next);
    } else {
      rank -= with_next;
    }
    ++next;
  }
  return out;
}

inline std::uint64_t meet_in_the_middle_cost(std::size_t n, std::size_t w) {
  std::size_t half = n / 2;
  std::size_t a_lo = w > n - half ? w - (n - half) : 0;
  std::size_t a_hi = std::min(w, half);
  std::uint64_t cost = 0;
  for (std::size_t a = a_lo; a <= a_hi; ++a) {
    cost = saturating_add(cost, saturating_add(binomial(half, a), binomial(n - half, w - a)));
  }
  return cost;
}

/// Lexicographically largest T = L ∪ R with |L| = a from the left half, |R| = b
/// from the right half and sum(T) = target. Left subsets are hashed by sum,
/// keeping the lexicographic rank of the largest one; because every left index
/// precedes every right index, comparing (left rank, right rank) pairs orders
/// the candidates exactly.
template <typename Key>
std::optional<std::vector<std::size_t>> meet_in_the_middle_split(std::span<const Key> keys, const Key& target,
                                                                 const Key& zero, std::size_t a, std::size_t b) {
  const std::size_t n = keys.size();
  const std::size_t half = n / 2;

  std::unordered_map<Key, std::uint64_t, KeyHash> left;
  left.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(binomial(half, a), std::uint64_t{1} << 22)));
  std::uint64_t rank = 0;
  for_each_combination<Key>(keys, 0, half, a, zero, [&](const Key& sum) {
    left.insert_or_assign(sum, rank++);
    return true;
  });

  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  rank = 0;
  for_each_combination<Key>(keys, half, n, b, zero, [&](const Key& sum) {
    auto it = left.find(target ^ sum);
    if (it != left.end()) {
      std::pair<std::uint64_t, std::uint64_t> cand{it->second, rank};
      if (!best || cand > *best) best = cand;
    }
    ++rank;
    return true;
  });
  if (!best) return std::nullopt;

  auto out = nth_combination(0, half, a, best->first);
  auto right = nth_combination(half, n, b, best->second);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

/// Smallest, then lexicographically largest, T with sum(T) = target.
template <typename Key>
std::vector<std::size_t> meet_in_the_middle_search(std::span<const Key> keys, const Key& target, const Key& zero,
                                                   std::size_t max_weight, std::uint64_t budget, unsigned threads,
                                                   std::uint64_t& spent, const SubsetCertificate& fallback) {
  const std::size_t n = keys.size();
  const std::size_t half = n / 2;
  for (std::size_t w = 0; w <= max_weight; ++w) {
    spent = saturating_add(spent, meet_in_the_middle_cost(n, w));
    if (spent > budget) throw EffortExceeded(spent, budget, fallback);

    std::size_t a_lo = w > n - half ? w - (n - half) : 0;
    std::size_t a_hi = std::min(w, half);
    if (a_lo > a_hi) continue;
    std::vector<std::optional<std::vector<std::size_t>>> found(a_hi - a_lo + 1);
    parallel_for(found.size(), threads, [&](std::size_t i) {
      std::size_t a = a_lo + i;
      found[i] = meet_in_the_middle_split<Key>(keys, target, zero, a, w - a);
    });

    std::optional<std::vector<std::size_t>> best;
    for (auto& f : found) {
      if (f && (!best || *f > *best)) best = std::move(f);
    }
    if (best) return *best;
  }
  throw Error(ErrorCode::EffortExceeded, "no complement found up to the constructive weight");
}

inline std::uint64_t low_word(const Gf2Vector& v) { return v.words().empty() ? 0 : v.words()[0]; }

}  // namespace detail

/// Exact maximum-cardinality zero-sum subset with search diagnostics.
inline ZeroSumSearch max_zero_sum_search(const Gf2Collection& c, const ZeroSumOptions& options = {}) {
  const SubsetCertificate constructive = zero_sum_subcollection(c);
  const std::uint64_t budget = options.effort_limit != 0 ? options.effort_limit : kAutomaticEffort;
  const unsigned threads = std::max(1U, options.threads);

  std::vector<std::size_t> nonzero;
  std::vector<std::size_t> zeros;
  for (std::size_t i = 1; i <= c.size(); ++i) {
    (c.at(i).is_zero() ? zeros : nonzero).push_back(i);
  }
  const std::size_t n = nonzero.size();

  const std::size_t capacity = std::min(c.dim(), n);
  EchelonBasis echelon(c.dim(), capacity);
  std::vector<std::size_t> basis_positions;
  for (std::size_t p = 0; p < n; ++p) {
    if (echelon.insert(c.at(nonzero[p]))) basis_positions.push_back(p);
  }
  const std::size_t r = echelon.rank();
  std::vector<Gf2Vector> coords;
  coords.reserve(n);
  for (auto idx : nonzero) coords.push_back(echelon.reduce(c.at(idx)).second);

  SearchStrategy strategy = options.strategy;
  if (strategy == SearchStrategy::Automatic) {
    if (n <= kExhaustiveCrossover) {
      strategy = SearchStrategy::Exhaustive;
    } else if (n - r <= kKernelCrossover) {
      strategy = SearchStrategy::Kernel;
    } else {
      strategy = SearchStrategy::MeetInTheMiddle;
    }
  }

  ZeroSumSearch result;
  result.strategy = strategy;
  std::vector<bool> in_subset(n, false);

  switch (strategy) {
    case SearchStrategy::Exhaustive: {
      result.effort = detail::pow2(n);
      if (n > 62 || result.effort > budget) throw EffortExceeded(result.effort, budget, constructive);
      std::vector<std::uint64_t> keys;
      keys.reserve(n);
      for (const auto& v : coords) keys.push_back(detail::low_word(v));
      std::uint64_t mask = detail::exhaustive_search(keys, threads);
      for (std::size_t p = 0; p < n; ++p) in_subset[p] = (mask >> p) & 1U;
      break;
    }
    case SearchStrategy::Kernel: {
      result.effort = detail::pow2(n - r);
      if (n - r > 62 || result.effort > budget) throw EffortExceeded(result.effort, budget, constructive);
      std::vector<Gf2Vector> circuits;
      std::size_t b = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (b < basis_positions.size() && basis_positions[b] == p) {
          ++b;
          continue;
        }
        Gf2Vector circuit = Gf2Vector::unit(n, p);
        for (std::size_t slot = 0; slot < r; ++slot) {
          if (coords[p].test(slot)) circuit.flip(basis_positions[slot]);
        }
        circuits.push_back(std::move(circuit));
      }
      Gf2Vector best = detail::kernel_search(circuits, n, threads);
      for (std::size_t p = 0; p < n; ++p) in_subset[p] = best.test(p);
      break;
    }
    case SearchStrategy::MeetInTheMiddle: {
      std::size_t max_weight = n - (constructive.size() - zeros.size());
      std::vector<std::size_t> complement;
      if (r <= 64) {
        std::vector<std::uint64_t> keys;
        keys.reserve(n);
        std::uint64_t target = 0;
        for (const auto& v : coords) {
          keys.push_back(detail::low_word(v));
          target ^= keys.back();
        }
        complement = detail::meet_in_the_middle_search<std::uint64_t>(keys, target, 0, max_weight, budget, threads,
                                                                      result.effort, constructive);
      } else {
        Gf2Vector target(capacity);
        for (const auto& v : coords) target ^= v;
        complement = detail::meet_in_the_middle_search<Gf2Vector>(coords, target, Gf2Vector(capacity), max_weight,
                                                                   budget, threads, result.effort, constructive);
      }
      in_subset.assign(n, true);
      for (auto p : complement) in_subset[p] = false;
      break;
    }
    case SearchStrategy::Automatic:
      break;
  }

  std::vector<std::size_t> picked;
  for (std::size_t p = 0; p < n; ++p) {
    if (in_subset[p]) picked.push_back(nonzero[p]);
  }
  std::merge(picked.begin(), picked.end(), zeros.begin(), zeros.end(), std::back_inserter(result.certificate.indices));
  return result;
}

/// Maximum-cardinality zero-sum subset; lexicographically smallest index set
/// among the maximum ones. Throws EffortExceeded when `effort_limit` (0 picks
/// kAutomaticEffort) is too small to finish exactly.
inline SubsetCertificate max_zero_sum_subset(const Gf2Collection& c, std::uint64_t effort_limit = 0,
                                             unsigned threads = 1) {
  return max_zero_sum_search(c, ZeroSumOptions{effort_limit, threads, SearchStrategy::Automatic}).certificate;
}

}  // namespace excess_kit
