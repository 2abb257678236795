// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles here are written against plain machine words and
// share no code with the library beyond its public entry points.

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "excess_kit/excess_kit.hpp"

using namespace excess_kit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
  }
  if (!o.pass) ++failures;
  std::printf("%s %s  %s  [%.2f s", id, o.pass ? "PASS" : "FAIL", title, secs);
  if (limit_seconds > 0) std::printf(" / limit %.0f s", limit_seconds);
  std::printf("]%s%s\n", o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

std::uint64_t random_word(std::mt19937_64& rng, std::size_t dim, int style) {
  const std::uint64_t mask = dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
  std::uint64_t w = rng() & mask;
  if (style == 1) w &= rng() & rng();  // sparse
  return w;
}

// Collection as machine words plus its library form. Style 2 draws from a
// small pool to produce duplicates and low rank.
struct Sample {
  std::size_t dim = 0;
  std::vector<std::uint64_t> words;
  Gf2Collection coll;
};

Sample random_sample(std::mt19937_64& rng, std::size_t dim, std::size_t m) {
  Sample s{dim, {}, Gf2Collection(dim)};
  const int style = static_cast<int>(rng() % 3);
  std::vector<std::uint64_t> pool;
  for (std::size_t i = 0; i < 1 + rng() % 5; ++i) pool.push_back(random_word(rng, dim, 0));
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t w = style == 2 ? pool[rng() % pool.size()] : random_word(rng, dim, style);
    s.words.push_back(w);
    Gf2Vector v(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      if ((w >> b) & 1U) v.set(b);
    }
    s.coll.push_back(v);
  }
  return s;
}

std::size_t word_rank(std::vector<std::uint64_t> rows) {
  std::size_t r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    std::size_t pivot = r;
    while (pivot < rows.size() && !(rows[pivot] & b)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i] & b)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

// Gray-code walk over all subsets; largest zero-sum mask, ties to the
// lexicographically smallest index set (for equal sizes, A first iff the
// lowest differing index belongs to A).
std::uint64_t brute_force_max_zero_sum(const std::vector<std::uint64_t>& words) {
  const std::size_t m = words.size();
  std::uint64_t best = 0;
  std::uint64_t mask = 0;
  std::uint64_t sum = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << m); ++step) {
    const int flip = std::countr_zero(step);
    mask ^= std::uint64_t{1} << flip;
    sum ^= words[static_cast<std::size_t>(flip)];
    if (sum != 0) continue;
    const int a = std::popcount(mask);
    const int b = std::popcount(best);
    if (a > b || (a == b && (mask & (std::uint64_t{1} << std::countr_zero(mask ^ best))) != 0)) best = mask;
  }
  return best;
}

std::vector<std::size_t> mask_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) out.push_back(i + 1);
  }
  return out;
}

std::uint64_t xor_of(const std::vector<std::uint64_t>& words, const std::vector<std::size_t>& idx) {
  std::uint64_t s = 0;
  for (auto i : idx) s ^= words[i - 1];
  return s;
}

ValidatedProfile random_profile(std::mt19937_64& rng) {
  const auto b1 = static_cast<std::int64_t>(rng() % 4);
  const auto b2 = static_cast<std::int64_t>(rng() % 12);
  const auto sigma = b2 == 0 ? 0 : static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * b2 + 1)) - b2;
  return validate_profile(ManifoldProfile{"random", sigma, b2 + 2 - 2 * b1, b1});
}

// Family satisfying both hypotheses: one sign, classes closing to zero.
SurfaceFamily random_good_family(std::mt19937_64& rng, const ValidatedProfile& m) {
  const auto k = static_cast<std::size_t>(m.b2_f2());
  const std::size_t r = 1 + rng() % 8;
  const bool negative = rng() & 1U;
  std::vector<SurfaceDatum> members;
  Gf2Vector acc(k);
  for (std::size_t i = 0; i < r; ++i) {
    Gf2Vector c(k);
    if (i + 1 < r) {
      for (std::size_t b = 0; b < k; ++b) {
        if (rng() & 1U) c.set(b);
      }
      acc ^= c;
    } else {
      c = acc;
    }
    const auto g = 1 + static_cast<std::int64_t>(rng() % 10);
    const auto e = static_cast<std::int64_t>(rng() % 60);
    members.push_back({g, negative ? -e : e, c});
  }
  return SurfaceFamily(k, members);
}

ValidatedProfile shipped_s4() {
  for (auto& p : load_catalog(EXCESS_KIT_DEFAULT_CATALOG)) {
    if (p.name() == "s4") return p;
  }
  throw std::runtime_error("s4 missing from the shipped catalog");
}

}  // namespace

int main() {
  criterion("AC1", "single surfaces in s4: Obstructed exactly when |e| > 2g (g <= 64, |e| <= 200)", 5.0, [] {
    const auto s4 = shipped_s4();
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    for (std::int64_t g = 1; g <= 64; ++g) {
      for (std::int64_t e = -200; e <= 200; ++e) {
        auto r = excess_check(s4, SurfaceFamily(0, {SurfaceDatum{g, e, Gf2Vector(0)}}));
        const Verdict want = std::llabs(e) > 2 * g ? Verdict::Obstructed : Verdict::BoundSatisfied;
        mismatches += r.verdict != want;
        ++checked;
      }
    }
    return Outcome{mismatches == 0, std::to_string(checked) + " cases, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion("AC2", "constructive zero-sum certificates: XOR 0, size >= m - rank (10000 collections, k <= 32, m <= 64)",
            10.0, [] {
              std::mt19937_64 rng(0xAC2);
              std::size_t bad = 0;
              for (int t = 0; t < 10000; ++t) {
                const std::size_t k = 1 + rng() % 32;
                const std::size_t m = rng() % 65;
                auto s = random_sample(rng, k, m);
                auto cert = zero_sum_subcollection(s.coll);
                const std::size_t r = word_rank(s.words);
                bad += xor_of(s.words, cert.indices) != 0 || cert.size() + r < m || rank(s.coll) != r;
              }
              return Outcome{bad == 0, std::to_string(bad) + " failures"};
            });

  criterion("AC3", "max_zero_sum_subset equals brute force in size and index set (1000 collections, m <= 18)", 60.0,
            [] {
              std::mt19937_64 rng(0xAC3);
              std::size_t bad = 0;
              for (int t = 0; t < 1000; ++t) {
                const std::size_t k = 1 + rng() % 16;
                const std::size_t m = rng() % 19;
                auto s = random_sample(rng, k, m);
                auto got = max_zero_sum_subset(s.coll);
                bad += got.indices != mask_indices(brute_force_max_zero_sum(s.words));
              }
              return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
            });

  criterion("AC4", "branched cover identities over 10000 (profile, surface) pairs; odd e gives OddEulerNumber", 0, [] {
    std::mt19937_64 rng(0xAC4);
    std::size_t bad = 0;
    std::size_t even = 0;
    std::size_t odd = 0;
    for (int t = 0; t < 10000; ++t) {
      auto m = random_profile(rng);
      const auto g = 1 + static_cast<std::int64_t>(rng() % 40);
      const auto e = static_cast<std::int64_t>(rng() % 401) - 200;
      TubedSurface f{g, e, 2 - g, Gf2Vector(static_cast<std::size_t>(m.b2_f2()))};
      if (e % 2 != 0) {
        ++odd;
        try {
          branched_double_cover(m, f);
          ++bad;
        } catch (const Error& err) {
          bad += err.code() != ErrorCode::OddEulerNumber;
        }
        continue;
      }
      ++even;
      auto c = branched_double_cover(m, f);
      bad += c.sigma_n != 2 * m.signature() - e / 2;
      bad += c.chi_n != 2 * m.euler_characteristic() - (2 - g);
      bad += c.b2_f2_upper != 2 * m.euler_characteristic() + g - 4 + 4 * m.b1_f2();
    }
    return Outcome{bad == 0 && odd > 0, std::to_string(even) + " even, " + std::to_string(odd) + " odd, " +
                                            std::to_string(bad) + " failures"};
  });

  criterion("AC5", "B(s4) = 0; one plane with |e| > 2 is Obstructed whenever D(M) = 0 and b2 = 0", 0, [] {
    const auto s4 = shipped_s4();
    std::size_t bad = plane_bound(s4) != 0;
    std::size_t cases = 0;
    for (std::int64_t b1 = 0; b1 <= 5; ++b1) {
      auto m = validate_profile(ManifoldProfile{"d0", 0, 2 - 2 * b1, b1});
      if (excess_budget(m) != 0 || m.b2_f2() != 0) {
        ++bad;
        continue;
      }
      for (std::int64_t e = 3; e <= 40; ++e) {
        for (std::int64_t sign : {1, -1}) {
          auto a = plane_family_audit(m, SurfaceFamily(0, {SurfaceDatum{1, sign * e, Gf2Vector(0)}}));
          bad += a.verdict != Verdict::Obstructed;
          ++cases;
        }
      }
    }
    return Outcome{bad == 0, std::to_string(cases) + " audits, " + std::to_string(bad) + " failures"};
  });

  criterion("AC6", "proof traces replay and both closed forms of D(M) agree (1000 random families)", 0, [] {
    std::mt19937_64 rng(0xAC6);
    std::size_t bad = 0;
    for (int t = 0; t < 1000; ++t) {
      auto m = random_profile(rng);
      auto r = excess_check(m, random_good_family(rng, m));
      bad += r.verdict == Verdict::HypothesisFailure;
      bad += !r.trace.replay();
      bad += !replay_trace(Json::parse(to_json(r).dump()).at("trace"));
      const std::int64_t d_euler =
          4 * std::llabs(m.signature()) + 8 * m.b1_f2() + 4 * m.euler_characteristic() - 8;
      const std::int64_t d_b2 = 4 * std::llabs(m.signature()) + 4 * (m.euler_characteristic() - 2 + 2 * m.b1_f2());
      bad += d_euler != d_b2 || r.rhs != d_euler;
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures"};
  });

  criterion("AC7", "identical outputs for 1, 4 and 16 threads (zero-sum search and batch sweeps)", 0, [] {
    std::mt19937_64 rng(0xAC7);
    std::vector<Gf2Collection> corpus;
    for (int t = 0; t < 60; ++t) corpus.push_back(random_sample(rng, 2 + rng() % 14, 5 + rng() % 36).coll);
    auto m = validate_profile(ManifoldProfile{"m", 1, 5, 1});
    std::vector<SurfaceFamily> families;
    for (int t = 0; t < 500; ++t) families.push_back(random_good_family(rng, m));
    std::vector<SurfaceFamily> plane_sets;
    for (int t = 0; t < 40; ++t) {
      std::vector<SurfaceDatum> ps;
      const std::size_t n = 1 + rng() % 60;
      for (std::size_t i = 0; i < n; ++i) {
        Gf2Vector c(static_cast<std::size_t>(m.b2_f2()));
        for (std::size_t b = 0; b < c.dim(); ++b) {
          if (rng() & 1U) c.set(b);
        }
        const auto e = 3 + static_cast<std::int64_t>(rng() % 5);
        ps.push_back({1, (rng() & 1U) ? e : -e, c});
      }
      plane_sets.emplace_back(static_cast<std::size_t>(m.b2_f2()), ps);
    }

    auto render = [&](unsigned threads) {
      Json doc = Json::object();
      Json certs = Json::array();
      for (const auto& c : corpus) certs.push_back(to_json(max_zero_sum_subset(c, std::uint64_t{1} << 30, threads)));
      doc["zero_sum"] = certs;
      Json sweep = Json::array();
      for (const auto& e : single_surface_sweep(m, 32, 100, threads)) {
        sweep.push_back({e.genus, e.euler_number, std::string(to_string(e.verdict)), e.lhs});
      }
      doc["sweep"] = sweep;
      Json batch = Json::array();
      for (const auto& r : batch_excess_check(m, families, threads)) batch.push_back(to_json(r));
      doc["batch"] = batch;
      Json audits = Json::array();
      for (const auto& p : plane_sets) {
        audits.push_back(to_json(plane_family_audit(m, p, AuditOptions{true, std::uint64_t{1} << 30, threads})));
      }
      doc["audits"] = audits;
      return dump_json(doc);
    };
    const std::string one = render(1);
    const std::string four = render(4);
    const std::string sixteen = render(16);
    const bool same = one == four && one == sixteen;
    return Outcome{same, std::to_string(one.size()) + " bytes per report" + (same ? "" : ", reports differ")};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
