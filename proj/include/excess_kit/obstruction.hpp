#pragma once

// Excess-bound evaluation with self-checking proof traces.
//
// A trace is a list of (label, lhs, relation, rhs, anchor) steps, each of
// which must hold for the values recorded. The chain runs in doubled units
// (2 sigma(N) instead of sigma(N)) so that every recorded value is an integer,
// including the half-integers that would appear for odd e(F).
//
// "Obstructed" is the contrapositive of the bound: no family of pairwise
// disjoint locally flat surfaces with these invariants exists in any manifold
// with this profile. "BoundSatisfied" asserts nothing about existence.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excess_kit/cover.hpp"
#include "excess_kit/error.hpp"
#include "excess_kit/gf2.hpp"
#include "excess_kit/manifold.hpp"
#include "excess_kit/parallel.hpp"
#include "excess_kit/surface.hpp"
#include "excess_kit/zero_sum_search.hpp"

namespace excess_kit {

enum class Relation { Equal, LessEqual, GreaterEqual, Less, Greater };

constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
  }
  return "?";
}

inline std::optional<Relation> parse_relation(std::string_view s) {
  for (auto r : {Relation::Equal, Relation::LessEqual, Relation::GreaterEqual, Relation::Less, Relation::Greater}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

constexpr bool holds(std::int64_t lhs, Relation rel, std::int64_t rhs) {
  switch (rel) {
    case Relation::Equal: return lhs == rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Less: return lhs < rhs;
    case Relation::Greater: return lhs > rhs;
  }
  return false;
}

struct ProofStep {
  std::string label;
  std::int64_t lhs = 0;
  Relation rel = Relation::Equal;
  std::int64_t rhs = 0;
  std::string anchor;

  bool holds() const { return excess_kit::holds(lhs, rel, rhs); }
  friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

class ProofTrace {
 public:
  /// Records a step that is expected to hold; a false relation is a bug in the chain.
  void expect(std::string label, std::int64_t lhs, Relation rel, std::int64_t rhs, std::string anchor) {
    ProofStep s{std::move(label), lhs, rel, rhs, std::move(anchor)};
    if (!s.holds()) throw std::logic_error("proof step does not hold: " + s.label);
    steps_.push_back(std::move(s));
  }

  /// Records whichever of <= and > holds. Returns true for <=.
  bool compare(std::string label, std::int64_t lhs, std::int64_t rhs, std::string anchor) {
    bool within = lhs <= rhs;
    steps_.push_back({std::move(label), lhs, within ? Relation::LessEqual : Relation::Greater, rhs, std::move(anchor)});
    return within;
  }

  const std::vector<ProofStep>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }

  bool replay() const {
    return std::all_of(steps_.begin(), steps_.end(), [](const ProofStep& s) { return s.holds(); });
  }

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;

 private:
  std::vector<ProofStep> steps_;
};

enum class Verdict { BoundSatisfied, Obstructed, HypothesisFailure };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BoundSatisfied: return "BoundSatisfied";
    case Verdict::Obstructed: return "Obstructed";
    case Verdict::HypothesisFailure: return "HypothesisFailure";
  }
  return "Unknown";
}

struct ObstructionReport {
  Verdict verdict = Verdict::BoundSatisfied;
  std::int64_t lhs = 0;  // sum (|e_i| - 2 g_i)
  std::int64_t rhs = 0;  // D(M)
  ProofTrace trace;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  std::string failed_hypothesis;  // empty unless verdict is HypothesisFailure

  friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

inline std::vector<std::string> modeling_assumptions() {
  return {
      "ambient manifold is closed, connected and oriented; Euler numbers use one fixed orientation",
      "surfaces are connected, nonorientable and locally flat topologically embedded (declared, not checked)",
      "surfaces are pairwise disjoint (declared, not checked)",
      "profile invariants signature, euler_characteristic and b1_f2 are taken as given",
  };
}

struct HypothesisRecord {
  SignClass sign = SignClass::NonNegative;
  Gf2Vector class_sum;
  bool both_hold = false;
};

inline void require_matching_dim(const ValidatedProfile& m, const SurfaceFamily& f) {
  if (static_cast<std::int64_t>(f.ambient_dim()) != m.b2_f2()) {
    throw Error(ErrorCode::DimensionMismatch, "family classes have dimension " + std::to_string(f.ambient_dim()) +
                                                  " but b2_f2(" + m.name() + ") = " + std::to_string(m.b2_f2()));
  }
}

inline HypothesisRecord check_hypotheses(const ValidatedProfile& m, const SurfaceFamily& f) {
  require_matching_dim(m, f);
  HypothesisRecord h;
  h.sign = sign_class(f);
  h.class_sum = f.classes().total();
  h.both_hold = h.sign != SignClass::Mixed && h.class_sum.is_zero();
  return h;
}

inline std::int64_t normal_euler_excess(const SurfaceFamily& f) {
  std::int64_t s = 0;
  for (const auto& m : f.members()) s += std::llabs(m.euler_number) - 2 * m.genus;
  return s;
}

namespace detail {

inline bool is_homology_sphere(const ValidatedProfile& m) {
  return m.signature() == 0 && m.b1_f2() == 0 && m.b2_f2() == 0;
}

inline void record_hypotheses(ProofTrace& trace, const SurfaceFamily& f, const HypothesisRecord& h) {
  std::int64_t positive = 0;
  std::int64_t negative = 0;
  for (const auto& s : f.members()) {
    positive += s.euler_number > 0;
    negative += s.euler_number < 0;
  }
  std::int64_t minority = std::min(positive, negative);
  trace.expect("min(#{e_i > 0}, #{e_i < 0})", minority, minority == 0 ? Relation::Equal : Relation::Greater, 0,
               "hypothesis: the e_i have the same sign");
  std::int64_t weight = static_cast<std::int64_t>(h.class_sum.popcount());
  trace.expect("weight of [F_1] + ... + [F_r] in H2(M;F2)", weight, weight == 0 ? Relation::Equal : Relation::Greater,
               0, "hypothesis: the mod-2 classes sum to zero");
}

}  // namespace detail

/// Evaluates the excess bound sum (|e_i| - 2 g_i) <= D(M) step by step.
inline ObstructionReport excess_check(const ValidatedProfile& m, const SurfaceFamily& f) {
  const HypothesisRecord h = check_hypotheses(m, f);

  ObstructionReport report;
  report.lhs = normal_euler_excess(f);
  report.rhs = excess_budget(m);
  report.assumptions = modeling_assumptions();
  detail::record_hypotheses(report.trace, f, h);

  if (!h.both_hold) {
    report.verdict = Verdict::HypothesisFailure;
    report.failed_hypothesis = h.sign == SignClass::Mixed ? "same sign: the e_i have mixed signs"
                                                          : "mod-2 null: [F_1] + ... + [F_r] = " +
                                                                h.class_sum.to_string() + " is nonzero";
    if (h.sign == SignClass::Mixed && !h.class_sum.is_zero()) {
      report.failed_hypothesis += "; mod-2 null: class sum " + h.class_sum.to_string() + " is nonzero";
    }
    report.notes.push_back("hypothesis failed: " + report.failed_hypothesis);
    return report;
  }

  ProofTrace& t = report.trace;
  const std::int64_t r = static_cast<std::int64_t>(f.size());
  std::int64_t sum_g = 0;
  std::int64_t sum_e = 0;
  std::int64_t sum_chi = 0;
  for (const auto& s : f.members()) {
    sum_g += s.genus;
    sum_e += s.euler_number;
    sum_chi += s.euler_characteristic();
  }
  const std::int64_t sum_abs_e = sum_abs_euler(f);

  // Tubing.
  const TubedSurface tubed = tube(f);
  t.expect("g(F) = sum g_i", tubed.genus, Relation::Equal, sum_g, "tubing: genera add");
  t.expect("e(F) = sum e_i", tubed.euler_number, Relation::Equal, sum_e, "tubing: normal Euler numbers add");
  t.expect("chi(F) = sum chi(F_i) - 2(r - 1)", tubed.euler_characteristic, Relation::Equal, sum_chi - 2 * (r - 1),
           "tubing: each tube lowers chi by 2");
  t.expect("chi(F) = 2 - g(F)", tubed.euler_characteristic, Relation::Equal, 2 - tubed.genus,
           "connected nonorientable surface");
  t.expect("weight of [F]", static_cast<std::int64_t>(tubed.mod2_class.popcount()), Relation::Equal, 0,
           "tubing: mod-2 classes add");

  // No cancellation.
  const std::int64_t abs_e_f = std::llabs(tubed.euler_number);
  t.expect("|e(F)| = sum |e_i|", abs_e_f, Relation::Equal, sum_abs_e, "same sign: no cancellation");

  // Signature of the branched cover, doubled.
  const std::int64_t sigma_m = m.signature();
  const std::int64_t abs_sigma_m = std::llabs(sigma_m);
  const std::int64_t twice_sigma_n = 4 * sigma_m - tubed.euler_number;
  if (tubed.euler_number % 2 != 0) {
    report.notes.push_back("e(F) = " + std::to_string(tubed.euler_number) +
                           " is odd, so e(F) = 2 e(A) fails and no branched double cover has these invariants; "
                           "the chain is evaluated in doubled units regardless");
  }
  t.expect("2 sigma(N) = 4 sigma(M) - e(F)", twice_sigma_n, Relation::Equal, 4 * sigma_m - sum_e,
           "branched cover signature: sigma(N) = 2 sigma(M) - e(F)/2");
  t.expect("|2 sigma(N) - 4 sigma(M)| = |e(F)|", std::llabs(twice_sigma_n - 4 * sigma_m), Relation::Equal, abs_e_f,
           "signature defect of the branched cover");
  t.expect("sum |e_i| <= |2 sigma(N)| + 4|sigma(M)|", sum_abs_e, Relation::LessEqual,
           std::llabs(twice_sigma_n) + 4 * abs_sigma_m, "triangle inequality");

  // Betti number bounds for N.
  const std::int64_t chi_n = 2 * m.euler_characteristic() - tubed.euler_characteristic;
  t.expect("chi(N) = 2 chi(M) - chi(F)", chi_n, Relation::Equal, 2 * m.euler_characteristic() + tubed.genus - 2,
           "branched cover Euler characteristic");
  const std::int64_t b1_n_upper = 2 * m.b1_f2();
  t.expect("b1(N;F2) upper bound = 2 b1(M;F2)", b1_n_upper, Relation::Equal, 2 * m.b1_f2(),
           "b1 bound for 2-fold branched covers");
  const std::int64_t b2_n_upper = chi_n - 2 + 2 * b1_n_upper;
  t.expect("b2(N;F2) upper bound = chi(N) - 2 + 2 b1 upper bound", b2_n_upper, Relation::Equal,
           2 * m.euler_characteristic() + tubed.genus - 4 + 4 * m.b1_f2(), "Poincare duality over F2 for N");
  t.compare("|2 sigma(N)| vs 2 b2(N;F2) upper bound", std::llabs(twice_sigma_n), 2 * b2_n_upper,
            "|sigma(N)| <= b2(N;R) <= b2(N;F2)");

  // Back to M.
  t.expect("b2(M;F2) = chi(M) - 2 + 2 b1(M;F2)", m.b2_f2(), Relation::Equal,
           m.euler_characteristic() - 2 + 2 * m.b1_f2(), "Poincare duality over F2 for M");
  t.compare("sum |e_i| vs 2 sum g_i + 4|sigma(M)| + 4 b2(M;F2)", sum_abs_e,
            2 * sum_g + 4 * abs_sigma_m + 4 * m.b2_f2(), "main bound");
  t.expect("4|sigma| + 8 b1 + 4 chi - 8 = 4|sigma| + 4 b2", excess_budget_from_euler(m), Relation::Equal,
           excess_budget_from_b2(m), "closed forms of D(M)");
  const bool within = t.compare("sum (|e_i| - 2 g_i) vs D(M)", report.lhs, report.rhs, "excess bound");

  report.verdict = within ? Verdict::BoundSatisfied : Verdict::Obstructed;
  if (within) {
    report.notes.push_back("the bound holds; this is an upper bound only and does not assert that such surfaces exist");
  } else {
    report.notes.push_back("no pairwise disjoint locally flat family with these invariants exists in any closed "
                           "oriented 4-manifold with this profile");
  }
  if (f.size() == 1 && detail::is_homology_sphere(m)) {
    const auto& s = f[0];
    if (std::llabs(s.euler_number) <= 2 * s.genus && !massey_check(s.genus, s.euler_number)) {
      report.notes.push_back("informational: e = " + std::to_string(s.euler_number) +
                             " is not congruent to 2g mod 4, so it is absent from the values realized in S4; "
                             "the excess bound does not encode this congruence");
    }
  }
  return report;
}

inline ObstructionReport excess_check(const ManifoldProfile& m, const SurfaceFamily& f) {
  return excess_check(validate_profile(m), f);
}

/// Reports are returned in input order for any thread count.
inline std::vector<ObstructionReport> batch_excess_check(const ValidatedProfile& m,
                                                         std::span<const SurfaceFamily> families, unsigned threads) {
  std::vector<ObstructionReport> out(families.size());
  parallel_for(families.size(), threads, [&](std::size_t i) { out[i] = excess_check(m, families[i]); });
  return out;
}

struct SweepEntry {
  std::int64_t genus = 1;
  std::int64_t euler_number = 0;
  Verdict verdict = Verdict::BoundSatisfied;
  std::int64_t lhs = 0;

  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

/// excess_check on every single-surface family (g, e, class 0) with
/// 1 <= g <= max_genus and |e| <= max_euler, ordered by (g, e).
inline std::vector<SweepEntry> single_surface_sweep(const ValidatedProfile& m, std::int64_t max_genus,
                                                    std::int64_t max_euler, unsigned threads) {
  require_genus(max_genus);
  if (max_euler < 0) throw Error(ErrorCode::ParseError, "max euler bound must be nonnegative");
  const auto row = static_cast<std::size_t>(2 * max_euler + 1);
  const auto dim = static_cast<std::size_t>(m.b2_f2());
  std::vector<SweepEntry> out(static_cast<std::size_t>(max_genus) * row);
  parallel_for(static_cast<std::size_t>(max_genus), threads, [&](std::size_t gi) {
    const auto g = static_cast<std::int64_t>(gi) + 1;
    for (std::size_t ei = 0; ei < row; ++ei) {
      const std::int64_t e = static_cast<std::int64_t>(ei) - max_euler;
      SurfaceFamily f(dim, {SurfaceDatum{g, e, Gf2Vector(dim)}});
      auto r = excess_check(m, f);
      out[gi * row + ei] = SweepEntry{g, e, r.verdict, r.lhs};
    }
  });
  return out;
}

struct AuditOptions {
  bool use_exact = false;
  std::uint64_t effort_limit = 0;
  unsigned threads = 1;
};

struct ZeroSumStage {
  std::vector<std::size_t> subfamily;  // 1-based indices into the plane family
  ObstructionReport report;

  friend bool operator==(const ZeroSumStage&, const ZeroSumStage&) = default;
};

struct AuditReport {
  Verdict verdict = Verdict::BoundSatisfied;
  std::int64_t plane_count = 0;
  std::int64_t k = 0;  // b2_f2
  std::int64_t d_of_m = 0;
  std::int64_t b_of_m = 0;
  SignClass majority_sign = SignClass::NonNegative;
  std::vector<std::size_t> majority;  // 1-based
  std::optional<ZeroSumStage> constructive;
  std::optional<ZeroSumStage> exact;  // extension; only with AuditOptions::use_exact
  ProofTrace trace;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

inline void require_plane_family(const SurfaceFamily& planes) {
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto& p = planes[i];
    if (p.genus != 1) {
      throw Error(ErrorCode::NotAPlaneFamily,
                  "member " + std::to_string(i + 1) + " has genus " + std::to_string(p.genus) + ", expected 1");
    }
    if (std::llabs(p.euler_number) <= 2) {
      throw Error(ErrorCode::EulerTooSmall,
                  "member " + std::to_string(i + 1) + " has |e| = " + std::to_string(std::llabs(p.euler_number)) +
                      ", the count bound concerns |e| > 2");
    }
  }
}

/// Projective-plane count pipeline: majority sign, zero-sum subfamily, excess
/// bound on that subfamily, and the resulting m <= 2(k + D(M)).
inline AuditReport plane_family_audit(const ValidatedProfile& m, const SurfaceFamily& planes,
                                      const AuditOptions& options = {}) {
  require_matching_dim(m, planes);
  require_plane_family(planes);

  AuditReport a;
  a.plane_count = static_cast<std::int64_t>(planes.size());
  a.k = m.b2_f2();
  a.d_of_m = excess_budget(m);
  a.b_of_m = plane_bound(m);
  a.assumptions = modeling_assumptions();
  ProofTrace& t = a.trace;

  t.expect("D(M) = 4|sigma(M)| + 4 b2(M;F2)", a.d_of_m, Relation::Equal, excess_budget_from_b2(m),
           "closed forms of D(M)");
  t.expect("B(M) = 2(b2(M;F2) + D(M))", a.b_of_m, Relation::Equal, 2 * (a.k + a.d_of_m), "plane count bound");
  const bool count_within = t.compare("m vs B(M)", a.plane_count, a.b_of_m, "plane count bound");

  std::vector<std::size_t> nonneg;
  std::vector<std::size_t> nonpos;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (planes[i].euler_number >= 0) nonneg.push_back(i + 1);
    if (planes[i].euler_number <= 0) nonpos.push_back(i + 1);
  }
  if (nonneg.size() >= nonpos.size()) {
    a.majority_sign = SignClass::NonNegative;
    a.majority = std::move(nonneg);
  } else {
    a.majority_sign = SignClass::NonPositive;
    a.majority = std::move(nonpos);
  }
  const std::int64_t s = static_cast<std::int64_t>(a.majority.size());
  t.expect("2s >= m", 2 * s, Relation::GreaterEqual, a.plane_count, "majority sign: s >= ceil(m/2)");

  bool obstructed = !count_within;
  if (s <= a.k) {
    t.expect("m <= 2s <= 2k", a.plane_count, Relation::LessEqual, 2 * a.k, "few planes of the majority sign");
  } else {
    const SurfaceFamily majority = planes.subfamily(a.majority);

    auto run_stage = [&](const SubsetCertificate& cert, std::string_view tag) {
      ZeroSumStage stage;
      stage.subfamily.reserve(cert.size());
      for (auto i : cert.indices) stage.subfamily.push_back(a.majority[i - 1]);
      stage.report = excess_check(m, planes.subfamily(stage.subfamily));
      if (stage.report.verdict == Verdict::HypothesisFailure) {
        throw std::logic_error("zero-sum subfamily violates the bound's hypotheses");
      }
      const std::int64_t n = static_cast<std::int64_t>(stage.subfamily.size());
      const std::string p(tag);
      t.expect(p + "n >= s - k", n, Relation::GreaterEqual, s - a.k, "zero-sum subcollection of size >= s - k");
      t.expect(p + "n >= 1", n, Relation::GreaterEqual, 1, "s > k gives a nonempty zero-sum subcollection");
      t.expect(p + "n <= sum over subfamily (|e_i| - 2)", n, Relation::LessEqual, stage.report.lhs,
               "each plane has |e| - 2 >= 1");
      bool sub_within = t.compare(p + "sum over subfamily (|e_i| - 2) vs D(M)", stage.report.lhs, a.d_of_m,
                                  "excess bound on the zero-sum subfamily");
      return std::pair{std::move(stage), sub_within};
    };

    auto [constructive, constructive_within] = run_stage(zero_sum_subcollection(majority.classes()), "");
    a.constructive = std::move(constructive);
    obstructed |= !constructive_within;

    if (options.use_exact) {
      try {
        auto cert = max_zero_sum_subset(majority.classes(), options.effort_limit, options.threads);
        auto [exact, exact_within] = run_stage(cert, "exact: ");
        t.expect("exact: n_exact >= n", static_cast<std::int64_t>(exact.subfamily.size()), Relation::GreaterEqual,
                 static_cast<std::int64_t>(a.constructive->subfamily.size()), "maximum zero-sum subset (extension)");
        a.exact = std::move(exact);
        obstructed |= !exact_within;
        a.notes.push_back("exact zero-sum subset is an extension of the constructive certificate");
      } catch (const EffortExceeded& e) {
        a.notes.push_back(std::string("exact zero-sum search skipped: ") + e.what());
      }
    }
  }
  t.compare("m vs 2(k + D(M))", a.plane_count, 2 * (a.k + a.d_of_m), "plane count bound");

  a.verdict = obstructed ? Verdict::Obstructed : Verdict::BoundSatisfied;
  if (obstructed) {
    a.notes.push_back("no family of pairwise disjoint locally flat projective planes with these invariants exists "
                      "in any closed oriented 4-manifold with this profile");
  } else {
    a.notes.push_back("the count bound holds; this does not assert that such planes exist");
  }
  return a;
}

}  // namespace excess_kit
