#pragma once

// Invariant profiles of closed connected oriented 4-manifolds and the ambient
// constants of the excess bound.
//
// Only (signature, Euler characteristic, first mod-2 Betti number) are stored;
// the mod-2 second Betti number follows from Poincaré duality over F2:
//   b2 = chi - 2 + 2 b1.
// Euler numbers elsewhere in the library are taken with respect to one fixed
// orientation of the ambient manifold.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "excess_kit/error.hpp"

namespace excess_kit {

struct ManifoldProfile {
  std::string name;
  std::int64_t signature = 0;
  std::int64_t euler_characteristic = 2;
  std::int64_t b1_f2 = 0;

  friend bool operator==(const ManifoldProfile&, const ManifoldProfile&) = default;
};

class ValidatedProfile;
inline ValidatedProfile validate_profile(ManifoldProfile p);

/// A profile that passed validate_profile; carries the derived b2 over F2.
class ValidatedProfile {
 public:
  const ManifoldProfile& profile() const noexcept { return profile_; }
  const std::string& name() const noexcept { return profile_.name; }
  std::int64_t signature() const noexcept { return profile_.signature; }
  std::int64_t euler_characteristic() const noexcept { return profile_.euler_characteristic; }
  std::int64_t b1_f2() const noexcept { return profile_.b1_f2; }
  std::int64_t b2_f2() const noexcept { return b2_f2_; }

  friend bool operator==(const ValidatedProfile&, const ValidatedProfile&) = default;

 private:
  friend ValidatedProfile validate_profile(ManifoldProfile p);
  ValidatedProfile(ManifoldProfile p, std::int64_t b2) : profile_(std::move(p)), b2_f2_(b2) {}

  ManifoldProfile profile_;
  std::int64_t b2_f2_;
};

inline std::int64_t derived_b2_f2(const ManifoldProfile& p) { return p.euler_characteristic - 2 + 2 * p.b1_f2; }

inline ValidatedProfile validate_profile(ManifoldProfile p) {
  if (p.b1_f2 < 0) {
    throw Error(ErrorCode::InvalidProfile, "b1_f2 = " + std::to_string(p.b1_f2) + " is negative");
  }
  const std::int64_t b2 = derived_b2_f2(p);
  if (b2 < 0) {
    throw Error(ErrorCode::NegativeB2, "euler_characteristic - 2 + 2*b1_f2 = " + std::to_string(b2) + " < 0");
  }
  if (std::llabs(p.signature) > b2) {
    throw Error(ErrorCode::SignatureExceedsRank,
                "|signature| = " + std::to_string(std::llabs(p.signature)) + " exceeds b2_f2 = " + std::to_string(b2));
  }
  return ValidatedProfile(std::move(p), b2);
}

/// D(M) in the form 4|sigma| + 8 b1 + 4 chi - 8.
inline std::int64_t excess_budget_from_euler(const ValidatedProfile& m) {
  return 4 * std::llabs(m.signature()) + 8 * m.b1_f2() + 4 * m.euler_characteristic() - 8;
}

/// D(M) in the form 4|sigma| + 4 b2.
inline std::int64_t excess_budget_from_b2(const ValidatedProfile& m) {
  return 4 * std::llabs(m.signature()) + 4 * m.b2_f2();
}

/// Ambient budget D(M) of the excess bound. Both closed forms are evaluated
/// and must agree.
inline std::int64_t excess_budget(const ValidatedProfile& m) {
  const std::int64_t a = excess_budget_from_euler(m);
  const std::int64_t b = excess_budget_from_b2(m);
  if (a != b) throw std::logic_error("closed forms of the excess budget disagree");
  return a;
}

inline std::int64_t excess_budget(const ManifoldProfile& p) { return excess_budget(validate_profile(p)); }

/// B(M) = 2 (b2 + D(M)): an upper bound on the number of disjoint projective
/// planes with |e| > 2. Not claimed to be sharp.
inline std::int64_t plane_bound(const ValidatedProfile& m) { return 2 * (m.b2_f2() + excess_budget(m)); }

inline std::int64_t plane_bound(const ManifoldProfile& p) { return plane_bound(validate_profile(p)); }

struct BudgetReport {
  std::int64_t d_of_m = 0;
  std::int64_t b_of_m = 0;
  std::int64_t b2_f2 = 0;

  friend bool operator==(const BudgetReport&, const BudgetReport&) = default;
};

inline BudgetReport budget_report(const ValidatedProfile& m) {
  return BudgetReport{excess_budget(m), plane_bound(m), m.b2_f2()};
}

}  // namespace excess_kit
