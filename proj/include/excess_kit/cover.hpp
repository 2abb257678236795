#pragma once

// Invariants of the connected 2-fold cover N -> M branched along a connected
// surface F with [F] = 0 mod 2. The first and second mod-2 Betti numbers of N
// are known only from above, hence the *_upper names.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "excess_kit/error.hpp"
#include "excess_kit/manifold.hpp"
#include "excess_kit/surface.hpp"

namespace excess_kit {

struct CoverProfile {
  std::int64_t sigma_n = 0;
  std::int64_t chi_n = 0;
  std::int64_t b1_f2_upper = 0;
  std::int64_t b2_f2_upper = 0;
  std::int64_t ramification_euler = 0;  // e(A) = e(F) / 2

  friend bool operator==(const CoverProfile&, const CoverProfile&) = default;
};

inline void require_even_euler(std::int64_t e_f) {
  if (e_f % 2 != 0) {
    throw Error(ErrorCode::OddEulerNumber, "e(F) = " + std::to_string(e_f) + " is not twice the ramification Euler number");
  }
}

/// |sigma(N) - 2 sigma(M)| = |e(F)| / 2.
inline std::int64_t signature_defect(std::int64_t e_f) {
  require_even_euler(e_f);
  return std::llabs(e_f) / 2;
}

inline CoverProfile branched_double_cover(const ValidatedProfile& m, const TubedSurface& f) {
  if (!f.mod2_class.is_zero()) {
    throw Error(ErrorCode::NotModTwoNull, "[F] = " + f.mod2_class.to_string() + " is nonzero mod 2");
  }
  require_even_euler(f.euler_number);

  CoverProfile c;
  c.ramification_euler = f.euler_number / 2;
  c.sigma_n = 2 * m.signature() - c.ramification_euler;
  c.chi_n = 2 * m.euler_characteristic() - f.euler_characteristic;
  c.b1_f2_upper = 2 * m.b1_f2();
  // Poincaré duality over F2 for N, evaluated at the b1 bound.
  c.b2_f2_upper = c.chi_n - 2 + 2 * c.b1_f2_upper;
  if (c.b2_f2_upper != 2 * m.euler_characteristic() + f.genus - 4 + 4 * m.b1_f2()) {
    throw std::logic_error("branched cover: b2 bound disagrees with its closed form");
  }
  return c;
}

struct ConsistencyResult {
  bool consistent = true;
  std::string witness;  // the violated inequality, empty when consistent
};

/// |sigma(N)| <= b2(N; R) <= b2(N; F2) must hold for any closed oriented N. A
/// violation means no manifold with these invariants exists.
inline ConsistencyResult consistency_check(const CoverProfile& c) {
  const std::int64_t s = std::llabs(c.sigma_n);
  if (s <= c.b2_f2_upper) return {};
  return {false, "|sigma(N)| = " + std::to_string(s) + " > " + std::to_string(c.b2_f2_upper) + " = b2_f2_upper"};
}

}  // namespace excess_kit
