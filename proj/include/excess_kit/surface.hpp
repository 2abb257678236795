#pragma once

// Nonorientable surface data, the tubing calculus, sign classes and the
// admissible normal Euler numbers of surfaces in the 4-sphere.
//
// Disjointness and local flatness of a family are declarations made by the
// caller. Only their arithmetic consequences are checked here.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excess_kit/error.hpp"
#include "excess_kit/gf2.hpp"

namespace excess_kit {

struct SurfaceDatum {
  std::int64_t genus = 1;  // nonorientable genus, >= 1
  std::int64_t euler_number = 0;
  Gf2Vector mod2_class;

  std::int64_t euler_characteristic() const noexcept { return 2 - genus; }

  friend bool operator==(const SurfaceDatum&, const SurfaceDatum&) = default;
};

inline void require_genus(std::int64_t g) {
  if (g < 1) throw Error(ErrorCode::InvalidGenus, "nonorientable genus must be >= 1, got " + std::to_string(g));
}

class SurfaceFamily {
 public:
  SurfaceFamily(std::size_t ambient_dim, std::vector<SurfaceDatum> members)
      : ambient_dim_(ambient_dim), members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::EmptyFamily, "a surface family needs at least one member");
    for (std::size_t i = 0; i < members_.size(); ++i) {
      require_genus(members_[i].genus);
      if (members_[i].mod2_class.dim() != ambient_dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "member " + std::to_string(i + 1) + " has a class of dimension " +
                        std::to_string(members_[i].mod2_class.dim()) + ", ambient b2_f2 is " +
                        std::to_string(ambient_dim_));
      }
    }
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<SurfaceDatum>& members() const noexcept { return members_; }
  const SurfaceDatum& operator[](std::size_t i) const { return members_[i]; }

  /// Members at the given 1-based positions, in order.
  SurfaceFamily subfamily(const std::vector<std::size_t>& one_based) const {
    std::vector<SurfaceDatum> picked;
    picked.reserve(one_based.size());
    for (auto i : one_based) picked.push_back(members_.at(i - 1));
    return SurfaceFamily(ambient_dim_, std::move(picked));
  }

  Gf2Collection classes() const {
    Gf2Collection c(ambient_dim_);
    for (const auto& m : members_) c.push_back(m.mod2_class);
    return c;
  }

  friend bool operator==(const SurfaceFamily&, const SurfaceFamily&) = default;

 private:
  std::size_t ambient_dim_;
  std::vector<SurfaceDatum> members_;
};

/// Ambient connected sum of a family along a tree of r - 1 arcs.
struct TubedSurface {
  std::int64_t genus = 1;
  std::int64_t euler_number = 0;
  std::int64_t euler_characteristic = 1;
  Gf2Vector mod2_class;

  friend bool operator==(const TubedSurface&, const TubedSurface&) = default;
};

/// Genus, Euler number and class add; each of the r - 1 tubes lowers the
/// Euler characteristic by 2, which must agree with chi = 2 - g.
inline TubedSurface tube(const SurfaceFamily& f) {
  TubedSurface t{0, 0, 0, Gf2Vector(f.ambient_dim())};
  for (const auto& m : f.members()) {
    t.genus += m.genus;
    t.euler_number += m.euler_number;
    t.euler_characteristic += m.euler_characteristic();
    t.mod2_class ^= m.mod2_class;
  }
  t.euler_characteristic -= 2 * (static_cast<std::int64_t>(f.size()) - 1);
  if (t.euler_characteristic != 2 - t.genus) {
    throw std::logic_error("tubing: Euler characteristic formulas disagree");
  }
  return t;
}

/// Single tube between two already-tubed surfaces; tube(f) equals any
/// bracketing of these.
inline TubedSurface tube(const TubedSurface& a, const TubedSurface& b) {
  TubedSurface t{a.genus + b.genus, a.euler_number + b.euler_number,
                 a.euler_characteristic + b.euler_characteristic - 2, a.mod2_class ^ b.mod2_class};
  if (t.euler_characteristic != 2 - t.genus) {
    throw std::logic_error("tubing: Euler characteristic formulas disagree");
  }
  return t;
}

inline TubedSurface as_tubed(const SurfaceDatum& s) {
  return TubedSurface{s.genus, s.euler_number, s.euler_characteristic(), s.mod2_class};
}

enum class SignClass { NonNegative, NonPositive, Mixed };

constexpr std::string_view to_string(SignClass s) {
  switch (s) {
    case SignClass::NonNegative: return "NonNegative";
    case SignClass::NonPositive: return "NonPositive";
    case SignClass::Mixed: return "Mixed";
  }
  return "Unknown";
}

/// All-zero lists count as NonNegative.
inline SignClass sign_class(const SurfaceFamily& f) {
  bool any_positive = false;
  bool any_negative = false;
  for (const auto& m : f.members()) {
    any_positive |= m.euler_number > 0;
    any_negative |= m.euler_number < 0;
  }
  if (any_positive && any_negative) return SignClass::Mixed;
  return any_negative ? SignClass::NonPositive : SignClass::NonNegative;
}

inline std::int64_t sum_abs_euler(const SurfaceFamily& f) {
  std::int64_t s = 0;
  for (const auto& m : f.members()) s += std::llabs(m.euler_number);
  return s;
}

/// {-2g, -2g + 4, ..., 2g}, increasing.
inline std::vector<std::int64_t> massey_admissible_set(std::int64_t g) {
  require_genus(g);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(g + 1));
  for (std::int64_t e = -2 * g; e <= 2 * g; e += 4) out.push_back(e);
  return out;
}

inline bool massey_check(std::int64_t g, std::int64_t e) {
  require_genus(g);
  return std::llabs(e) <= 2 * g && (e + 2 * g) % 4 == 0;
}

/// Zero section of an orientable-total-space plane bundle over a nonorientable
/// base: its twisted normal Euler number is the bundle's twisted Euler number.
inline SurfaceDatum bundle_to_surface(std::int64_t g, std::int64_t twisted_euler, Gf2Vector mod2_class) {
  require_genus(g);
  return SurfaceDatum{g, twisted_euler, std::move(mod2_class)};
}

}  // namespace excess_kit
