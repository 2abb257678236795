#pragma once

// Bit-packed vectors over the two-element field, the left-to-right echelon
// basis, and the constructive zero-sum subcollection.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excess_kit/error.hpp"

namespace excess_kit {

class Gf2Vector {
 public:
  static constexpr std::size_t kWordBits = 64;

  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t dim) : dim_(dim), words_((dim + kWordBits - 1) / kWordBits, 0) {}

  /// Parses a string of '0'/'1' characters; position i of the string is bit i.
  static Gf2Vector from_string(std::string_view bits) {
    Gf2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw Error(ErrorCode::ParseError,
                    "bit string contains '" + std::string(1, bits[i]) + "' at position " +
                        std::to_string(i + 1));
      }
    }
    return v;
  }

  static Gf2Vector unit(std::size_t dim, std::size_t i) {
    Gf2Vector v(dim);
    v.set(i);
    return v;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits)); }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t popcount() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::optional<std::size_t> lowest_set_bit() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
  }

  Gf2Vector& operator^=(const Gf2Vector& other) {
    if (other.dim_ != dim_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "cannot add vectors of dimension " + std::to_string(dim_) + " and " +
                      std::to_string(other.dim_));
    }
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend Gf2Vector operator^(Gf2Vector lhs, const Gf2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

  std::string to_string() const {
    std::string s(dim_, '0');
    for (std::size_t i = 0; i < dim_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ dim_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// An ordered list of vectors sharing one ambient dimension. Public indices are 1-based.
class Gf2Collection {
 public:
  explicit Gf2Collection(std::size_t dim = 0) : dim_(dim) {}

  Gf2Collection(std::size_t dim, std::vector<Gf2Vector> vectors) : dim_(dim), vectors_(std::move(vectors)) {
    for (std::size_t i = 0; i < vectors_.size(); ++i) check_dim(vectors_[i], i + 1);
  }

  static Gf2Collection from_strings(std::size_t dim, std::initializer_list<std::string_view> rows) {
    std::vector<Gf2Vector> vs;
    vs.reserve(rows.size());
    for (auto r : rows) vs.push_back(Gf2Vector::from_string(r));
    return Gf2Collection(dim, std::move(vs));
  }

  void push_back(Gf2Vector v) {
    check_dim(v, vectors_.size() + 1);
    vectors_.push_back(std::move(v));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool empty() const noexcept { return vectors_.empty(); }
  const std::vector<Gf2Vector>& vectors() const noexcept { return vectors_; }

  const Gf2Vector& at(std::size_t one_based) const {
    if (one_based == 0 || one_based > vectors_.size()) {
      throw Error(ErrorCode::NotABasis, "index " + std::to_string(one_based) + " is out of range 1.." +
                                            std::to_string(vectors_.size()));
    }
    return vectors_[one_based - 1];
  }

  Gf2Vector sum_of(std::span<const std::size_t> one_based) const {
    Gf2Vector acc(dim_);
    for (auto i : one_based) acc ^= at(i);
    return acc;
  }

  Gf2Vector total() const {
    Gf2Vector acc(dim_);
    for (const auto& v : vectors_) acc ^= v;
    return acc;
  }

 private:
  void check_dim(const Gf2Vector& v, std::size_t one_based) const {
    if (v.dim() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "vector " + std::to_string(one_based) + " has dimension " +
                                                    std::to_string(v.dim()) + ", expected " +
                                                    std::to_string(dim_));
    }
  }

  std::size_t dim_;
  std::vector<Gf2Vector> vectors_;
};

/// A set of 1-based indices, kept sorted ascending, whose vectors sum to zero.
struct SubsetCertificate {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  friend bool operator==(const SubsetCertificate&, const SubsetCertificate&) = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i != 0) s += ',';
      s += std::to_string(indices[i]);
    }
    return s + "}";
  }
};

/// Incremental row echelon form. Each stored row is reduced against all earlier
/// rows at insertion time, so one pass in insertion order clears every pivot.
/// When tracking is enabled, each row also records which inserted members it is
/// the sum of, which is what turns a reduction into a coordinate vector.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, std::size_t member_capacity, bool track = true)
      : dim_(dim), capacity_(track ? member_capacity : 0), track_(track) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  /// Adds v as a new member if it is independent of the current members.
  bool insert(const Gf2Vector& v) {
    auto [rem, combo] = reduce(v);
    auto pivot = rem.lowest_set_bit();
    if (!pivot) return false;
    if (track_) {
      if (rows_.size() >= capacity_) {
        throw Error(ErrorCode::NotABasis, "echelon member capacity exhausted");
      }
      combo.flip(rows_.size());
    }
    rows_.push_back(Row{std::move(rem), *pivot, std::move(combo)});
    return true;
  }

  /// Returns (remainder, combo). The remainder is zero iff v lies in the span,
  /// in which case v is the sum of the members flagged in combo.
  std::pair<Gf2Vector, Gf2Vector> reduce(Gf2Vector v) const {
    Gf2Vector combo(capacity_);
    for (const auto& row : rows_) {
      if (v.test(row.pivot)) {
        v ^= row.vec;
        if (track_) combo ^= row.combo;
      }
    }
    return {std::move(v), std::move(combo)};
  }

  std::size_t dim() const noexcept { return dim_; }

 private:
  struct Row {
    Gf2Vector vec;
    std::size_t pivot;
    Gf2Vector combo;
  };

  std::size_t dim_;
  std::size_t capacity_;
  bool track_;
  std::vector<Row> rows_;
};

inline std::size_t rank(const Gf2Collection& c) {
  EchelonBasis basis(c.dim(), 0, /*track=*/false);
  for (const auto& v : c.vectors()) {
    basis.insert(v);
    if (basis.rank() == c.dim()) break;
  }
  return basis.rank();
}

/// Left-to-right scan: keeps each vector that is independent of those already
/// kept. Returns 1-based indices in increasing order.
inline std::vector<std::size_t> greedy_basis(const Gf2Collection& c) {
  EchelonBasis basis(c.dim(), 0, /*track=*/false);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (basis.insert(c.vectors()[i])) kept.push_back(i + 1);
  }
  return kept;
}

namespace detail {

inline EchelonBasis build_basis(const Gf2Collection& c, std::span<const std::size_t> basis) {
  EchelonBasis echelon(c.dim(), basis.size());
  for (auto idx : basis) {
    if (!echelon.insert(c.at(idx))) {
      throw Error(ErrorCode::NotABasis, "vector " + std::to_string(idx) + " depends on earlier basis vectors");
    }
  }
  return echelon;
}

inline std::vector<std::size_t> coordinates_in(const EchelonBasis& echelon, std::span<const std::size_t> basis,
                                               const Gf2Vector& v) {
  if (v.dim() != echelon.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector has dimension " + std::to_string(v.dim()) +
                                                  ", expected " + std::to_string(echelon.dim()));
  }
  auto [rem, combo] = echelon.reduce(v);
  if (!rem.is_zero()) throw Error(ErrorCode::NotInSpan, "vector " + v.to_string() + " is outside the span");
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < basis.size(); ++p) {
    if (combo.test(p)) out.push_back(basis[p]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The unique subset of `basis` whose vectors sum to v, as sorted 1-based indices.
inline std::vector<std::size_t> coordinates(const Gf2Collection& c, std::span<const std::size_t> basis,
                                            const Gf2Vector& v) {
  auto echelon = detail::build_basis(c, basis);
  return detail::coordinates_in(echelon, basis, v);
}

/// Constructive zero-sum subcollection of size at least length - rank.
///
/// J is the complement of the greedy basis, y the sum over J, and I the basis
/// coordinates of y; the certificate is I ∪ J. The empty certificate is legal.
inline SubsetCertificate zero_sum_subcollection(const Gf2Collection& c) {
  auto basis = greedy_basis(c);
  auto echelon = detail::build_basis(c, basis);

  std::vector<std::size_t> complement;
  complement.reserve(c.size() - basis.size());
  Gf2Vector y(c.dim());
  std::size_t b = 0;
  for (std::size_t i = 1; i <= c.size(); ++i) {
    if (b < basis.size() && basis[b] == i) {
      ++b;
      continue;
    }
    complement.push_back(i);
    y ^= c.at(i);
  }

  auto in_basis = detail::coordinates_in(echelon, basis, y);
  SubsetCertificate cert;
  cert.indices.reserve(in_basis.size() + complement.size());
  std::merge(in_basis.begin(), in_basis.end(), complement.begin(), complement.end(),
             std::back_inserter(cert.indices));
  return cert;
}

}  // namespace excess_kit

template <>
struct std::hash<excess_kit::Gf2Vector> {
  std::size_t operator()(const excess_kit::Gf2Vector& v) const noexcept { return v.hash(); }
};
