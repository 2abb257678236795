#pragma once

// Flat structured-text inputs.
//
//   vector list   one '0'/'1' string per line, all of one length
//   profile       name / signature / euler_characteristic / b1_f2, one
//                 `key = value` per line
//   catalog       one `[profile]` section per profile
//   family        `ambient = REF`, then one `[member]` section per surface
//                 with genus / euler_number / class
//
// '#' starts a comment, blank lines are ignored, and unknown, duplicate or
// missing fields are errors. Diagnostics name the file, line and field.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "excess_kit/error.hpp"
#include "excess_kit/gf2.hpp"
#include "excess_kit/manifold.hpp"
#include "excess_kit/surface.hpp"

namespace excess_kit {

/// Values beyond this magnitude are rejected so all downstream sums stay exact.
inline constexpr std::int64_t kMaxInputMagnitude = std::int64_t{1} << 40;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

[[noreturn]] inline void parse_fail(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

struct Field {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string header;  // empty for the top-level block
  std::size_t line = 0;
  std::map<std::string, Field> fields;
};

inline std::vector<Section> read_sections(std::istream& in, std::string_view source) {
  std::vector<Section> sections{Section{"", 1, {}}};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(source, line_no, "unterminated section header '" + std::string(line) + "'");
      sections.push_back(Section{std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) parse_fail(source, line_no, "missing field name");
    auto [it, inserted] = sections.back().fields.try_emplace(key, Field{value, line_no});
    if (!inserted) {
      parse_fail(source, line_no, "field '" + key + "' repeats line " + std::to_string(it->second.line));
    }
  }
  return sections;
}

class FieldReader {
 public:
  FieldReader(const Section& section, std::string_view source) : section_(section), source_(source) {}

  void allow_only(std::initializer_list<std::string_view> names) const {
    for (const auto& [key, field] : section_.fields) {
      bool known = false;
      for (auto n : names) known |= key == n;
      if (!known) parse_fail(source_, field.line, "unknown field '" + key + "'");
    }
  }

  const Field& require(const std::string& key) const {
    auto it = section_.fields.find(key);
    if (it == section_.fields.end()) {
      parse_fail(source_, section_.line, "missing field '" + key + "'" +
                                             (section_.header.empty() ? "" : " in [" + section_.header + "]"));
    }
    return it->second;
  }

  std::string string(const std::string& key) const {
    const auto& f = require(key);
    if (f.value.empty()) parse_fail(source_, f.line, "field '" + key + "' is empty");
    return f.value;
  }

  std::int64_t integer(const std::string& key) const {
    const auto& f = require(key);
    std::int64_t v = 0;
    const char* first = f.value.data();
    const char* last = first + f.value.size();
    if (!f.value.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || f.value.empty()) {
      parse_fail(source_, f.line, "field '" + key + "': expected an integer, got '" + f.value + "'");
    }
    if (v > kMaxInputMagnitude || v < -kMaxInputMagnitude) {
      parse_fail(source_, f.line, "field '" + key + "': magnitude exceeds 2^40");
    }
    return v;
  }

  std::int64_t nonnegative(const std::string& key) const {
    auto v = integer(key);
    if (v < 0) parse_fail(source_, require(key).line, "field '" + key + "': expected a nonnegative integer");
    return v;
  }

  std::int64_t positive(const std::string& key) const {
    auto v = integer(key);
    if (v < 1) parse_fail(source_, require(key).line, "field '" + key + "': expected a positive integer");
    return v;
  }

  Gf2Vector bits(const std::string& key, std::size_t expected_dim) const {
    const auto& f = require(key);
    if (f.value.size() != expected_dim) {
      parse_fail(source_, f.line, "field '" + key + "': expected " + std::to_string(expected_dim) +
                                      " bits (b2_f2 of the ambient), got " + std::to_string(f.value.size()));
    }
    try {
      return Gf2Vector::from_string(f.value);
    } catch (const Error& e) {
      parse_fail(source_, f.line, "field '" + key + "': " + e.what());
    }
  }

  std::size_t line_of(const std::string& key) const { return require(key).line; }

 private:
  const Section& section_;
  std::string_view source_;
};

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  return in;
}

inline ManifoldProfile read_profile_fields(const Section& s, std::string_view source) {
  FieldReader r(s, source);
  r.allow_only({"name", "signature", "euler_characteristic", "b1_f2"});
  ManifoldProfile p;
  p.name = r.string("name");
  p.signature = r.integer("signature");
  p.euler_characteristic = r.integer("euler_characteristic");
  p.b1_f2 = r.nonnegative("b1_f2");
  return p;
}

inline ValidatedProfile validate_at(const ManifoldProfile& p, std::string_view source, std::size_t line) {
  try {
    return validate_profile(p);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source) + ":" + std::to_string(line) + ": profile '" + p.name + "': " + e.what());
  }
}

}  // namespace detail

inline Gf2Collection parse_vector_list(std::istream& in, std::string_view source = "<input>") {
  std::optional<std::size_t> dim;
  std::vector<Gf2Vector> vectors;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (dim && line.size() != *dim) {
      detail::parse_fail(source, line_no, "vector has length " + std::to_string(line.size()) + ", expected " +
                                              std::to_string(*dim));
    }
    dim = line.size();
    try {
      vectors.push_back(Gf2Vector::from_string(line));
    } catch (const Error& e) {
      detail::parse_fail(source, line_no, e.what());
    }
  }
  return Gf2Collection(dim.value_or(0), std::move(vectors));
}

inline Gf2Collection load_vector_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_vector_list(in, path.string());
}

inline ValidatedProfile parse_profile(std::istream& in, std::string_view source = "<input>") {
  auto sections = detail::read_sections(in, source);
  if (sections.size() != 1) {
    detail::parse_fail(source, sections[1].line, "a profile file has no sections; use a catalog for several profiles");
  }
  auto p = detail::read_profile_fields(sections[0], source);
  return detail::validate_at(p, source, detail::FieldReader(sections[0], source).line_of("name"));
}

inline ValidatedProfile load_profile(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_profile(in, path.string());
}

inline std::vector<ValidatedProfile> parse_catalog(std::istream& in, std::string_view source = "<input>") {
  auto sections = detail::read_sections(in, source);
  if (!sections[0].fields.empty()) {
    detail::parse_fail(source, sections[0].fields.begin()->second.line, "catalog fields must sit inside [profile]");
  }
  std::vector<ValidatedProfile> out;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    if (sections[i].header != "profile") {
      detail::parse_fail(source, sections[i].line, "unknown section [" + sections[i].header + "]");
    }
    auto p = detail::read_profile_fields(sections[i], source);
    for (const auto& existing : out) {
      if (existing.name() == p.name) detail::parse_fail(source, sections[i].line, "duplicate profile '" + p.name + "'");
    }
    out.push_back(detail::validate_at(p, source, sections[i].line));
  }
  return out;
}

inline std::vector<ValidatedProfile> load_catalog(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_catalog(in, path.string());
}

/// Resolves a profile reference: a catalog name first, otherwise a file path.
class ProfileResolver {
 public:
  ProfileResolver() = default;

  void add(ValidatedProfile p) {
    for (const auto& e : entries_) {
      if (e.name() == p.name()) {
        if (e == p) return;
        throw Error(ErrorCode::ParseError, "catalog entries named '" + p.name() + "' disagree");
      }
    }
    entries_.push_back(std::move(p));
  }

  void add_catalog(const std::filesystem::path& path) {
    for (auto& p : load_catalog(path)) add(std::move(p));
  }

  const std::vector<ValidatedProfile>& entries() const noexcept { return entries_; }

  const ValidatedProfile* find(std::string_view name) const {
    for (const auto& e : entries_) {
      if (e.name() == name) return &e;
    }
    return nullptr;
  }

  ValidatedProfile resolve(const std::string& ref, const std::filesystem::path& base_dir = {}) const {
    if (const auto* p = find(ref)) return *p;
    std::filesystem::path path(ref);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    if (std::filesystem::is_regular_file(path)) return load_profile(path);
    throw Error(ErrorCode::UnknownProfile, "'" + ref + "' is neither a catalog name nor a readable profile file");
  }

 private:
  std::vector<ValidatedProfile> entries_;
};

struct LoadedFamily {
  ValidatedProfile ambient;
  SurfaceFamily family;
};

inline LoadedFamily parse_family(std::istream& in, const ProfileResolver& resolver, std::string_view source = "<input>",
                                 const std::filesystem::path& base_dir = {}) {
  auto sections = detail::read_sections(in, source);
  detail::FieldReader top(sections[0], source);
  top.allow_only({"ambient"});
  auto ambient_ref = top.string("ambient");
  ValidatedProfile ambient = [&] {
    try {
      return resolver.resolve(ambient_ref, base_dir);
    } catch (const Error& e) {
      detail::parse_fail(source, top.line_of("ambient"), "field 'ambient': " + std::string(e.what()));
    }
  }();
  const auto dim = static_cast<std::size_t>(ambient.b2_f2());

  std::vector<SurfaceDatum> members;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const auto& s = sections[i];
    if (s.header != "member") detail::parse_fail(source, s.line, "unknown section [" + s.header + "]");
    detail::FieldReader r(s, source);
    r.allow_only({"genus", "euler_number", "class"});
    SurfaceDatum d;
    d.genus = r.positive("genus");
    d.euler_number = r.integer("euler_number");
    d.mod2_class = r.bits("class", dim);
    members.push_back(std::move(d));
  }
  if (members.empty()) detail::parse_fail(source, sections[0].line, "family has no [member] sections");
  return LoadedFamily{std::move(ambient), SurfaceFamily(dim, std::move(members))};
}

inline LoadedFamily load_family(const std::filesystem::path& path, const ProfileResolver& resolver) {
  auto in = detail::open_input(path);
  return parse_family(in, resolver, path.string(), path.parent_path());
}

}  // namespace excess_kit
