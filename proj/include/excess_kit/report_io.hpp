#pragma once

// Text and JSON renderings of reports. JSON documents contain only integers,
// strings, booleans, arrays and objects with sorted keys, so parsing and
// re-serializing an emitted document reproduces it byte for byte.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "excess_kit/cover.hpp"
#include "excess_kit/gf2.hpp"
#include "excess_kit/manifold.hpp"
#include "excess_kit/obstruction.hpp"
#include "excess_kit/surface.hpp"

namespace excess_kit {

using Json = nlohmann::json;

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json to_json(const ProofStep& s) {
  return Json{{"label", s.label}, {"lhs", s.lhs}, {"rel", std::string(to_string(s.rel))}, {"rhs", s.rhs},
              {"anchor", s.anchor}};
}

inline Json to_json(const ProofTrace& t) {
  Json arr = Json::array();
  for (const auto& s : t.steps()) arr.push_back(to_json(s));
  return arr;
}

inline Json to_json(const ObstructionReport& r) {
  return Json{{"verdict", std::string(to_string(r.verdict))},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"trace", to_json(r.trace)},
              {"assumptions", r.assumptions},
              {"notes", r.notes}};
}

/// Replays the steps of a serialized trace; true iff every recorded relation
/// holds for its recorded values.
inline bool replay_trace(const Json& arr) {
  for (const auto& s : arr) {
    auto rel = parse_relation(s.at("rel").get<std::string>());
    if (!rel || !holds(s.at("lhs").get<std::int64_t>(), *rel, s.at("rhs").get<std::int64_t>())) return false;
  }
  return true;
}

inline Json to_json(const ZeroSumStage& s) {
  return Json{{"subfamily", s.subfamily}, {"size", s.subfamily.size()}, {"report", to_json(s.report)}};
}

inline Json to_json(const AuditReport& a) {
  Json j{{"verdict", std::string(to_string(a.verdict))},
         {"plane_count", a.plane_count},
         {"k", a.k},
         {"d_of_m", a.d_of_m},
         {"b_of_m", a.b_of_m},
         {"majority_sign", std::string(to_string(a.majority_sign))},
         {"majority", a.majority},
         {"trace", to_json(a.trace)},
         {"assumptions", a.assumptions},
         {"notes", a.notes}};
  j["constructive"] = a.constructive ? to_json(*a.constructive) : Json(nullptr);
  j["exact"] = a.exact ? to_json(*a.exact) : Json(nullptr);
  return j;
}

inline Json to_json(const ValidatedProfile& p) {
  return Json{{"name", p.name()},
              {"signature", p.signature()},
              {"euler_characteristic", p.euler_characteristic()},
              {"b1_f2", p.b1_f2()},
              {"b2_f2", p.b2_f2()}};
}

inline Json to_json(const BudgetReport& b) {
  return Json{{"d_of_m", b.d_of_m}, {"b_of_m", b.b_of_m}, {"b2_f2", b.b2_f2}};
}

inline Json to_json(const TubedSurface& t) {
  return Json{{"genus", t.genus},
              {"euler_number", t.euler_number},
              {"euler_characteristic", t.euler_characteristic},
              {"class", t.mod2_class.to_string()}};
}

inline Json to_json(const CoverProfile& c) {
  return Json{{"sigma_n", c.sigma_n},
              {"chi_n", c.chi_n},
              {"b1_f2_upper", c.b1_f2_upper},
              {"b2_f2_upper", c.b2_f2_upper},
              {"ramification_euler", c.ramification_euler}};
}

inline Json to_json(const SubsetCertificate& c) { return Json{{"indices", c.indices}, {"size", c.size()}}; }

// Text.

inline void write_trace(std::ostream& out, const ProofTrace& t, const std::string& indent = "  ") {
  std::size_t n = 0;
  for (const auto& s : t.steps()) {
    out << indent << ++n << ". " << s.label << ": " << s.lhs << ' ' << to_string(s.rel) << ' ' << s.rhs << "  ["
        << s.anchor << "]\n";
  }
}

inline void write_lines(std::ostream& out, const char* title, const std::vector<std::string>& lines) {
  if (lines.empty()) return;
  out << title << ":\n";
  for (const auto& l : lines) out << "  - " << l << '\n';
}

inline void write_text(std::ostream& out, const ObstructionReport& r) {
  out << "verdict: " << to_string(r.verdict) << '\n';
  out << "excess sum(|e_i| - 2 g_i) = " << r.lhs << ", budget D(M) = " << r.rhs << '\n';
  out << "trace:\n";
  write_trace(out, r.trace);
  write_lines(out, "assumptions", r.assumptions);
  write_lines(out, "notes", r.notes);
}

inline void write_text(std::ostream& out, const AuditReport& a) {
  out << "verdict: " << to_string(a.verdict) << '\n';
  out << "planes m = " << a.plane_count << ", k = b2_f2 = " << a.k << ", D(M) = " << a.d_of_m
      << ", B(M) = " << a.b_of_m << '\n';
  out << "majority sign " << to_string(a.majority_sign) << ", s = " << a.majority.size() << '\n';
  auto stage = [&](const char* name, const ZeroSumStage& s) {
    out << name << " zero-sum subfamily (n = " << s.subfamily.size() << "): {";
    for (std::size_t i = 0; i < s.subfamily.size(); ++i) out << (i ? "," : "") << s.subfamily[i];
    out << "}, excess " << s.report.lhs << ", verdict " << to_string(s.report.verdict) << '\n';
  };
  if (a.constructive) stage("constructive", *a.constructive);
  if (a.exact) stage("exact (extension)", *a.exact);
  out << "trace:\n";
  write_trace(out, a.trace);
  write_lines(out, "assumptions", a.assumptions);
  write_lines(out, "notes", a.notes);
}

inline void write_text(std::ostream& out, const ValidatedProfile& p) {
  auto b = budget_report(p);
  out << p.name() << ": signature " << p.signature() << ", euler_characteristic " << p.euler_characteristic()
      << ", b1_f2 " << p.b1_f2() << ", b2_f2 " << p.b2_f2() << ", D(M) " << b.d_of_m << ", B(M) " << b.b_of_m << '\n';
}

inline void write_text(std::ostream& out, const BudgetReport& b) {
  out << "b2_f2 = " << b.b2_f2 << "\nD(M) = " << b.d_of_m << " (upper bound on the normal-Euler excess)\nB(M) = "
      << b.b_of_m << " (upper bound on disjoint projective planes with |e| > 2)\n";
}

inline void write_text(std::ostream& out, const TubedSurface& t) {
  out << "genus " << t.genus << "\neuler_number " << t.euler_number << "\neuler_characteristic "
      << t.euler_characteristic << "\nclass " << t.mod2_class.to_string() << '\n';
}

inline void write_text(std::ostream& out, const CoverProfile& c) {
  out << "sigma(N) = " << c.sigma_n << "\nchi(N) = " << c.chi_n << "\ne(A) = " << c.ramification_euler
      << "\nb1(N;F2) <= " << c.b1_f2_upper << "\nb2(N;F2) <= " << c.b2_f2_upper << '\n';
}

template <typename T>
std::string to_text(const T& value) {
  std::ostringstream os;
  write_text(os, value);
  return os.str();
}

}  // namespace excess_kit
