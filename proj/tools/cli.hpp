#pragma once

// Command-line front end. Exit codes: 0 bound satisfied / success,
// 1 obstructed, 2 hypothesis failure, usage error or input error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "excess_kit/excess_kit.hpp"

#ifndef EXCESS_KIT_DEFAULT_CATALOG
#define EXCESS_KIT_DEFAULT_CATALOG "data/catalog.txt"
#endif

namespace excess_kit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitObstructed = 1;
inline constexpr int kExitFailure = 2;

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::BoundSatisfied: return kExitOk;
    case Verdict::Obstructed: return kExitObstructed;
    case Verdict::HypothesisFailure: return kExitFailure;
  }
  return kExitFailure;
}

/// Built-in catalog plus the optional file named by EXCESS_KIT_CATALOG.
inline ProfileResolver make_resolver() {
  ProfileResolver resolver;
  resolver.add_catalog(EXCESS_KIT_DEFAULT_CATALOG);
  if (const char* extra = std::getenv("EXCESS_KIT_CATALOG"); extra != nullptr && *extra != '\0') {
    resolver.add_catalog(extra);
  }
  return resolver;
}

struct Options {
  std::string format = "text";
  std::string manifold;
  std::string family;
  std::string planes;
  std::string vectors;
  std::string name;
  std::string class_bits;
  std::optional<std::int64_t> genus;
  std::int64_t euler = 0;
  std::int64_t max_genus = 64;
  std::int64_t max_euler = 200;
  std::uint64_t effort = 0;
  unsigned threads = 1;
  bool exact = false;
};

namespace detail {

inline void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

inline bool json(const Options& o) { return o.format == "json"; }

inline LoadedFamily load_checked_family(const ProfileResolver& resolver, const std::string& path,
                                        const ValidatedProfile& manifold) {
  auto loaded = load_family(path, resolver);
  if (!(loaded.ambient == manifold)) {
    throw Error(ErrorCode::ParseError, path + ": field 'ambient' names profile '" + loaded.ambient.name() +
                                           "', which differs from --manifold '" + manifold.name() + "'");
  }
  return loaded;
}

inline int print_sweep(std::ostream& out, const ValidatedProfile& m, const std::vector<SweepEntry>& entries,
                       const Options& o) {
  Json rows = Json::array();
  std::size_t row = static_cast<std::size_t>(2 * o.max_euler + 1);
  for (std::size_t start = 0; start < entries.size(); start += row) {
    std::int64_t g = entries[start].genus;
    std::int64_t sat = 0;
    std::int64_t obs = 0;
    std::optional<std::int64_t> lo;
    std::optional<std::int64_t> hi;
    for (std::size_t i = start; i < start + row; ++i) {
      if (entries[i].verdict == Verdict::BoundSatisfied) {
        ++sat;
        if (!lo) lo = entries[i].euler_number;
        hi = entries[i].euler_number;
      } else {
        ++obs;
      }
    }
    if (json(o)) {
      rows.push_back(Json{{"genus", g},
                          {"satisfied", sat},
                          {"obstructed", obs},
                          {"satisfied_min", lo ? Json(*lo) : Json(nullptr)},
                          {"satisfied_max", hi ? Json(*hi) : Json(nullptr)}});
    } else {
      out << "g=" << g << ": BoundSatisfied " << sat;
      if (lo) out << " (e in [" << *lo << ", " << *hi << "])";
      out << ", Obstructed " << obs << '\n';
    }
  }
  if (json(o)) {
    out << dump_json(Json{{"manifold", m.name()}, {"max_genus", o.max_genus}, {"max_euler", o.max_euler}, {"rows", rows}});
  }
  return kExitOk;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal-Euler excess bounds for disjoint nonorientable surfaces in closed oriented 4-manifolds",
               "excess-kit"};
  app.require_subcommand(1);
  Options o;

  auto* catalog = app.add_subcommand("catalog", "List or show built-in and user catalog profiles");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List every catalog profile");
  auto* catalog_show = catalog->add_subcommand("show", "Show one catalog profile");
  catalog_show->add_option("name", o.name, "Profile name")->required();
  detail::add_format(catalog_list, o);
  detail::add_format(catalog_show, o);

  auto* bound = app.add_subcommand("bound", "Print b2_f2, D(M) and B(M) for a profile");
  bound->add_option("--manifold", o.manifold, "Catalog name or profile file")->required();
  detail::add_format(bound, o);

  auto* check = app.add_subcommand("check", "Evaluate the excess bound on a surface family");
  check->add_option("--manifold", o.manifold, "Catalog name or profile file")->required();
  check->add_option("--family", o.family, "Family file")->required()->check(CLI::ExistingFile);
  detail::add_format(check, o);

  auto* audit = app.add_subcommand("audit", "Run the projective-plane count pipeline");
  audit->add_option("--manifold", o.manifold, "Catalog name or profile file")->required();
  audit->add_option("--planes", o.planes, "Family file of genus-1 surfaces with |e| > 2")
      ->required()
      ->check(CLI::ExistingFile);
  audit->add_flag("--exact", o.exact, "Also use the exact maximum zero-sum subset (extension)");
  audit->add_option("--effort", o.effort, "Effort limit for the exact search (0 = automatic)");
  audit->add_option("--threads", o.threads, "Worker threads for the exact search")->check(CLI::PositiveNumber);
  detail::add_format(audit, o);

  auto* tube_cmd = app.add_subcommand("tube", "Print the ambient connected sum of a family");
  tube_cmd->add_option("--family", o.family, "Family file")->required()->check(CLI::ExistingFile);
  detail::add_format(tube_cmd, o);

  auto* cover = app.add_subcommand("cover", "Print the 2-fold branched cover invariants");
  cover->add_option("--manifold", o.manifold, "Catalog name or profile file")->required();
  cover->add_option("--genus", o.genus, "Nonorientable genus of the branch surface")->required();
  cover->add_option("--euler", o.euler, "Normal Euler number of the branch surface")->required();
  cover->add_option("--class", o.class_bits, "Mod-2 class as a bit string (default: zero)");
  detail::add_format(cover, o);

  auto* zerosum = app.add_subcommand("zerosum", "Print a zero-sum subcollection certificate");
  zerosum->add_option("--vectors", o.vectors, "Vector list file")->required()->check(CLI::ExistingFile);
  zerosum->add_flag("--exact", o.exact, "Exact maximum-cardinality subset");
  zerosum->add_option("--effort", o.effort, "Effort limit for the exact search (0 = automatic)");
  zerosum->add_option("--threads", o.threads, "Worker threads for the exact search")->check(CLI::PositiveNumber);
  detail::add_format(zerosum, o);

  auto* massey = app.add_subcommand("massey", "Print the admissible normal Euler numbers in S4");
  massey->add_option("--genus", o.genus, "Nonorientable genus")->required();
  detail::add_format(massey, o);

  auto* sweep = app.add_subcommand("sweep", "Single-surface excess check over a (genus, euler) grid");
  sweep->add_option("--manifold", o.manifold, "Catalog name or profile file")->required();
  sweep->add_option("--max-genus", o.max_genus, "Largest genus")->capture_default_str();
  sweep->add_option("--max-euler", o.max_euler, "Largest |e|")->capture_default_str();
  sweep->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  detail::add_format(sweep, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    if (*massey) {
      auto set = massey_admissible_set(*o.genus);
      if (detail::json(o)) {
        out << dump_json(Json{{"genus", *o.genus}, {"admissible", set}});
      } else {
        for (std::size_t i = 0; i < set.size(); ++i) out << (i ? " " : "") << set[i];
        out << '\n';
      }
      return kExitOk;
    }

    if (*zerosum) {
      auto c = load_vector_list(o.vectors);
      Json j;
      SubsetCertificate cert;
      if (o.exact) {
        auto search = max_zero_sum_search(c, ZeroSumOptions{o.effort, o.threads, SearchStrategy::Automatic});
        cert = search.certificate;
        j = Json{{"method", "exact"}, {"strategy", std::string(to_string(search.strategy))}, {"effort", search.effort}};
      } else {
        cert = zero_sum_subcollection(c);
        j = Json{{"method", "constructive"}};
      }
      if (detail::json(o)) {
        j["certificate"] = to_json(cert);
        j["length"] = c.size();
        j["rank"] = rank(c);
        out << dump_json(j);
      } else {
        out << cert.to_string() << '\n';
      }
      return kExitOk;
    }

    const ProfileResolver resolver = make_resolver();

    if (*catalog) {
      if (*catalog_list) {
        Json arr = Json::array();
        for (const auto& p : resolver.entries()) {
          if (detail::json(o)) {
            auto j = to_json(p);
            j["budget"] = to_json(budget_report(p));
            arr.push_back(j);
          } else {
            write_text(out, p);
          }
        }
        if (detail::json(o)) out << dump_json(arr);
        return kExitOk;
      }
      const auto* p = resolver.find(o.name);
      if (p == nullptr) throw Error(ErrorCode::UnknownProfile, "no catalog profile named '" + o.name + "'");
      if (detail::json(o)) {
        auto j = to_json(*p);
        j["budget"] = to_json(budget_report(*p));
        out << dump_json(j);
      } else {
        write_text(out, *p);
      }
      return kExitOk;
    }

    if (*tube_cmd) {
      auto loaded = load_family(o.family, resolver);
      auto t = tube(loaded.family);
      if (detail::json(o)) {
        out << dump_json(to_json(t));
      } else {
        write_text(out, t);
      }
      return kExitOk;
    }

    const ValidatedProfile manifold = resolver.resolve(o.manifold, std::filesystem::current_path());

    if (*bound) {
      auto b = budget_report(manifold);
      if (detail::json(o)) {
        auto j = to_json(b);
        j["manifold"] = manifold.name();
        out << dump_json(j);
      } else {
        out << "manifold " << manifold.name() << '\n';
        write_text(out, b);
      }
      return kExitOk;
    }

    if (*check) {
      auto loaded = detail::load_checked_family(resolver, o.family, manifold);
      auto report = excess_check(manifold, loaded.family);
      if (detail::json(o)) {
        out << dump_json(to_json(report));
      } else {
        write_text(out, report);
      }
      return exit_code(report.verdict);
    }

    if (*audit) {
      auto loaded = detail::load_checked_family(resolver, o.planes, manifold);
      auto report = plane_family_audit(manifold, loaded.family, AuditOptions{o.exact, o.effort, o.threads});
      if (detail::json(o)) {
        out << dump_json(to_json(report));
      } else {
        write_text(out, report);
      }
      return exit_code(report.verdict);
    }

    if (*cover) {
      const auto dim = static_cast<std::size_t>(manifold.b2_f2());
      Gf2Vector cls(dim);
      if (!o.class_bits.empty()) {
        cls = Gf2Vector::from_string(o.class_bits);
        if (cls.dim() != dim) {
          throw Error(ErrorCode::DimensionMismatch, "--class has " + std::to_string(cls.dim()) +
                                                        " bits, b2_f2 is " + std::to_string(dim));
        }
      }
      require_genus(*o.genus);
      TubedSurface f{*o.genus, o.euler, 2 - *o.genus, cls};
      auto c = branched_double_cover(manifold, f);
      auto consistency = consistency_check(c);
      if (detail::json(o)) {
        auto j = to_json(c);
        j["consistent"] = consistency.consistent;
        j["witness"] = consistency.witness;
        out << dump_json(j);
      } else {
        write_text(out, c);
        if (consistency.consistent) {
          out << "consistent: |sigma(N)| <= b2(N;F2) bound\n";
        } else {
          out << "inconsistent: " << consistency.witness << " (no closed oriented 4-manifold has these invariants)\n";
        }
      }
      return consistency.consistent ? kExitOk : kExitObstructed;
    }

    if (*sweep) {
      auto entries = single_surface_sweep(manifold, o.max_genus, o.max_euler, o.threads);
      return detail::print_sweep(out, manifold, entries, o);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace excess_kit::cli
