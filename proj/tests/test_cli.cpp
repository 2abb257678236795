#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace excess_kit::cli {
namespace {

const std::filesystem::path kSamples = EXCESS_KIT_SAMPLES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return (kSamples / name).string(); }

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "excess_kit_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

TEST(Cli, MasseyGenusTwo) {
  auto r = invoke({"massey", "--genus", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-4 0 4\n");
}

TEST(Cli, CheckKleinBottleIsObstructed) {
  auto r = invoke({"check", "--manifold", "s4", "--family", sample("one_klein_e8.family")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verdict: Obstructed"), std::string::npos);
}

TEST(Cli, CheckVeroneseIsWithinBound) {
  auto r = invoke({"check", "--manifold", "s4", "--family", sample("veronese.family")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("BoundSatisfied"), std::string::npos);
}

TEST(Cli, CheckMixedSignsExitsTwo) {
  auto r = invoke({"check", "--manifold", "s4", "--family", sample("mixed_signs.family"), "--format", "json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out).at("verdict"), "HypothesisFailure");
}

TEST(Cli, ZerosumThreeVectors) {
  auto r = invoke({"zerosum", "--vectors", sample("three_vecs.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{1,2,3}\n");
  auto exact = invoke({"zerosum", "--vectors", sample("three_vecs.txt"), "--exact"});
  EXPECT_EQ(exact.out, "{1,2,3}\n");
}

TEST(Cli, ZerosumEffortLimitFallsBackWithExitTwo) {
  std::mt19937 rng(12);
  std::string rows;
  for (int i = 0; i < 40; ++i) {
    for (int b = 0; b < 12; ++b) rows += (rng() & 1U) ? '1' : '0';
    rows += '\n';
  }
  auto path = scratch("many.txt", rows);
  auto r = invoke({"zerosum", "--vectors", path.string(), "--exact", "--effort", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_NE(r.err.find("constructive certificate {"), std::string::npos) << r.err;
}

TEST(Cli, JsonAndTextAgreeOnCheck) {
  for (const char* fam : {"one_klein_e8.family", "veronese.family", "mixed_signs.family"}) {
    auto text = invoke({"check", "--manifold", "s4", "--family", sample(fam)});
    auto json = invoke({"check", "--manifold", "s4", "--family", sample(fam), "--format", "json"});
    EXPECT_EQ(text.code, json.code) << fam;
    auto doc = Json::parse(json.out);
    EXPECT_NE(text.out.find("verdict: " + doc.at("verdict").get<std::string>()), std::string::npos) << fam;
    std::size_t n = 0;
    for (const auto& step : doc.at("trace")) {
      std::ostringstream line;
      line << ++n << ". " << step.at("label").get<std::string>() << ": " << step.at("lhs").get<std::int64_t>() << ' '
           << step.at("rel").get<std::string>() << ' ' << step.at("rhs").get<std::int64_t>();
      EXPECT_NE(text.out.find(line.str()), std::string::npos) << line.str();
    }
  }
}

TEST(Cli, JsonRoundTripsByteForByte) {
  std::vector<std::vector<std::string>> commands = {
      {"check", "--manifold", "s4", "--family", sample("one_klein_e8.family"), "--format", "json"},
      {"audit", "--manifold", sample("cp2.profile"), "--planes", sample("nineteen_planes.planes"), "--format", "json"},
      {"audit", "--manifold", "s4", "--planes", sample("s4_plane.planes"), "--exact", "--format", "json"},
      {"bound", "--manifold", sample("cp2.profile"), "--format", "json"},
      {"tube", "--family", sample("mixed_signs.family"), "--format", "json"},
      {"cover", "--manifold", "s4", "--genus", "1", "--euler", "2", "--format", "json"},
      {"zerosum", "--vectors", sample("three_vecs.txt"), "--format", "json"},
      {"massey", "--genus", "3", "--format", "json"},
      {"catalog", "list", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    auto r = invoke(cmd);
    ASSERT_LE(r.code, 1) << cmd[0] << ": " << r.err;
    EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out) << cmd[0];
  }
}

TEST(Cli, ExitCodesIgnoreFormat) {
  for (const char* format : {"text", "json"}) {
    EXPECT_EQ(invoke({"check", "--manifold", "s4", "--family", sample("one_klein_e8.family"), "--format", format}).code,
              1);
    EXPECT_EQ(
        invoke({"audit", "--manifold", sample("cp2.profile"), "--planes", sample("nineteen_planes.planes"), "--format",
                format})
            .code,
        1);
    EXPECT_EQ(invoke({"cover", "--manifold", "s4", "--genus", "1", "--euler", "3", "--format", format}).code, 2);
  }
}

TEST(Cli, CoverReportsValues) {
  auto r = invoke({"cover", "--manifold", "s4", "--genus", "1", "--euler", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc.at("sigma_n"), -1);
  EXPECT_EQ(doc.at("chi_n"), 3);
  EXPECT_EQ(doc.at("b2_f2_upper"), 1);
  EXPECT_EQ(doc.at("consistent"), true);
}

TEST(Cli, CoverInconsistencyExitsOne) {
  // sigma(N) = -3 against b2 upper bound 1.
  auto r = invoke({"cover", "--manifold", "s4", "--genus", "1", "--euler", "6"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("3 > 1"), std::string::npos) << r.out;
}

TEST(Cli, CatalogShowsBudgets) {
  auto r = invoke({"catalog", "show", "s4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("D(M) 0"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"catalog", "show", "nowhere"}).code, 2);
}

TEST(Cli, ParseErrorsNameFieldAndLine) {
  auto path = scratch("typo.family", "ambient = s4\n\n[member]\ngenus = 1\neuler_numbr = 2\nclass =\n");
  auto r = invoke({"check", "--manifold", "s4", "--family", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":5:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("euler_numbr"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"check", "--manifold", "s4"}).code, 2);
  EXPECT_EQ(invoke({"massey", "--genus", "0"}).code, 2);
  EXPECT_EQ(invoke({"check", "--manifold", "s4", "--family", "/no/such/file"}).code, 2);
}

TEST(Cli, FamilyAmbientMustMatchManifold) {
  auto r = invoke({"check", "--manifold", sample("cp2.profile"), "--family", sample("veronese.family")});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, SweepIsThreadIndependent) {
  auto one = invoke({"sweep", "--manifold", "s4", "--max-genus", "8", "--max-euler", "20", "--threads", "1",
                     "--format", "json"});
  auto many = invoke({"sweep", "--manifold", "s4", "--max-genus", "8", "--max-euler", "20", "--threads", "16",
                      "--format", "json"});
  EXPECT_EQ(one.code, many.code);
  EXPECT_EQ(one.out, many.out);
}

}  // namespace
}  // namespace excess_kit::cli
