#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isocoh/catalog.hpp"
#include "isocoh/cli.hpp"
#include "support.hpp"

namespace isocoh {
namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run_command(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_spec(const std::string& name, const nlohmann::json& j) {
  const auto dir = std::filesystem::temp_directory_path() / "isocoh_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << j.dump(2);
  return path;
}

TEST(Cli, CohomologyOnDelPezzoOne) {
  const auto r = run({"cohomology", "--surface", "dp1", "--class", "2,1"});
  EXPECT_EQ(r.status, cli::kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind("h0=6 h1=0 h2=0 chi=6\ncertificate: certified kawamata_viehweg", 0), 0u)
      << r.out;
}

TEST(Cli, TransformOnGdp2Fixture) {
  for (const std::string surface : {std::string("gdp2.json"), testing::data_path("gdp2.json")}) {
    const auto r = run({"transform", "--surface", surface, "--class", "2,2,0"});
    EXPECT_EQ(r.status, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("step 4:"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find("step 5:"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("limit: [2,0,0] (4 steps)"), std::string::npos) << r.out;
  }
}

TEST(Cli, ScanOnF2) {
  const auto r = run({"scan", "--surface", "f2", "--box", "-6..6"});
  EXPECT_EQ(r.status, cli::kSuccess) << r.err;
  EXPECT_NE(r.out.find("mismatches: 0\n"), std::string::npos) << r.out;
}

TEST(Cli, JsonOutputsReparse) {
  const auto c = run({"cohomology", "--surface", "f2", "--class", "1,0", "--format", "json"});
  ASSERT_EQ(c.status, cli::kSuccess) << c.err;
  const auto cj = nlohmann::json::parse(c.out);
  EXPECT_EQ(cj["h0"], 1);
  EXPECT_EQ(cj["h1"], 1);
  EXPECT_EQ(cj["h2"], 0);
  EXPECT_EQ(cj["chi"], 0);
  EXPECT_EQ(cj["certificate"]["rule"], "demazure");
  EXPECT_TRUE(cj["serre_dual"]["trace"].is_null());

  const auto t = run({"transform", "--surface", "dp1", "--class", "2,1", "--format", "json"});
  ASSERT_EQ(t.status, cli::kSuccess) << t.err;
  EXPECT_EQ(nlohmann::json::parse(t.out)["limit"], nlohmann::json({2, 0}));

  const auto o = run({"oracle-check", "--surface", "dp2", "--class", "1,1,1", "--format", "json"});
  ASSERT_EQ(o.status, cli::kSuccess) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["oracle_h0"], 3);

  const auto s = run({"scan", "--surface", "dp2", "--box", "-2..2", "--format", "json"});
  ASSERT_EQ(s.status, cli::kSuccess) << s.err;
  const auto sj = nlohmann::json::parse(s.out);
  EXPECT_EQ(sj["classes"], 125);
  EXPECT_EQ(sj["mismatches"], 0);
}

TEST(Cli, CatalogJsonListsClassicalCounts) {
  const std::size_t counts[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int k = 0; k <= 8; ++k) {
    const auto r = run({"catalog", "--surface", "dp" + std::to_string(k), "--format", "json"});
    ASSERT_EQ(r.status, cli::kSuccess) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["negative_curve_count"], counts[k]);
    EXPECT_EQ(j["spec"]["negative_curves"].size(), counts[k]);
    EXPECT_EQ(j["canonical_self_intersection"], 9 - k);
    EXPECT_NO_THROW(load_surface(spec_from_json(j["spec"])));
  }
}

TEST(Cli, RankMismatchIsAUsageErrorWithAHint) {
  const auto r = run({"cohomology", "--surface", "dp2", "--class", "1,1"});
  EXPECT_EQ(r.status, cli::kUsage);
  EXPECT_NE(r.err.find("rank 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("H, E1, E2"), std::string::npos) << r.err;
}

TEST(Cli, UnknownSurfaceListsValidNames) {
  const auto r = run({"cohomology", "--surface", "dp12", "--class", "1"});
  EXPECT_EQ(r.status, cli::kUsage);
  EXPECT_NE(r.err.find("dp8"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("f0"), std::string::npos) << r.err;
}

TEST(Cli, NegativeCoefficientsParse) {
  const auto r = run({"cohomology", "--surface", "f2", "--class", "-1,0"});
  EXPECT_EQ(r.status, cli::kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind("h0=0 ", 0), 0u) << r.out;
}

TEST(Cli, NonEffectiveTransformIsRejected) {
  EXPECT_EQ(run({"transform", "--surface", "dp1", "--class", "1,-2"}).status, cli::kUsage);
}

TEST(Cli, ScanFailsOnCorruptedFixtures) {
  const auto good = to_json(spec_of(make_hirzebruch(2)));

  auto wrong_chi = good;
  wrong_chi["chi_structure_sheaf"] = 2;
  const auto r1 = run({"scan", "--surface", temp_spec("f2_chi.json", wrong_chi).string(), "--box",
                       "-3..3"});
  EXPECT_EQ(r1.status, cli::kMismatch) << r1.out << r1.err;
  EXPECT_EQ(r1.out.find("mismatches: 0\n"), std::string::npos);

  auto missing_curve = good;
  missing_curve["negative_curves"] = nlohmann::json::array();
  const auto r2 = run({"scan", "--surface", temp_spec("f2_curve.json", missing_curve).string(),
                       "--box", "-3..3"});
  EXPECT_EQ(r2.status, cli::kMismatch) << r2.out << r2.err;

  const auto r3 = run({"scan", "--surface", temp_spec("f2_good.json", good).string(), "--box",
                       "-3..3"});
  EXPECT_EQ(r3.status, cli::kSuccess) << r3.out << r3.err;
}

TEST(Cli, InvalidSpecFileIsAUsageError) {
  auto bad = to_json(spec_of(make_hirzebruch(2)));
  bad["intersection_matrix"] = {{-2, 1}, {0, 0}};
  const auto r = run({"catalog", "--surface", temp_spec("f2_asym.json", bad).string()});
  EXPECT_EQ(r.status, cli::kUsage);
  EXPECT_NE(r.err.find("intersection_matrix"), std::string::npos) << r.err;
}

TEST(Cli, ScanRefusesHugeBoxes) {
  EXPECT_EQ(run({"scan", "--surface", "dp8", "--box", "-6..6"}).status, cli::kUsage);
}

}  // namespace
}  // namespace isocoh
