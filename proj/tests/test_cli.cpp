#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_commands.hpp"

using belltomo::cli::Json;
using belltomo::cli::run_cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("belltomo_test_" + name);
}

}  // namespace

TEST(Cli, InequalitiesMerminIsChsh) {
  const Outcome r = run({"inequalities", "--n", "2", "--filter", "mermin"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  ASSERT_EQ(j["result"]["count"], 1);
  EXPECT_EQ(j["result"]["mermin"]["coefficients"], Json({1, 1, 1, -1}));
  EXPECT_EQ(j["result"]["mermin"]["bound"], 2);
  EXPECT_EQ(j["version"], belltomo::kVersion);
  EXPECT_TRUE(j.contains("residuals"));
}

TEST(Cli, InequalityCounts) {
  EXPECT_EQ(run({"inequalities", "--n", "2"}).json()["result"]["count"], 16);
  EXPECT_EQ(run({"inequalities", "--n", "3", "--filter", "trivial"}).json()["result"]["count"], 16);
  EXPECT_EQ(run({"inequalities", "--n", "3", "--filter", "nontrivial"}).json()["result"]["count"], 256 - 16);
  const Outcome csv = run({"inequalities", "--n", "1", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "index,trivial,bound,c,a");
}

TEST(Cli, InequalitiesCapacity) {
  const Outcome r = run({"inequalities", "--n", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("n > 4"), std::string::npos);
}

TEST(Cli, ViolateSpinChsh) {
  const Outcome r = run({"violate", "--scheme", "spin", "--n", "2", "--ineq", "mermin"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_NEAR(res["value"].get<double>(), 2 * std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(res["margin"].get<double>(), 2 * std::sqrt(2.0) - 2, 1e-6);
  EXPECT_EQ(res["bound"], 2);
  EXPECT_TRUE(res["violated"].get<bool>());
  EXPECT_EQ(res["parameters"].size(), 8u);
  EXPECT_GT(res["evaluations"].get<std::size_t>(), 0u);
}

TEST(Cli, ViolatePhotonNumberChsh) {
  const Outcome r = run({"violate", "--scheme", "pn", "--n", "2", "--ineq", "mermin", "--box", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(r.json()["result"]["value"].get<double>(), 2.0);
}

TEST(Cli, ViolateOpticalChshStaysBelowBound) {
  const Outcome r = run({"violate", "--scheme", "optical", "--n", "2", "--ineq", "mermin"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(r.json()["result"]["value"].get<double>(), 2.0);
}

TEST(Cli, ViolateSelectors) {
  // index 1 and c:+++- are both the CHSH row
  const Outcome a = run({"violate", "--n", "2", "--ineq", "index:1"});
  const Outcome b = run({"violate", "--n", "2", "--ineq", "c:+++-"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NEAR(a.json()["result"]["value"].get<double>(), 4 * std::sqrt(2.0), 1e-6);
  EXPECT_EQ(a.json()["result"]["value"], b.json()["result"]["value"]);
  EXPECT_EQ(run({"violate", "--n", "2", "--ineq", "c:++x-"}).code, 1);
  EXPECT_EQ(run({"violate", "--n", "2", "--ineq", "index:"}).code, 1);
  EXPECT_EQ(run({"violate", "--n", "2", "--ineq", "bogus"}).code, 1);
  EXPECT_EQ(run({"violate", "--n", "2", "--bin", "0.5"}).code, 1);
  EXPECT_EQ(run({"violate", "--n", "2", "--scheme", "pn", "--bin", "0.5"}).code, 1);
}

TEST(Cli, Correlate) {
  const Outcome spin = run({"correlate", "--scheme", "spin", "--n", "2", "--setting", "0,0", "--setting", "0,0"});
  ASSERT_EQ(spin.code, 0) << spin.err;
  EXPECT_NEAR(spin.json()["result"]["correlation"].get<double>(), 1.0, 1e-14);

  const Outcome pn = run({"correlate", "--scheme", "pn", "--n", "2", "--setting", "0.3,0.1", "--setting", "-0.2,0.4",
                      "--from-tomogram"});
  ASSERT_EQ(pn.code, 0) << pn.err;
  EXPECT_LT(pn.json()["residuals"]["fast_path_difference"].get<double>(), 1e-8);

  const Outcome opt = run({"correlate", "--scheme", "optical", "--n", "3", "--bin", "0.5", "--setting", "0.1",
                       "--setting", "0.2", "--setting", "0.3", "--from-tomogram"});
  ASSERT_EQ(opt.code, 0) << opt.err;
  EXPECT_LT(opt.json()["residuals"]["fast_path_difference"].get<double>(), 1e-8);

  EXPECT_EQ(run({"correlate", "--n", "2", "--setting", "0,0"}).code, 1);
  EXPECT_EQ(run({"correlate", "--n", "1", "--setting", "0,abc"}).code, 1);
  EXPECT_EQ(run({"correlate", "--scheme", "optical", "--n", "1", "--setting", "0,1"}).code, 1);
}

TEST(Cli, ScanFnCsv) {
  const Outcome r = run({"scan-fn", "--n", "3", "--xmin", "-3", "--xmax", "3", "--steps", "601", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["rows"].size(), 601u);
  EXPECT_NEAR(res["max"].get<double>(), 2.0317963498957110331, 1e-12);
  EXPECT_NEAR(res["argmax"].get<double>(), 0.0, 1e-12);

  const Outcome two = run({"scan-fn", "--n", "2", "--steps", "2"});
  std::istringstream lines(two.out);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') data.push_back(line);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_EQ(data[0], "x,f_n");
  EXPECT_EQ(data[1].substr(0, 3), "-3,");
  EXPECT_EQ(data[2].substr(0, 2), "3,");
}

TEST(Cli, ScanFnToFilePrintsSummary) {
  const auto path = temp_file("scan.csv");
  const Outcome r = run({"scan-fn", "--n", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("max ", 0), 0u);
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("x,f_n\n", 0), 0u);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"scan-fn", "--n", "2", "--xmin", "1", "--xmax", "1"}).code, 1);
  EXPECT_EQ(run({"scan-fn", "--n", "2", "--out", "/nonexistent/dir/x.csv"}).code, 1);
}

TEST(Cli, ReconstructBuiltins) {
  const Outcome up = run({"reconstruct", "--state", "up"});
  ASSERT_EQ(up.code, 0) << up.err;
  const Json res = up.json()["result"];
  EXPECT_NEAR(res["rho_re"][0][0].get<double>(), 1.0, 1e-8);
  EXPECT_NEAR(res["rho_re"][1][1].get<double>(), 0.0, 1e-8);
  EXPECT_NEAR(res["rho_re"][0][1].get<double>(), 0.0, 1e-8);

  const Outcome mixed = run({"reconstruct", "--state", "mixed"});
  ASSERT_EQ(mixed.code, 0) << mixed.err;
  EXPECT_NEAR(mixed.json()["result"]["rho_re"][0][0].get<double>(), 0.5, 1e-8);
  EXPECT_NEAR(mixed.json()["residuals"]["min_eigenvalue"].get<double>(), 0.5, 1e-8);
}

TEST(Cli, ReconstructUnderResolved) {
  const Outcome r = run({"reconstruct", "--state", "plus", "--nodes", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("residual"), std::string::npos);
  EXPECT_EQ(run({"reconstruct", "--state", "plus", "--j", "1", "--nodes", "4"}).code, 1);
  EXPECT_EQ(run({"reconstruct", "--state", "plus", "--j", "1", "--nodes", "5"}).code, 0);
}

TEST(Cli, ReconstructFromFile) {
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(2, 2);
  up(0, 0) = 1;
  const auto path = temp_file("tomogram.csv");
  {
    std::ofstream f(path);
    f << belltomo::sample_tomogram_csv(belltomo::tomogram_of(up, belltomo::kHalf), belltomo::kHalf,
                                       belltomo::QuadratureSpec::uniform(6));
  }
  const Outcome r = run({"reconstruct", "--input", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["result"]["rho_re"][0][0].get<double>(), 1.0, 1e-10);

  {
    std::ofstream f(path);
    f << "s,phi,psi,theta,p\n0.5,0,1,0,0.5\n0.5,0,oops,0,0.5\n";
  }
  const Outcome bad = run({"reconstruct", "--input", path.string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  std::filesystem::remove(path);

  EXPECT_EQ(run({"reconstruct"}).code, 1);
  EXPECT_EQ(run({"reconstruct", "--input", "/nonexistent.csv"}).code, 1);
}

TEST(Cli, Vertices) {
  EXPECT_EQ(run({"vertices", "--n", "1"}).json()["result"]["count"], 4);
  EXPECT_EQ(run({"vertices", "--n", "3"}).json()["result"]["count"], 16);
  const Json two = run({"vertices", "--n", "2"}).json();
  ASSERT_EQ(two["result"]["count"], 8);
  for (const auto& v : two["result"]["vertices"]) EXPECT_GE(v["tight_nontrivial"].get<int>(), 1);
  EXPECT_EQ(two["residuals"]["max_margin"], 0.0);
  EXPECT_EQ(run({"vertices", "--n", "5"}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"violate", "--scheme", "quantum"}).code, 2);
  EXPECT_EQ(run({"violate", "--n", "two"}).code, 2);
  EXPECT_EQ(run({"violate", "--format", "csv"}).code, 1);
  const Outcome help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("re,im"), std::string::npos);
  EXPECT_NE(help.out.find("radians"), std::string::npos);
}

TEST(Cli, ArtifactsReproduceFromEmbeddedConfig) {
  const std::vector<std::vector<std::string>> cases = {
      {"violate", "--scheme", "pn", "--n", "2", "--box", "1.5", "--seed", "7"},
      {"inequalities", "--n", "2", "--filter", "nontrivial"},
      {"correlate", "--scheme", "spin", "--n", "3", "--setting", "0.1,0.2", "--setting", "0.3,0.4", "--setting", "1,2,3"},
      {"reconstruct", "--state", "plus", "--nodes", "8"},
  };
  for (const auto& args : cases) {
    const Outcome first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto argv = first.json()["config"]["argv"].get<std::vector<std::string>>();
    const Outcome again = run(argv);
    EXPECT_EQ(first.out, again.out) << args[0];
  }
  // CSV keeps its config in a trailing comment
  const Outcome scan = run({"scan-fn", "--n", "3", "--steps", "11"});
  const std::string tag = "# config ";
  const auto at = scan.out.find(tag);
  ASSERT_NE(at, std::string::npos);
  const std::string cfg = scan.out.substr(at + tag.size(), scan.out.find('\n', at) - at - tag.size());
  EXPECT_EQ(run(Json::parse(cfg)["argv"].get<std::vector<std::string>>()).out, scan.out);
}

TEST(Cli, NumbersRoundTrip) {
  const Outcome r = run({"correlate", "--scheme", "optical", "--n", "2", "--bin", "0.3", "--setting", "0.7",
                     "--setting", "1.1"});
  const double v = r.json()["result"]["correlation"].get<double>();
  const double want = belltomo::correlation(belltomo::SchemeConfig::optical(0.3), belltomo::GhzState(2),
                                            std::vector<belltomo::PartySetting>{belltomo::OpticalPhase{0.7},
                                                                                belltomo::OpticalPhase{1.1}});
  EXPECT_EQ(v, want);
}
