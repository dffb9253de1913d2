#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "c2g/cli.hpp"
#include "c2g/image_io.hpp"
#include "c2g/serialization.hpp"

using namespace c2g;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kData = C2G_DATA_DIR;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "c2g");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("c2g_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(kConfigEnvVar);
  }
  void TearDown() override { unsetenv(kConfigEnvVar); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kInput = kData + "/corpus/iso_disk.png";

}  // namespace

TEST_F(CliTest, ConvertWritesGrayPngAndEchoesConfig) {
  const CliRun r = run({"convert", kInput, "--out", path("out.png")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const RunConfig echoed = json::parse(first_line(r.out)).get<RunConfig>();
  EXPECT_EQ(echoed.io.inputs, std::vector<std::string>{kInput});
  EXPECT_NE(r.out.find("total="), std::string::npos);
  const RgbImage out = read_image(path("out.png"));
  for (const Rgb8& px : out.pixels) {
    EXPECT_EQ(px.r, px.g);
    EXPECT_EQ(px.g, px.b);
  }
}

TEST_F(CliTest, ConvertTwiceIsBitIdentical) {
  ASSERT_EQ(run({"convert", kInput, "--out", path("a.png")}).code, kExitOk);
  ASSERT_EQ(run({"convert", kInput, "--out", path("b.png")}).code, kExitOk);
  EXPECT_EQ(read_file(path("a.png")), read_file(path("b.png")));
}

TEST_F(CliTest, ConvertRefusesToOverwriteWithoutFlag) {
  ASSERT_EQ(run({"convert", kInput, "--out", path("a.png")}).code, kExitOk);
  const CliRun again = run({"convert", kInput, "--out", path("a.png")});
  EXPECT_EQ(again.code, kExitIo);
  EXPECT_EQ(run({"convert", kInput, "--out", path("a.png"), "--overwrite"}).code, kExitOk);
}

TEST_F(CliTest, DoublingDpiDoublesEchoedScales) {
  const CliRun base = run({"config"});
  const CliRun r = run({"config", "--norm", "l2", "--dpi", "144"});
  ASSERT_EQ(r.code, kExitOk);
  const auto s0 = json::parse(base.out)["contrast"]["scales"].get<std::vector<double>>();
  const auto s1 = json::parse(r.out)["contrast"]["scales"].get<std::vector<double>>();
  ASSERT_EQ(s0.size(), s1.size());
  for (std::size_t i = 0; i < s0.size(); ++i) EXPECT_EQ(s1[i], 2 * s0[i]);
  const CliRun conv = run({"convert", kInput, "--norm", "l2", "--dpi", "144", "--out", path("o.png")});
  ASSERT_EQ(conv.code, kExitOk) << conv.err;
  EXPECT_EQ(json::parse(first_line(conv.out))["contrast"]["scales"][0], 2 * s0[0]);
}

TEST_F(CliTest, EchoedConfigReproducesTheRun) {
  const CliRun first = run({"convert", kInput, "--out", path("a.png"), "--alpha-l", "0.7",
                         "--epsilon", "2", "--norm", "l1", "--irls-iters", "3"});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  json echo = json::parse(first_line(first.out));
  echo["io"]["output"] = path("b.png");
  std::ofstream(path("echo.json")) << echo.dump();
  const CliRun second = run({"convert", "--config", path("echo.json")});
  ASSERT_EQ(second.code, kExitOk) << second.err;
  EXPECT_EQ(read_file(path("a.png")), read_file(path("b.png")));
}

TEST_F(CliTest, ConfigPathFromEnvironmentAndFlagPrecedence) {
  std::ofstream(path("env.json")) << R"({"energy": {"alpha_L": 0.9}, "viewing": {"dpi": 96}})";
  setenv(kConfigEnvVar, path("env.json").c_str(), 1);
  json j = json::parse(run({"config"}).out);
  EXPECT_EQ(j["energy"]["alpha_L"], 0.9);
  EXPECT_EQ(j["viewing"]["dpi"], 96.0);
  j = json::parse(run({"config", "--alpha-l", "0.3"}).out);
  EXPECT_EQ(j["energy"]["alpha_L"], 0.3);
  std::ofstream(path("other.json")) << R"({"viewing": {"dpi": 50}})";
  j = json::parse(run({"config", "--config", path("other.json")}).out);
  EXPECT_EQ(j["viewing"]["dpi"], 50.0);
  EXPECT_EQ(j["energy"]["alpha_L"], 0.5);
}

TEST_F(CliTest, ExitCodesAndMachineReadableErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"convert", kInput, "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"convert", kInput, "--norm", "l3"}).code, kExitUsage);
  EXPECT_EQ(run({"convert", kInput, "--alpha-l", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);

  const CliRun missing = run({"convert", path("nope.png"), "--out", path("x.png")});
  EXPECT_EQ(missing.code, kExitIo);
  const json err = json::parse(first_line(missing.err));
  EXPECT_EQ(err["error"], "io");
  EXPECT_EQ(err["exit_code"], kExitIo);

  EXPECT_EQ(run({"convert", kInput, "--out", "/nonexistent-dir/x.png"}).code, kExitIo);

  std::ofstream(path("strict.json")) << R"({"solver": {"cg_max_iters": 1, "cg_tol": 1e-15}})";
  const CliRun numerical = run({"convert", kInput, "--config", path("strict.json"), "--out", path("y.png")});
  EXPECT_EQ(numerical.code, kExitNumerical);
  EXPECT_EQ(json::parse(first_line(numerical.err))["error"], "numerical");
}

TEST_F(CliTest, BatchConvertIsIndependentOfJobCount) {
  const std::vector<std::string> inputs = {kData + "/corpus/iso_disk.png",
                                           kData + "/corpus/photo_rocket.jpg",
                                           kData + "/corpus/iso_rings.png"};
  std::vector<std::string> a = {"convert"}, b = {"convert"};
  for (const auto& in : inputs) {
    a.push_back(in);
    b.push_back(in);
  }
  a.insert(a.end(), {"--out", path("j1"), "--jobs", "1"});
  b.insert(b.end(), {"--out", path("j3"), "--jobs", "3"});
  const CliRun ra = run(a);
  const CliRun rb = run(b);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  ASSERT_EQ(rb.code, kExitOk) << rb.err;
  for (const char* name : {"iso_disk_gray.png", "photo_rocket_gray.png", "iso_rings_gray.png"}) {
    EXPECT_EQ(read_file(path(std::string("j1/") + name)), read_file(path(std::string("j3/") + name)));
  }
}

TEST_F(CliTest, EvaluateRowCountAndJobIndependence) {
  const CliRun one = run({"evaluate", kData + "/gray", "--method", "l-channel", "--method", "cie-y",
                       "--csv", path("a.csv"), "--json", path("a.json"), "--jobs", "1"});
  const CliRun two = run({"evaluate", kData + "/gray", "--method", "l-channel", "--method", "cie-y",
                       "--csv", path("b.csv"), "--json", path("b.json"), "--jobs", "2"});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  ASSERT_EQ(two.code, kExitOk) << two.err;
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  std::ifstream csv(path("a.csv"));
  const auto rows = read_csv(csv);
  EXPECT_EQ(rows.size(), 2u * 6u * 2u);
  const json agg = json::parse(read_file(path("a.json")));
  EXPECT_EQ(agg["succeeded"], 4);
  EXPECT_EQ(agg["methods"].size(), 2u);
}

TEST_F(CliTest, EvaluateGrayImagesAgainstTheirLightness) {
  const CliRun r = run({"evaluate", kData + "/gray", "--method", "l-channel", "--csv", path("g.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream csv(path("g.csv"));
  for (const CsvRow& row : read_csv(csv)) {
    EXPECT_EQ(row.loss_L, 0.0);
    EXPECT_NEAR(row.loss_A, row.loss_B, 1e-12 * row.loss_A);
  }
}

TEST_F(CliTest, EvaluateGrayDirSkipsMissingPairs) {
  fs::create_directories(path("cand"));
  fs::copy_file(kData + "/gray/camera.png", path("cand/camera.png"));
  const CliRun r = run({"evaluate", kData + "/gray", "--gray-dir", path("cand"), "--label", "mine",
                     "--csv", path("c.csv")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.err.find("skipped 1"), std::string::npos);
  std::ifstream csv(path("c.csv"));
  const auto rows = read_csv(csv);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].method, "mine");
  EXPECT_EQ(rows[0].image_id, "camera");

  fs::create_directories(path("empty"));
  const CliRun none = run({"evaluate", kData + "/gray", "--gray-dir", path("empty")});
  EXPECT_NE(none.code, kExitOk);
}

TEST_F(CliTest, EvaluateNeedsExactlyOneCandidateSource) {
  EXPECT_EQ(run({"evaluate", kData + "/gray"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate", kData + "/gray", "--method", "cie-y", "--gray-dir", kData}).code,
            kExitUsage);
  EXPECT_EQ(run({"evaluate", kData + "/gray", "--method", "magic"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate", path("no-such-dir"), "--method", "cie-y"}).code, kExitIo);
}

TEST_F(CliTest, SelftestPassesAndIsDeterministic) {
  const CliRun a = run({"selftest", "--seed", "7"});
  const CliRun b = run({"selftest", "--seed", "7"});
  EXPECT_EQ(a.code, kExitOk) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("FAIL"), std::string::npos);
  const CliRun odd = run({"selftest", "--size", "12x5"});
  EXPECT_EQ(odd.code, kExitOk) << odd.out;
  EXPECT_NE(odd.out.find("12x5"), std::string::npos);
  EXPECT_EQ(run({"selftest", "--size", "12by5"}).code, kExitUsage);
}

TEST_F(CliTest, InstalledBinaryRuns) {
  const std::string cmd = std::string(C2G_BINARY) + " selftest --size 4x4 > " + path("st.txt");
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_NE(read_file(path("st.txt")).find("selftest passed"), std::string::npos);
}
