#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "c2g/serialization.hpp"
#include "oracle.hpp"

using namespace c2g;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "c2g_serialization_test";
  fs::create_directories(dir);
  std::ofstream(dir / name) << text;
  return dir / name;
}

}  // namespace

TEST(RunConfigJson, DefaultsReproduceReferenceSettings) {
  const RunConfig cfg;
  const json j = cfg;
  EXPECT_EQ(j["viewing"]["dpi"], 72.0);
  EXPECT_EQ(j["viewing"]["distance_cm"], 60.0);
  EXPECT_EQ(j["energy"]["alpha_L"], 0.5);
  EXPECT_EQ(j["energy"]["alpha_AB"], 1.5);
  EXPECT_EQ(j["contrast"]["betas"], json({-4.0, 1.0, 4.0, 4.0, 1.0, -2.0}));
  EXPECT_EQ(j["contrast"]["scales"], json({2.0, 4.0, 8.0, 16.0, 32.0, 64.0}));
}

TEST(RunConfigJson, RoundTrips) {
  RunConfig cfg;
  cfg.viewing = {150.0, 40.0};
  cfg.betas = std::vector<double>{1, 2, 3, 4, 5, 6};
  cfg.solver.energy = {0.25, 2.0, 0.5, Norm::L1};
  cfg.solver.cg_tol = 1e-8;
  cfg.solver.cg_max_iters = 77;
  cfg.solver.irls_iters = 4;
  cfg.solver.irls_tol = 0.01;
  cfg.solver.clamp_output = false;
  cfg.solver.precondition = false;
  cfg.solver.realization = OperatorRealization::Spatial;
  cfg.io = {{"a.png", "b.jpg"}, "out", "report.json", true};
  EXPECT_EQ(json(cfg).get<RunConfig>(), cfg);
  // Also through text, as the CLI echo is consumed.
  EXPECT_EQ(json::parse(json(cfg).dump()).get<RunConfig>(), cfg);
}

TEST(RunConfigJson, PartialObjectsKeepDefaults) {
  const RunConfig cfg = json::parse(R"({"energy": {"norm": "l1"}, "viewing": {"dpi": 144}})")
                            .get<RunConfig>();
  EXPECT_EQ(cfg.solver.energy.norm, Norm::L1);
  EXPECT_EQ(cfg.solver.energy.alpha_AB, 1.5);
  EXPECT_EQ(cfg.viewing.dpi, 144.0);
  EXPECT_EQ(cfg.viewing.distance_cm, 60.0);
  EXPECT_EQ(cfg.contrast().scales[0], 4.0);
}

TEST(RunConfigJson, EchoedScalesAreIgnoredOnInput) {
  const RunConfig cfg =
      json::parse(R"({"contrast": {"scales": [1, 2, 3, 4, 5, 6]}})").get<RunConfig>();
  EXPECT_EQ(cfg, RunConfig{});
}

TEST(RunConfigJson, RejectsInvalidValues) {
  EXPECT_THROW(json::parse(R"({"energy": {"norm": "l7"}})").get<RunConfig>(), InvalidArgument);
  EXPECT_THROW(json::parse(R"({"solver": {"realization": "gpu"}})").get<RunConfig>(),
               InvalidArgument);
  RunConfig cfg;
  cfg.betas = std::vector<double>{1, 2};
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.viewing.dpi = -3;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(LoadRunConfig, ReadsFileAndReportsErrors) {
  const fs::path good = write_temp("good.json", R"({"solver": {"irls_iters": 3}})");
  EXPECT_EQ(load_run_config(good.string()).solver.irls_iters, 3);
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), IoError);
  const fs::path bad = write_temp("bad.json", "{ not json");
  EXPECT_THROW(load_run_config(bad.string()), InvalidArgument);
  const fs::path invalid = write_temp("invalid.json", R"({"energy": {"alpha_L": -1}})");
  EXPECT_THROW(load_run_config(invalid.string()), InvalidArgument);
  const fs::path wrong_type = write_temp("type.json", R"({"solver": {"cg_tol": "small"}})");
  EXPECT_THROW(load_run_config(wrong_type.string()), InvalidArgument);
}

TEST(ReportJson, RoundTripsLosslessly) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0, 1);
  ScoreReport r;
  r.image_id = "img \"7\", with comma";
  for (int i = 1; i <= 6; ++i) {
    ScaleScore s{i, std::ldexp(1.0, i), d(rng), d(rng) / 3, d(rng) * 1e-17, d(rng), d(rng)};
    r.per_scale.push_back(s);
  }
  r.brightness_term = 0.1 + 0.2;
  r.total_energy = 1e300 / 3;
  EXPECT_EQ(json::parse(json(r).dump()).get<ScoreReport>(), r);
  EnergyBreakdown e{1.0 / 3, 2.0 / 7, 1e-300, 5.5, 9.25};
  EXPECT_EQ(json::parse(json(e).dump()).get<EnergyBreakdown>(), e);
}

TEST(Csv, RoundTripsExactlyIncludingQuotedIds) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(0, 10);
  std::vector<CsvRow> rows;
  for (const char* id : {"plain", "with,comma", "with \"quote\""}) {
    for (int i = 1; i <= 3; ++i) {
      rows.push_back({id, i, d(rng), d(rng), d(rng), d(rng), 1.0 / (1.0 + d(rng)), "ours-l2"});
    }
  }
  std::stringstream buffer;
  write_csv(buffer, rows);
  std::string header;
  std::getline(std::stringstream(buffer.str()), header);
  EXPECT_EQ(header, kCsvHeader);
  EXPECT_EQ(read_csv(buffer), rows);
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream no_header("a,b\n");
  EXPECT_THROW(read_csv(no_header), InvalidArgument);
  std::stringstream short_row(std::string(kCsvHeader) + "\nimg,1,2\n");
  EXPECT_THROW(read_csv(short_row), InvalidArgument);
  std::stringstream bad_number(std::string(kCsvHeader) + "\nimg,1,x,0,0,0,1,m\n");
  EXPECT_THROW(read_csv(bad_number), InvalidArgument);
}

TEST(Csv, RowsFromReportOnePerScale) {
  ScoreReport r;
  r.image_id = "x";
  r.per_scale.resize(6);
  for (int i = 0; i < 6; ++i) r.per_scale[i].scale_index = i + 1;
  const auto rows = csv_rows(r, "cie-y");
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[5].scale_index, 6);
  EXPECT_EQ(rows[0].method, "cie-y");
}
