#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "c2g/config.hpp"
#include "c2g/energy.hpp"
#include "c2g/metrics.hpp"

namespace c2g {

// JSON forms. from_json accepts partial objects: absent keys keep defaults.
void to_json(nlohmann::json& j, const ContrastConfig& cfg);
void from_json(const nlohmann::json& j, ContrastConfig& cfg);
void to_json(nlohmann::json& j, const EnergyParams& p);
void from_json(const nlohmann::json& j, EnergyParams& p);
void to_json(nlohmann::json& j, const SolverConfig& s);
void from_json(const nlohmann::json& j, SolverConfig& s);
void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);
void to_json(nlohmann::json& j, const EnergyBreakdown& e);
void from_json(const nlohmann::json& j, EnergyBreakdown& e);
void to_json(nlohmann::json& j, const ScaleScore& s);
void from_json(const nlohmann::json& j, ScaleScore& s);
void to_json(nlohmann::json& j, const ScoreReport& r);
void from_json(const nlohmann::json& j, ScoreReport& r);

/// Reads a RunConfig from a JSON file; throws IoError / InvalidArgument.
RunConfig load_run_config(const std::string& path);

/// One CSV row per (image, scale, method).
struct CsvRow {
  std::string image_id;
  int scale_index = 0;
  double sigma_px = 0.0;
  double loss_L = 0.0;
  double loss_A = 0.0;
  double loss_B = 0.0;
  double pscore = 0.0;
  std::string method;

  bool operator==(const CsvRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "image_id,scale_index,sigma_px,loss_L,loss_A,loss_B,pscore,method";

/// Doubles are written in shortest round-trip form, so read_csv(write_csv(x))
/// reproduces x exactly. Fields containing commas or quotes are quoted.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
std::vector<CsvRow> read_csv(std::istream& in);

std::vector<CsvRow> csv_rows(const ScoreReport& report, const std::string& method);

}  // namespace c2g
