#include "c2g/serialization.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace c2g {

using nlohmann::json;

namespace {

template <typename T>
void read_if_present(const json& j, const char* key, T& value) {
  if (j.contains(key)) j.at(key).get_to(value);
}

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), v);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw InvalidArgument("CSV: not a number: '" + text + "'");
  }
  return v;
}

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

void to_json(json& j, const ContrastConfig& cfg) {
  j = json{{"scales", cfg.scales},
           {"betas", cfg.betas},
           {"dpi", cfg.dpi},
           {"distance_cm", cfg.distance_cm}};
}

void from_json(const json& j, ContrastConfig& cfg) {
  read_if_present(j, "scales", cfg.scales);
  read_if_present(j, "betas", cfg.betas);
  read_if_present(j, "dpi", cfg.dpi);
  read_if_present(j, "distance_cm", cfg.distance_cm);
}

void to_json(json& j, const EnergyParams& p) {
  j = json{{"alpha_L", p.alpha_L},
           {"alpha_AB", p.alpha_AB},
           {"epsilon", p.epsilon},
           {"norm", to_string(p.norm)}};
}

void from_json(const json& j, EnergyParams& p) {
  read_if_present(j, "alpha_L", p.alpha_L);
  read_if_present(j, "alpha_AB", p.alpha_AB);
  read_if_present(j, "epsilon", p.epsilon);
  if (j.contains("norm")) p.norm = parse_norm(j.at("norm").get<std::string>());
}

void to_json(json& j, const SolverConfig& s) {
  j = json{{"cg_tol", s.cg_tol},
           {"cg_max_iters", s.cg_max_iters},
           {"irls_iters", s.irls_iters},
           {"irls_tol", s.irls_tol},
           {"clamp_output", s.clamp_output},
           {"precondition", s.precondition},
           {"realization",
            s.realization == OperatorRealization::Spectral ? "spectral" : "spatial"}};
}

void from_json(const json& j, SolverConfig& s) {
  read_if_present(j, "cg_tol", s.cg_tol);
  read_if_present(j, "cg_max_iters", s.cg_max_iters);
  read_if_present(j, "irls_iters", s.irls_iters);
  read_if_present(j, "irls_tol", s.irls_tol);
  read_if_present(j, "clamp_output", s.clamp_output);
  read_if_present(j, "precondition", s.precondition);
  if (j.contains("realization")) {
    const auto text = j.at("realization").get<std::string>();
    if (text == "spectral") {
      s.realization = OperatorRealization::Spectral;
    } else if (text == "spatial") {
      s.realization = OperatorRealization::Spatial;
    } else {
      throw InvalidArgument("solver.realization must be 'spectral' or 'spatial'");
    }
  }
}

// Layout:
// { "viewing": {dpi, distance_cm},
//   "contrast": {betas, scales},   scales are derived and ignored on input
//   "energy": {...}, "solver": {...},
//   "io": {inputs, output, report, overwrite} }
void to_json(json& j, const RunConfig& c) {
  const ContrastConfig contrast = c.contrast();
  j = json{{"viewing", {{"dpi", c.viewing.dpi}, {"distance_cm", c.viewing.distance_cm}}},
           {"contrast", {{"betas", contrast.betas}, {"scales", contrast.scales}}},
           {"energy", c.solver.energy},
           {"solver", c.solver},
           {"io",
            {{"inputs", c.io.inputs},
             {"output", c.io.output},
             {"report", c.io.report},
             {"overwrite", c.io.overwrite}}}};
}

void from_json(const json& j, RunConfig& c) {
  if (j.contains("viewing")) {
    const json& v = j.at("viewing");
    read_if_present(v, "dpi", c.viewing.dpi);
    read_if_present(v, "distance_cm", c.viewing.distance_cm);
  }
  if (j.contains("contrast") && j.at("contrast").contains("betas")) {
    c.betas = j.at("contrast").at("betas").get<std::vector<double>>();
  }
  if (j.contains("energy")) from_json(j.at("energy"), c.solver.energy);
  if (j.contains("solver")) from_json(j.at("solver"), c.solver);
  if (j.contains("io")) {
    const json& io = j.at("io");
    read_if_present(io, "inputs", c.io.inputs);
    read_if_present(io, "output", c.io.output);
    read_if_present(io, "report", c.io.report);
    read_if_present(io, "overwrite", c.io.overwrite);
  }
}

void to_json(json& j, const EnergyBreakdown& e) {
  j = json{{"brightness", e.brightness},
           {"contrast_L", e.contrast_L},
           {"contrast_A", e.contrast_A},
           {"contrast_B", e.contrast_B},
           {"total", e.total}};
}

void from_json(const json& j, EnergyBreakdown& e) {
  j.at("brightness").get_to(e.brightness);
  j.at("contrast_L").get_to(e.contrast_L);
  j.at("contrast_A").get_to(e.contrast_A);
  j.at("contrast_B").get_to(e.contrast_B);
  j.at("total").get_to(e.total);
}

void to_json(json& j, const ScaleScore& s) {
  j = json{{"scale_index", s.scale_index}, {"sigma_px", s.sigma_px},
           {"loss_L", s.loss_L},           {"loss_A", s.loss_A},
           {"loss_B", s.loss_B},           {"mean_energy", s.mean_energy},
           {"pscore", s.pscore}};
}

void from_json(const json& j, ScaleScore& s) {
  j.at("scale_index").get_to(s.scale_index);
  j.at("sigma_px").get_to(s.sigma_px);
  j.at("loss_L").get_to(s.loss_L);
  j.at("loss_A").get_to(s.loss_A);
  j.at("loss_B").get_to(s.loss_B);
  j.at("mean_energy").get_to(s.mean_energy);
  j.at("pscore").get_to(s.pscore);
}

void to_json(json& j, const ScoreReport& r) {
  j = json{{"image_id", r.image_id},
           {"per_scale", r.per_scale},
           {"brightness_term", r.brightness_term},
           {"total_energy", r.total_energy}};
}

void from_json(const json& j, ScoreReport& r) {
  j.at("image_id").get_to(r.image_id);
  j.at("per_scale").get_to(r.per_scale);
  j.at("brightness_term").get_to(r.brightness_term);
  j.at("total_energy").get_to(r.total_energy);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  try {
    cfg = j.get<RunConfig>();
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path + "': " + e.what());
  }
  cfg.validate();
  return cfg;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    out << quote_field(r.image_id) << ',' << r.scale_index << ',' << format_double(r.sigma_px)
        << ',' << format_double(r.loss_L) << ',' << format_double(r.loss_A) << ','
        << format_double(r.loss_B) << ',' << format_double(r.pscore) << ','
        << quote_field(r.method) << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidArgument("CSV: missing or unexpected header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw InvalidArgument("CSV: expected 8 fields in '" + line + "'");
    CsvRow r;
    r.image_id = f[0];
    r.scale_index = static_cast<int>(parse_double(f[1]));
    r.sigma_px = parse_double(f[2]);
    r.loss_L = parse_double(f[3]);
    r.loss_A = parse_double(f[4]);
    r.loss_B = parse_double(f[5]);
    r.pscore = parse_double(f[6]);
    r.method = f[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CsvRow> csv_rows(const ScoreReport& report, const std::string& method) {
  std::vector<CsvRow> rows;
  for (const ScaleScore& s : report.per_scale) {
    rows.push_back({report.image_id, s.scale_index, s.sigma_px, s.loss_L, s.loss_A, s.loss_B,
                    s.pscore, method});
  }
  return rows;
}

}  // namespace c2g
