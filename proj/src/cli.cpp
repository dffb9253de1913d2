#include "c2g/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "c2g/colorspace.hpp"
#include "c2g/config.hpp"
#include "c2g/image_io.hpp"
#include "c2g/metrics.hpp"
#include "c2g/selftest.hpp"
#include "c2g/serialization.hpp"
#include "c2g/solver.hpp"

namespace c2g {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::string norm;
  double dpi = 0.0;
  double distance_cm = 0.0;
  double alpha_L = 0.0;
  double alpha_AB = 0.0;
  double epsilon = 0.0;
  int irls_iters = 0;
  double cg_tol = 0.0;
  std::string out;
  std::string report;
  std::vector<std::string> inputs;
  bool overwrite = false;
  unsigned jobs = 0;

  std::map<std::string, CLI::Option*> given;

  bool has(const std::string& name) const {
    auto it = given.find(name);
    return it != given.end() && it->second->count() > 0;
  }
};

void add_run_options(CLI::App& cmd, Overrides& o) {
  o.given["config"] = cmd.add_option("--config", o.config_path,
                                     std::string("JSON config file (default: $") +
                                         kConfigEnvVar + ")");
  o.given["norm"] = cmd.add_option("--norm", o.norm, "Energy norm")
                        ->check(CLI::IsMember({"l1", "l2"}));
  o.given["dpi"] = cmd.add_option("--dpi", o.dpi, "Display resolution");
  o.given["distance"] = cmd.add_option("--distance-cm", o.distance_cm, "Viewing distance");
  o.given["alpha_l"] = cmd.add_option("--alpha-l", o.alpha_L, "Lightness contrast weight");
  o.given["alpha_ab"] = cmd.add_option("--alpha-ab", o.alpha_AB, "Chromatic contrast weight");
  o.given["epsilon"] = cmd.add_option("--epsilon", o.epsilon, "Brightness weight regularizer");
  o.given["irls"] = cmd.add_option("--irls-iters", o.irls_iters, "Outer IRLS iterations (l1)");
  o.given["cg_tol"] = cmd.add_option("--cg-tol", o.cg_tol, "Relative CG residual tolerance");
  o.given["jobs"] = cmd.add_option("--jobs,-j", o.jobs, "Worker threads (default: all cores)")
                        ->check(CLI::PositiveNumber);
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg;
  std::string path = o.config_path;
  if (!o.has("config")) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') path = env;
  }
  if (!path.empty()) cfg = load_run_config(path);

  if (o.has("norm")) cfg.solver.energy.norm = parse_norm(o.norm);
  if (o.has("dpi")) cfg.viewing.dpi = o.dpi;
  if (o.has("distance")) cfg.viewing.distance_cm = o.distance_cm;
  if (o.has("alpha_l")) cfg.solver.energy.alpha_L = o.alpha_L;
  if (o.has("alpha_ab")) cfg.solver.energy.alpha_AB = o.alpha_AB;
  if (o.has("epsilon")) cfg.solver.energy.epsilon = o.epsilon;
  if (o.has("irls")) cfg.solver.irls_iters = o.irls_iters;
  if (o.has("cg_tol")) cfg.solver.cg_tol = o.cg_tol;
  if (o.has("out")) cfg.io.output = o.out;
  if (o.has("report")) cfg.io.report = o.report;
  if (o.has("inputs")) cfg.io.inputs = o.inputs;
  if (o.has("overwrite")) cfg.io.overwrite = true;
  cfg.validate();
  return cfg;
}

unsigned worker_count(const Overrides& o, std::size_t tasks) {
  unsigned jobs = o.has("jobs") ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks, 1)));
}

/// Runs task(i) for i in [0, count) on a bounded pool. Exceptions are
/// captured per task so callers can report them in input order.
std::vector<std::exception_ptr> run_pool(std::size_t count, unsigned jobs,
                                         const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return errors;
}

struct ErrorInfo {
  int code;
  const char* kind;
  std::string message;
};

ErrorInfo classify(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const IoError& e) {
    return {kExitIo, "io", e.what()};
  } catch (const fs::filesystem_error& e) {
    return {kExitIo, "io", e.what()};
  } catch (const NumericalError& e) {
    return {kExitNumerical, "numerical", e.what()};
  } catch (const InvalidArgument& e) {
    return {kExitUsage, "usage", e.what()};
  } catch (const std::exception& e) {
    return {kExitNumerical, "internal", e.what()};
  }
}

void emit_error(std::ostream& err, const ErrorInfo& info, const std::string& context = {}) {
  json record = {{"error", info.kind}, {"exit_code", info.code}, {"message", info.message}};
  if (!context.empty()) record["input"] = context;
  err << record.dump() << '\n';
}

void echo_config(std::ostream& out, const RunConfig& cfg) { out << json(cfg).dump() << '\n'; }

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<fs::path> list_images(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: '" + dir + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void ensure_writable(const fs::path& path, bool overwrite) {
  if (!overwrite && fs::exists(path)) {
    throw IoError("output '" + path.string() + "' exists (pass --overwrite)");
  }
}

// ---------------------------------------------------------------- convert

struct ConvertOutcome {
  std::string input;
  std::string output;
  EnergyBreakdown energy;
  SolveResult details;
};

int cmd_convert(const Overrides& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(o);
  if (cfg.io.inputs.empty()) throw InvalidArgument("convert: no input images");
  echo_config(out, cfg);

  const bool single = cfg.io.inputs.size() == 1;
  std::vector<std::string> outputs;
  for (const std::string& in : cfg.io.inputs) {
    fs::path target;
    const fs::path stem = fs::path(in).stem().string() + "_gray.png";
    if (cfg.io.output.empty()) {
      target = fs::path(in).parent_path() / stem;
    } else if (single && !fs::is_directory(cfg.io.output)) {
      target = cfg.io.output;
    } else {
      target = fs::path(cfg.io.output) / stem;
    }
    outputs.push_back(target.string());
  }
  if (!single && !cfg.io.output.empty()) fs::create_directories(cfg.io.output);

  const ContrastConfig contrast = cfg.contrast();
  std::vector<ConvertOutcome> outcomes(cfg.io.inputs.size());
  const auto errors = run_pool(outcomes.size(), worker_count(o, outcomes.size()), [&](std::size_t i) {
    ConvertOutcome& r = outcomes[i];
    r.input = cfg.io.inputs[i];
    r.output = outputs[i];
    ensure_writable(r.output, cfg.io.overwrite);
    const RgbImage img = read_image(r.input);
    const RgbImage gray = convert(img, contrast, cfg.solver, &r.details);
    r.energy = total_energy(r.details.g, srgb_to_lab(img), contrast, cfg.solver.energy);
    write_png(r.output, gray);
  });

  json report = json::array();
  int status = kExitOk;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (errors[i]) {
      const ErrorInfo info = classify(errors[i]);
      emit_error(err, info, cfg.io.inputs[i]);
      if (status == kExitOk) status = info.code;
      continue;
    }
    const ConvertOutcome& r = outcomes[i];
    char line[512];
    std::snprintf(line, sizeof line,
                  "%s -> %s: total=%.6g brightness=%.6g contrast_L=%.6g contrast_A=%.6g "
                  "contrast_B=%.6g cg_iterations=%d irls_iterations=%zu\n",
                  r.input.c_str(), r.output.c_str(), r.energy.total, r.energy.brightness,
                  r.energy.contrast_L, r.energy.contrast_A, r.energy.contrast_B,
                  r.details.cg_iterations, r.details.irls.size());
    out << line;
    report.push_back({{"input", r.input},
                      {"output", r.output},
                      {"energy", r.energy},
                      {"cg_iterations", r.details.cg_iterations},
                      {"relative_residual", r.details.relative_residual},
                      {"irls_iterations", r.details.irls.size()}});
  }
  if (!cfg.io.report.empty()) {
    std::ofstream file(cfg.io.report);
    if (!file) throw IoError("cannot write report '" + cfg.io.report + "'");
    file << json{{"config", cfg}, {"images", report}}.dump(2) << '\n';
  }
  return status;
}

// --------------------------------------------------------------- evaluate

enum class Method { OursL1, OursL2, CieY, LChannel };

Method parse_method(const std::string& name) {
  if (name == "ours-l1") return Method::OursL1;
  if (name == "ours-l2") return Method::OursL2;
  if (name == "cie-y") return Method::CieY;
  if (name == "l-channel") return Method::LChannel;
  throw InvalidArgument("unknown method '" + name + "'");
}

/// Gray candidate of the given method, quantized to 8 bits as it would be
/// written to disk.
RgbImage generate_gray(Method method, const RgbImage& img, const LabImage& lab,
                       const ContrastConfig& contrast, SolverConfig solver) {
  switch (method) {
    case Method::OursL1:
      solver.energy.norm = Norm::L1;
      return convert(img, contrast, solver);
    case Method::OursL2:
      solver.energy.norm = Norm::L2;
      return convert(img, contrast, solver);
    case Method::CieY:
      return gray_to_rgb(cie_y_lightness(img));
    case Method::LChannel:
      return gray_to_rgb(lab.L);
  }
  throw InvalidArgument("unknown method");
}

fs::path find_candidate(const std::string& dir, const std::string& stem) {
  for (const char* ext : {".png", ".jpg", ".jpeg", ".PNG", ".JPG", ".JPEG"}) {
    fs::path p = fs::path(dir) / (stem + ext);
    if (fs::is_regular_file(p)) return p;
  }
  return {};
}

struct EvalOptions {
  std::string color_dir;
  std::string gray_dir;
  std::string label = "candidate";
  std::vector<std::string> methods;
  std::string csv;
  std::string json_path;
};

int cmd_evaluate(const Overrides& o, const EvalOptions& e, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(o);
  if (e.gray_dir.empty() == e.methods.empty()) {
    throw InvalidArgument("evaluate: give exactly one of --gray-dir or --method");
  }
  std::vector<std::string> method_names = e.methods;
  if (!e.gray_dir.empty()) method_names = {e.label};
  std::vector<Method> methods;
  if (e.gray_dir.empty()) {
    for (const auto& m : method_names) methods.push_back(parse_method(m));
  }
  const std::vector<fs::path> images = list_images(e.color_dir);
  echo_config(out, cfg);

  const ContrastConfig contrast = cfg.contrast();
  const std::size_t per_image = method_names.size();
  std::vector<std::optional<ScoreReport>> reports(images.size() * per_image);
  std::vector<std::string> warnings(reports.size());

  const auto errors = run_pool(images.size(), worker_count(o, images.size()), [&](std::size_t i) {
    const std::string id = images[i].stem().string();
    const RgbImage img = read_image(images[i].string());
    const LabImage lab = srgb_to_lab(img);
    for (std::size_t m = 0; m < per_image; ++m) {
      const std::size_t slot = i * per_image + m;
      RgbImage gray;
      if (!e.gray_dir.empty()) {
        const fs::path candidate = find_candidate(e.gray_dir, id);
        if (candidate.empty()) {
          warnings[slot] = "no grayscale candidate for '" + id + "' in " + e.gray_dir;
          continue;
        }
        try {
          gray = read_image(candidate.string());
        } catch (const IoError& ex) {
          warnings[slot] = ex.what();
          continue;
        }
        if (gray.width != img.width || gray.height != img.height) {
          warnings[slot] = "size mismatch between '" + images[i].string() + "' and '" +
                           candidate.string() + "'";
          continue;
        }
      } else {
        gray = generate_gray(methods[m], img, lab, contrast, cfg.solver);
      }
      reports[slot] = full_report(lab, srgb_to_lab(gray).L, contrast, cfg.solver.energy, id);
    }
  });

  std::size_t skipped = 0;
  std::size_t succeeded = 0;
  int first_error = kExitOk;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (errors[i]) {
      const ErrorInfo info = classify(errors[i]);
      emit_error(err, info, images[i].string());
      if (first_error == kExitOk) first_error = info.code;
      skipped += per_image;
      continue;
    }
    for (std::size_t m = 0; m < per_image; ++m) {
      const std::size_t slot = i * per_image + m;
      if (reports[slot]) {
        ++succeeded;
      } else {
        err << "warning: " << warnings[slot] << '\n';
        ++skipped;
      }
    }
  }

  std::vector<CsvRow> rows;
  json per_method = json::array();
  json nested = json::array();
  for (std::size_t m = 0; m < per_image; ++m) {
    const std::size_t scales = contrast.scales.size();
    std::vector<double> pscore_sum(scales, 0.0);
    std::vector<double> energy_sum(scales, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto& report = reports[i * per_image + m];
      if (!report) continue;
      ++count;
      for (std::size_t s = 0; s < scales; ++s) {
        pscore_sum[s] += report->per_scale[s].pscore;
        energy_sum[s] += report->per_scale[s].mean_energy;
      }
      nested.push_back({{"method", method_names[m]}, {"report", *report}});
    }
    json scale_entries = json::array();
    for (std::size_t s = 0; s < scales; ++s) {
      const double n = count > 0 ? static_cast<double>(count) : 1.0;
      scale_entries.push_back({{"scale_index", s + 1},
                               {"sigma_px", contrast.scales[s]},
                               {"mean_pscore", pscore_sum[s] / n},
                               {"mean_energy", energy_sum[s] / n}});
    }
    per_method.push_back(
        {{"method", method_names[m]}, {"images", count}, {"per_scale", scale_entries}});
  }
  // Rows ordered by image, then method, then scale.
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t m = 0; m < per_image; ++m) {
      if (const auto& report = reports[i * per_image + m]) {
        for (CsvRow& row : csv_rows(*report, method_names[m])) rows.push_back(std::move(row));
      }
    }
  }

  const std::string json_path = e.json_path.empty() ? cfg.io.report : e.json_path;
  if (!e.csv.empty()) {
    std::ofstream file(e.csv);
    if (!file) throw IoError("cannot write CSV '" + e.csv + "'");
    write_csv(file, rows);
  } else {
    write_csv(out, rows);
  }
  if (!json_path.empty()) {
    std::ofstream file(json_path);
    if (!file) throw IoError("cannot write report '" + json_path + "'");
    file << json{{"config", cfg},
                 {"succeeded", succeeded},
                 {"skipped", skipped},
                 {"methods", per_method},
                 {"reports", nested}}
                .dump(2)
         << '\n';
  }
  err << "evaluated " << succeeded << " pair(s), skipped " << skipped << '\n';
  if (succeeded == 0) {
    return first_error != kExitOk ? first_error : kExitIo;
  }
  return kExitOk;
}

// --------------------------------------------------------------- selftest

int cmd_selftest(const std::string& size, std::uint64_t seed, std::ostream& out) {
  SelftestOptions options;
  options.seed = seed;
  if (!size.empty()) {
    int w = 0;
    int h = 0;
    char x = 0;
    std::istringstream in(size);
    if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || !in.eof() || w < 1 || h < 1) {
      throw InvalidArgument("--size expects WxH, got '" + size + "'");
    }
    options.width = w;
    options.height = h;
  }
  const auto results = run_selftest(options);
  print_results(out, results);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const PropertyResult& r) { return r.passed; });
  out << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contrast-preserving color to grayscale conversion", "c2g"};
  app.require_subcommand(1);

  Overrides convert_opts;
  CLI::App* convert = app.add_subcommand("convert", "Convert color images to grayscale PNG");
  add_run_options(*convert, convert_opts);
  convert_opts.given["inputs"] = convert->add_option("inputs", convert_opts.inputs, "Input images");
  convert_opts.given["out"] =
      convert->add_option("--out,-o", convert_opts.out, "Output file (one input) or directory");
  convert_opts.given["report"] =
      convert->add_option("--report", convert_opts.report, "JSON report of energies");
  convert_opts.given["overwrite"] =
      convert->add_flag("--overwrite", convert_opts.overwrite, "Replace existing outputs");

  Overrides eval_opts;
  EvalOptions eval;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score grayscale renditions per scale");
  add_run_options(*evaluate, eval_opts);
  evaluate->add_option("color_dir", eval.color_dir, "Directory of color images")->required();
  evaluate->add_option("--gray-dir", eval.gray_dir, "Directory of grayscale candidates");
  evaluate->add_option("--label", eval.label, "Method name for --gray-dir rows");
  evaluate->add_option("--method", eval.methods, "Generate candidates (repeatable)")
      ->check(CLI::IsMember({"ours-l1", "ours-l2", "cie-y", "l-channel"}));
  evaluate->add_option("--csv", eval.csv, "Per-scale rows (default: stdout)");
  evaluate->add_option("--json", eval.json_path, "Aggregate report");

  std::string size;
  std::uint64_t seed = 1;
  CLI::App* selftest = app.add_subcommand("selftest", "Dense-oracle checks of the operators");
  selftest->add_option("--size", size, "Plane size WxH (default 8x8)");
  selftest->add_option("--seed", seed, "Random seed");

  Overrides config_opts;
  CLI::App* config = app.add_subcommand("config", "Print the resolved configuration");
  add_run_options(*config, config_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink_out;
    std::ostringstream sink_err;
    const int code = app.exit(e, sink_out, sink_err);
    out << sink_out.str();
    err << sink_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*convert) return cmd_convert(convert_opts, out, err);
    if (*evaluate) return cmd_evaluate(eval_opts, eval, out, err);
    if (*selftest) return cmd_selftest(size, seed, out);
    if (*config) {
      out << json(resolve_config(config_opts)).dump(2) << '\n';
      return kExitOk;
    }
  } catch (...) {
    const ErrorInfo info = classify(std::current_exception());
    emit_error(err, info);
    return info.code;
  }
  return kExitUsage;
}

}  // namespace c2g
