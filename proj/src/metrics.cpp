#include "c2g/metrics.hpp"

#include <string>

namespace c2g {

ContrastConfig single_scale_config(const ContrastConfig& cfg, int scale_index) {
  cfg.validate();
  if (scale_index < 1 || scale_index > static_cast<int>(cfg.scales.size())) {
    throw InvalidArgument("scale index " + std::to_string(scale_index) + " outside 1.." +
                          std::to_string(cfg.scales.size()));
  }
  ContrastConfig single = cfg;
  for (std::size_t i = 0; i < single.betas.size(); ++i) {
    single.betas[i] = static_cast<int>(i) + 1 == scale_index ? 1.0 : 0.0;
  }
  return single;
}

ScaleScore score_scale(const LabImage& lab, const GrayField& g, int scale_index,
                       const ContrastConfig& cfg, const EnergyParams& params) {
  params.validate();
  require_same_shape(g, lab, "pscore");
  const ContrastOperator op(single_scale_config(cfg, scale_index));
  const EnergyBreakdown parts = contrast_energy_parts(g, lab, op, Norm::L1);
  const double n = static_cast<double>(g.size());
  ScaleScore s;
  s.scale_index = scale_index;
  s.sigma_px = cfg.scales[scale_index - 1];
  s.loss_L = parts.contrast_L / n;
  s.loss_A = parts.contrast_A / n;
  s.loss_B = parts.contrast_B / n;
  s.mean_energy = params.alpha_L * s.loss_L + params.alpha_AB * (s.loss_A + s.loss_B);
  s.pscore = 1.0 / (1.0 + s.mean_energy);
  return s;
}

double pscore_at_scale(const LabImage& lab, const GrayField& g, int scale_index,
                       const ContrastConfig& cfg, const EnergyParams& params) {
  return score_scale(lab, g, scale_index, cfg, params).pscore;
}

ScoreReport full_report(const LabImage& lab, const GrayField& g, const ContrastConfig& cfg,
                        const EnergyParams& params, std::string image_id) {
  ScoreReport report;
  report.image_id = std::move(image_id);
  for (int i = 1; i <= static_cast<int>(cfg.scales.size()); ++i) {
    report.per_scale.push_back(score_scale(lab, g, i, cfg, params));
  }
  const EnergyBreakdown energy = total_energy(g, lab, cfg, params);
  report.brightness_term = energy.brightness;
  report.total_energy = energy.total;
  return report;
}

}  // namespace c2g
