#pragma once

#include <string>
#include <vector>

#include "c2g/contrast.hpp"
#include "c2g/energy.hpp"

namespace c2g {

/// Contrast preservation at one DoG scale. Losses are per-pixel means of
/// |C_i x - C_i g| for x = L, a, b with the single-scale operator C_i
/// (beta_i = 1, all other betas 0).
struct ScaleScore {
  int scale_index = 0;  // 1-based, sigma_i = scales[i - 1]
  double sigma_px = 0.0;
  double loss_L = 0.0;
  double loss_A = 0.0;
  double loss_B = 0.0;
  double mean_energy = 0.0;  // alpha_L loss_L + alpha_AB (loss_A + loss_B)
  double pscore = 1.0;       // 1 / (1 + mean_energy)

  bool operator==(const ScaleScore&) const = default;
};

struct ScoreReport {
  std::string image_id;
  std::vector<ScaleScore> per_scale;  // ascending sigma
  double brightness_term = 0.0;
  double total_energy = 0.0;

  bool operator==(const ScoreReport&) const = default;
};

/// cfg with beta = 1 at scale_index (1-based) and 0 elsewhere.
ContrastConfig single_scale_config(const ContrastConfig& cfg, int scale_index);

ScaleScore score_scale(const LabImage& lab, const GrayField& g, int scale_index,
                       const ContrastConfig& cfg, const EnergyParams& params);

/// Higher is better; 1 means the scale's contrast is preserved exactly.
double pscore_at_scale(const LabImage& lab, const GrayField& g, int scale_index,
                       const ContrastConfig& cfg, const EnergyParams& params);

/// Every scale of cfg plus the brightness term and total energy of g under
/// params (in params.norm).
ScoreReport full_report(const LabImage& lab, const GrayField& g, const ContrastConfig& cfg,
                        const EnergyParams& params, std::string image_id = {});

}  // namespace c2g
