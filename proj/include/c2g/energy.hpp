#pragma once

#include <string>

#include "c2g/contrast.hpp"
#include "c2g/image.hpp"

namespace c2g {

enum class Norm { L1, L2 };

std::string to_string(Norm norm);
/// Accepts "l1" / "l2" (case-insensitive).
Norm parse_norm(const std::string& text);

struct EnergyParams {
  double alpha_L = 0.5;
  double alpha_AB = 1.5;
  double epsilon = 1.0;
  Norm norm = Norm::L2;

  void validate() const;

  bool operator==(const EnergyParams&) const = default;
};

/// Unweighted parts of the objective plus the weighted total:
/// total = brightness + alpha_L * contrast_L + alpha_AB * (contrast_A + contrast_B).
/// For L2 every part is a sum of squares, for L1 a sum of absolute values.
struct EnergyBreakdown {
  double brightness = 0.0;
  double contrast_L = 0.0;
  double contrast_A = 0.0;
  double contrast_B = 0.0;
  double total = 0.0;

  bool operator==(const EnergyBreakdown&) const = default;
};

/// Largest chroma available at lightness l in the spherical gamut model,
/// sqrt(100^2 - 4 (l - 50)^2). Throws for l outside [0, 100].
double color_variance_bound(double l);

/// Brightness-fidelity weight of one pixel:
///   1 / ((sqrt(100^2 - v^2) + eps) * (sqrt(100^2 - (2l - 100)^2) + eps))
/// with chroma v = |(a, b)| clamped to 100 and l clamped to [0, 100].
double brightness_weight(double l, double a, double b, double epsilon);
WeightField brightness_weight(const LabImage& lab, double epsilon);

double brightness_energy(const GrayField& g, const LabImage& lab, const WeightField& w, Norm norm);

/// Per-channel contrast residual norms (unweighted) and their alpha-weighted sum.
EnergyBreakdown contrast_energy_parts(const GrayField& g, const LabImage& lab,
                                      const ContrastOperator& op, Norm norm);
double contrast_energy(const GrayField& g, const LabImage& lab, const ContrastConfig& cfg,
                       const EnergyParams& params);

EnergyBreakdown total_energy(const GrayField& g, const LabImage& lab, const ContrastOperator& op,
                             const EnergyParams& params);
EnergyBreakdown total_energy(const GrayField& g, const LabImage& lab, const ContrastConfig& cfg,
                             const EnergyParams& params);

/// Sum of |x| or x^2 depending on the norm.
double norm_value(const Plane& x, Norm norm);

void require_same_shape(const GrayField& g, const LabImage& lab, const char* what);

}  // namespace c2g
