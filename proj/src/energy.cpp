#include "c2g/energy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace c2g {

namespace {

constexpr double kRadius = 100.0;

}  // namespace

std::string to_string(Norm norm) { return norm == Norm::L1 ? "l1" : "l2"; }

Norm parse_norm(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "l1") return Norm::L1;
  if (lower == "l2") return Norm::L2;
  throw InvalidArgument("unknown norm '" + text + "' (expected l1 or l2)");
}

void EnergyParams::validate() const {
  if (!(alpha_L > 0.0) || !std::isfinite(alpha_L)) throw InvalidArgument("alpha_L must be > 0");
  if (!(alpha_AB > 0.0) || !std::isfinite(alpha_AB)) throw InvalidArgument("alpha_AB must be > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be > 0");
}

double color_variance_bound(double l) {
  if (!(l >= 0.0 && l <= 100.0)) {
    throw InvalidArgument("lightness must lie in [0, 100], got " + std::to_string(l));
  }
  return std::sqrt(kRadius * kRadius - 4.0 * (l - 50.0) * (l - 50.0));
}

double brightness_weight(double l, double a, double b, double epsilon) {
  const double chroma = std::min(std::hypot(a, b), kRadius);
  const double lc = std::clamp(l, 0.0, 100.0);
  const double span = 2.0 * lc - 100.0;
  const double chroma_room = std::sqrt(kRadius * kRadius - chroma * chroma);
  const double lightness_room = std::sqrt(std::max(0.0, kRadius * kRadius - span * span));
  return 1.0 / ((chroma_room + epsilon) * (lightness_room + epsilon));
}

WeightField brightness_weight(const LabImage& lab, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  WeightField w(lab.width(), lab.height());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = brightness_weight(lab.L[i], lab.a[i], lab.b[i], epsilon);
  }
  return w;
}

void require_same_shape(const GrayField& g, const LabImage& lab, const char* what) {
  require_same_shape(g, lab.L, what);
  require_same_shape(lab.a, lab.L, what);
  require_same_shape(lab.b, lab.L, what);
}

double norm_value(const Plane& x, Norm norm) {
  double sum = 0.0;
  if (norm == Norm::L1) {
    for (double v : x.values()) sum += std::abs(v);
  } else {
    for (double v : x.values()) sum += v * v;
  }
  return sum;
}

double brightness_energy(const GrayField& g, const LabImage& lab, const WeightField& w,
                         Norm norm) {
  require_same_shape(g, lab, "brightness_energy");
  require_same_shape(w, g, "brightness_energy weights");
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = lab.L[i] - g[i];
    sum += w[i] * (norm == Norm::L1 ? std::abs(d) : d * d);
  }
  return sum;
}

EnergyBreakdown contrast_energy_parts(const GrayField& g, const LabImage& lab,
                                      const ContrastOperator& op, Norm norm) {
  require_same_shape(g, lab, "contrast_energy");
  // C is linear, so C x - C g = C (x - g).
  EnergyBreakdown parts;
  parts.contrast_L = norm_value(op.apply(lab.L - g), norm);
  parts.contrast_A = norm_value(op.apply(lab.a - g), norm);
  parts.contrast_B = norm_value(op.apply(lab.b - g), norm);
  return parts;
}

double contrast_energy(const GrayField& g, const LabImage& lab, const ContrastConfig& cfg,
                       const EnergyParams& params) {
  params.validate();
  const auto parts = contrast_energy_parts(g, lab, ContrastOperator(cfg), params.norm);
  return params.alpha_L * parts.contrast_L +
         params.alpha_AB * (parts.contrast_A + parts.contrast_B);
}

EnergyBreakdown total_energy(const GrayField& g, const LabImage& lab, const ContrastOperator& op,
                             const EnergyParams& params) {
  params.validate();
  EnergyBreakdown out = contrast_energy_parts(g, lab, op, params.norm);
  out.brightness = brightness_energy(g, lab, brightness_weight(lab, params.epsilon), params.norm);
  out.total = out.brightness + params.alpha_L * out.contrast_L +
              params.alpha_AB * (out.contrast_A + out.contrast_B);
  return out;
}

EnergyBreakdown total_energy(const GrayField& g, const LabImage& lab, const ContrastConfig& cfg,
                             const EnergyParams& params) {
  return total_energy(g, lab, ContrastOperator(cfg), params);
}

}  // namespace c2g
