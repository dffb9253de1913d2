#pragma once

#include <optional>
#include <string>
#include <vector>

#include "c2g/contrast.hpp"
#include "c2g/solver.hpp"

namespace c2g {

struct ViewingGeometry {
  double dpi = kReferenceDpi;
  double distance_cm = kReferenceDistanceCm;

  bool operator==(const ViewingGeometry&) const = default;
};

struct IoConfig {
  std::vector<std::string> inputs;
  std::string output;
  std::string report;
  bool overwrite = false;

  bool operator==(const IoConfig&) const = default;
};

/// Everything a CLI run depends on. Defaults are the reference settings:
/// 72 dpi at 60 cm, default betas, alpha_L = 0.5, alpha_AB = 1.5.
struct RunConfig {
  ViewingGeometry viewing;
  /// Replaces the default betas when set; must have one entry per scale.
  std::optional<std::vector<double>> betas;
  SolverConfig solver;
  IoConfig io;

  /// Scales derived from the viewing geometry, betas applied.
  ContrastConfig contrast() const;
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

}  // namespace c2g
