#include "c2g/config.hpp"

namespace c2g {

ContrastConfig RunConfig::contrast() const {
  ContrastConfig cfg = config_from_viewing(viewing.dpi, viewing.distance_cm);
  if (betas) {
    if (betas->size() != cfg.scales.size()) {
      throw InvalidArgument("contrast.betas needs " + std::to_string(cfg.scales.size()) +
                            " entries, got " + std::to_string(betas->size()));
    }
    cfg.betas = *betas;
  }
  return cfg;
}

void RunConfig::validate() const {
  contrast().validate();
  solver.validate();
}

}  // namespace c2g
