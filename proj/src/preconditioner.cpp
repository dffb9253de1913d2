#include "c2g/preconditioner.hpp"

#include "dct.hpp"

namespace c2g {

SpectralPreconditioner::SpectralPreconditioner(const ContrastOperator& op, int width, int height,
                                               double diagonal, double contrast_weight)
    : inverse_symbol_(op.dct_spectrum(width, height)),
      dct_(std::make_shared<detail::Dct2>(width, height)) {
  if (!(diagonal > 0.0) || !(contrast_weight >= 0.0)) {
    throw InvalidArgument("preconditioner needs diagonal > 0 and contrast weight >= 0");
  }
  for (double& v : inverse_symbol_.values()) v = 1.0 / (diagonal + contrast_weight * v * v);
}

SpectralPreconditioner::~SpectralPreconditioner() = default;

Plane SpectralPreconditioner::apply(const Plane& r) const {
  return dct_->filter(r, inverse_symbol_);
}

}  // namespace c2g
