#pragma once

#include <memory>

#include "c2g/contrast.hpp"

namespace c2g {

/// Approximate inverse of  d I + s C^T C  for scalar d > 0, s >= 0.
///
/// With reflective borders the 2-D DCT-II diagonalizes C, so this operator
/// is exactly the pointwise symbol d + s C(w)^2 in that basis. It is applied
/// to  diag(q w) + s' C^T diag(q) C  with d, s taken as means of the
/// spatially varying weights.
class SpectralPreconditioner {
 public:
  SpectralPreconditioner(const ContrastOperator& op, int width, int height, double diagonal,
                         double contrast_weight);
  ~SpectralPreconditioner();

  Plane apply(const Plane& r) const;

 private:
  Plane inverse_symbol_;
  std::shared_ptr<const detail::Dct2> dct_;
};

}  // namespace c2g
