#pragma once

#include <array>
#include <memory>
#include <vector>

#include "c2g/image.hpp"

namespace c2g {

namespace detail {
class Dct2;
}

/// Per-band weights of the complex contrast, finest band first.
inline constexpr std::array<double, 6> kDefaultBetas = {-4.0, 1.0, 4.0, 4.0, 1.0, -2.0};

inline constexpr double kReferenceDpi = 72.0;
inline constexpr double kReferenceDistanceCm = 60.0;

/// How the solver applies C: the separable convolutions, or the
/// equivalent DCT-domain filter.
enum class OperatorRealization { Spatial, Spectral };

/// DoG scales (pixels) and their weights. Band i compares blur(scales[i])
/// against blur(2 * scales[i]).
struct ContrastConfig {
  std::vector<double> scales;
  std::vector<double> betas;
  double dpi = kReferenceDpi;
  double distance_cm = kReferenceDistanceCm;

  /// Throws InvalidArgument unless scales are positive, strictly increasing
  /// and matched one-to-one with finite betas.
  void validate() const;

  bool operator==(const ContrastConfig&) const = default;
};

/// Scales 2^i * (dpi / 72) * (distance_cm / 60) for i = 1..6 with the
/// default betas. The 72 dpi / 60 cm pairing is the calibration anchor.
ContrastConfig config_from_viewing(double dpi, double distance_cm);

/// Truncation radius ceil(3 sigma).
int kernel_radius(double sigma);

/// One-sided taps h[0..R] of the truncated Gaussian, renormalized so the
/// full symmetric kernel sums to 1.
std::vector<double> gaussian_kernel(double sigma);

/// Position of sample i in the half-sample symmetric extension of [0, n):
/// ... c b a | a b c ... | ... c b a, repeated with period 2n.
int reflect_index(int i, int n);

/// Separable unit-DC Gaussian blur (rows, then columns). Samples beyond the
/// border are taken from the mirrored image (reflect_index).
Plane gaussian_blur(const Plane& f, double sigma);

/// Exact transpose of gaussian_blur, computed by scattering each sample
/// through the kernel and folding mirrored contributions back.
Plane gaussian_blur_adjoint(const Plane& f, double sigma);

/// gaussian_blur(f, sigma) - gaussian_blur(f, 2 sigma).
Plane dog_band(const Plane& f, double sigma);

/// Matrix-free complex contrast operator C = sum_i beta_i * DoG(sigma_i)
/// and its adjoint. Bands sharing a blur scale are merged, so a config with
/// octave-spaced scales costs one blur per distinct sigma.
///
/// Each output pixel is a sequential sum in a fixed order, independent of
/// how the operator is scheduled, so results are bit-reproducible.
class ContrastOperator {
 public:
  explicit ContrastOperator(ContrastConfig cfg);

  Plane apply(const Plane& f) const;
  Plane apply_adjoint(const Plane& f) const;

  const ContrastConfig& config() const { return cfg_; }

  /// Fourier symbol of C for an unbounded domain at angular frequencies
  /// (wx, wy) in radians per pixel.
  double frequency_response(double wx, double wy) const;

  /// frequency_response sampled on the DCT-II grid of a width x height
  /// plane, i.e. at (pi kx / width, pi ky / height).
  Plane dct_spectrum(int width, int height) const;

 private:
  struct BlurTerm {
    double sigma;
    double coefficient;
    std::vector<double> taps;
  };

  ContrastConfig cfg_;
  std::vector<BlurTerm> terms_;
  // Coefficients sum to zero, so the operator maps constants to exactly zero.
  bool dc_free_ = false;
};

/// The same operator realized in the DCT-II domain for one plane size.
/// Reflective borders make every blur diagonal there, so this is exact
/// (up to rounding) and costs two transforms per application regardless of
/// sigma. Under reflection C is symmetric, hence apply_adjoint == apply.
/// Reentrant: every call uses its own scratch buffer.
class SpectralContrast {
 public:
  SpectralContrast(const ContrastOperator& op, int width, int height);

  Plane apply(const Plane& f) const;
  Plane apply_adjoint(const Plane& f) const { return apply(f); }
  /// C^T diag(q) C f; q == nullptr means q = 1 (a single transform pair).
  Plane apply_normal(const Plane& f, const Plane* q = nullptr) const;

  const Plane& symbol() const { return symbol_; }

 private:
  Plane symbol_;
  Plane symbol_squared_;
  std::shared_ptr<const detail::Dct2> dct_;
};

Plane apply_C(const Plane& f, const ContrastConfig& cfg);
Plane apply_Ct(const Plane& f, const ContrastConfig& cfg);

}  // namespace c2g
