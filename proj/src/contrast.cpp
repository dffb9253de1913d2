#include "c2g/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "dct.hpp"

namespace c2g {

namespace {

// out[x] = sum_k taps[|k|] * in[reflect(x + k)] along rows.
void filter_rows(const Plane& in, const std::vector<double>& taps, Plane& out) {
  const int w = in.width();
  const int radius = static_cast<int>(taps.size()) - 1;
  std::vector<double> padded(static_cast<std::size_t>(w) + 2 * radius);
  for (int y = 0; y < in.height(); ++y) {
    const double* src = in.row(y);
    for (int j = 0; j < static_cast<int>(padded.size()); ++j) {
      padded[j] = src[reflect_index(j - radius, w)];
    }
    double* dst = out.row(y);
    const double* center = padded.data() + radius;
    for (int x = 0; x < w; ++x) dst[x] = taps[0] * center[x];
    for (int k = 1; k <= radius; ++k) {
      const double t = taps[k];
      const double* lo = center - k;
      const double* hi = center + k;
      for (int x = 0; x < w; ++x) dst[x] += t * (lo[x] + hi[x]);
    }
  }
}

// Same filter along columns; whole rows are combined so the inner loop is
// contiguous.
void filter_cols(const Plane& in, const std::vector<double>& taps, Plane& out) {
  const int w = in.width();
  const int h = in.height();
  const int radius = static_cast<int>(taps.size()) - 1;
  for (int y = 0; y < h; ++y) {
    double* dst = out.row(y);
    const double* mid = in.row(y);
    for (int x = 0; x < w; ++x) dst[x] = taps[0] * mid[x];
    for (int k = 1; k <= radius; ++k) {
      const double t = taps[k];
      const double* lo = in.row(reflect_index(y - k, h));
      const double* hi = in.row(reflect_index(y + k, h));
      for (int x = 0; x < w; ++x) dst[x] += t * (lo[x] + hi[x]);
    }
  }
}

// Transpose of filter_rows: each input sample is spread over the extended
// line, then every extended position is folded onto the sample it mirrors.
void scatter_rows(const Plane& in, const std::vector<double>& taps, Plane& out) {
  const int w = in.width();
  const int radius = static_cast<int>(taps.size()) - 1;
  std::vector<double> extended(static_cast<std::size_t>(w) + 2 * radius);
  for (int y = 0; y < in.height(); ++y) {
    const double* src = in.row(y);
    std::fill(extended.begin(), extended.end(), 0.0);
    for (int k = -radius; k <= radius; ++k) {
      const double t = taps[std::abs(k)];
      double* dst = extended.data() + radius + k;
      for (int x = 0; x < w; ++x) dst[x] += t * src[x];
    }
    double* folded = out.row(y);
    std::fill(folded, folded + w, 0.0);
    for (int j = 0; j < static_cast<int>(extended.size()); ++j) {
      folded[reflect_index(j - radius, w)] += extended[j];
    }
  }
}

void scatter_cols(const Plane& in, const std::vector<double>& taps, Plane& out) {
  const int w = in.width();
  const int h = in.height();
  const int radius = static_cast<int>(taps.size()) - 1;
  const int rows = h + 2 * radius;
  std::vector<double> extended(static_cast<std::size_t>(rows) * w, 0.0);
  for (int y = 0; y < h; ++y) {
    const double* src = in.row(y);
    for (int k = -radius; k <= radius; ++k) {
      const double t = taps[std::abs(k)];
      double* dst = extended.data() + static_cast<std::size_t>(y + radius + k) * w;
      for (int x = 0; x < w; ++x) dst[x] += t * src[x];
    }
  }
  for (double& v : out.values()) v = 0.0;
  for (int j = 0; j < rows; ++j) {
    const double* src = extended.data() + static_cast<std::size_t>(j) * w;
    double* dst = out.row(reflect_index(j - radius, h));
    for (int x = 0; x < w; ++x) dst[x] += src[x];
  }
}

Plane blur_forward(const Plane& f, const std::vector<double>& taps) {
  Plane tmp(f.width(), f.height());
  Plane out(f.width(), f.height());
  filter_rows(f, taps, tmp);
  filter_cols(tmp, taps, out);
  return out;
}

// (V H)^T = H^T V^T.
Plane blur_adjoint(const Plane& f, const std::vector<double>& taps) {
  Plane tmp(f.width(), f.height());
  Plane out(f.width(), f.height());
  scatter_cols(f, taps, tmp);
  scatter_rows(tmp, taps, out);
  return out;
}

// Fourier transform of the symmetric kernel with one-sided taps.
double kernel_response(const std::vector<double>& taps, double w) {
  double sum = taps[0];
  for (std::size_t k = 1; k < taps.size(); ++k) sum += 2.0 * taps[k] * std::cos(k * w);
  return sum;
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("blur sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

}  // namespace

int reflect_index(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

void ContrastConfig::validate() const {
  if (scales.empty()) throw InvalidArgument("contrast config needs at least one scale");
  if (scales.size() != betas.size()) {
    throw InvalidArgument("contrast config: " + std::to_string(scales.size()) + " scales but " +
                          std::to_string(betas.size()) + " betas");
  }
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) {
      throw InvalidArgument("contrast config: scales must be positive and finite");
    }
    if (i > 0 && !(scales[i] > scales[i - 1])) {
      throw InvalidArgument("contrast config: scales must be strictly increasing");
    }
    if (!std::isfinite(betas[i])) throw InvalidArgument("contrast config: non-finite beta");
  }
  if (!(dpi > 0.0) || !(distance_cm > 0.0)) {
    throw InvalidArgument("contrast config: dpi and distance must be positive");
  }
}

ContrastConfig config_from_viewing(double dpi, double distance_cm) {
  if (!(dpi > 0.0) || !std::isfinite(dpi)) {
    throw InvalidArgument("dpi must be positive, got " + std::to_string(dpi));
  }
  if (!(distance_cm > 0.0) || !std::isfinite(distance_cm)) {
    throw InvalidArgument("viewing distance must be positive, got " + std::to_string(distance_cm));
  }
  ContrastConfig cfg;
  cfg.dpi = dpi;
  cfg.distance_cm = distance_cm;
  const double factor = (dpi / kReferenceDpi) * (distance_cm / kReferenceDistanceCm);
  for (int i = 1; i <= static_cast<int>(kDefaultBetas.size()); ++i) {
    cfg.scales.push_back(std::ldexp(factor, i));
    cfg.betas.push_back(kDefaultBetas[i - 1]);
  }
  return cfg;
}

int kernel_radius(double sigma) {
  require_sigma(sigma);
  return static_cast<int>(std::ceil(3.0 * sigma));
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = kernel_radius(sigma);
  std::vector<double> taps(radius + 1);
  double sum = 0.0;
  for (int k = 0; k <= radius; ++k) {
    taps[k] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    sum += k == 0 ? taps[k] : 2.0 * taps[k];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Plane gaussian_blur(const Plane& f, double sigma) {
  return blur_forward(f, gaussian_kernel(sigma));
}

Plane gaussian_blur_adjoint(const Plane& f, double sigma) {
  return blur_adjoint(f, gaussian_kernel(sigma));
}

Plane dog_band(const Plane& f, double sigma) {
  return gaussian_blur(f, sigma) - gaussian_blur(f, 2.0 * sigma);
}

ContrastOperator::ContrastOperator(ContrastConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  std::map<double, double> coefficients;
  for (std::size_t i = 0; i < cfg_.scales.size(); ++i) {
    coefficients[cfg_.scales[i]] += cfg_.betas[i];
    coefficients[2.0 * cfg_.scales[i]] -= cfg_.betas[i];
  }
  for (const auto& [sigma, coefficient] : coefficients) {
    if (coefficient == 0.0) continue;
    terms_.push_back({sigma, coefficient, gaussian_kernel(sigma)});
  }
  double sum = 0.0;
  for (const BlurTerm& term : terms_) sum += term.coefficient;
  dc_free_ = sum == 0.0;
}

namespace {

// Both C and its adjoint annihilate constants, so shifting the input by its
// first sample leaves the result unchanged and makes constant inputs exact.
Plane shift_by_first(const Plane& f) {
  Plane out = f;
  if (out.empty()) return out;
  const double ref = f[0];
  for (double& v : out.values()) v -= ref;
  return out;
}

}  // namespace

Plane ContrastOperator::apply(const Plane& f) const {
  const Plane in = dc_free_ ? shift_by_first(f) : f;
  Plane out(f.width(), f.height());
  for (const BlurTerm& term : terms_) axpy(term.coefficient, blur_forward(in, term.taps), out);
  return out;
}

Plane ContrastOperator::apply_adjoint(const Plane& f) const {
  const Plane in = dc_free_ ? shift_by_first(f) : f;
  Plane out(f.width(), f.height());
  for (const BlurTerm& term : terms_) axpy(term.coefficient, blur_adjoint(in, term.taps), out);
  return out;
}

double ContrastOperator::frequency_response(double wx, double wy) const {
  if (dc_free_ && wx == 0.0 && wy == 0.0) return 0.0;
  double total = 0.0;
  for (const BlurTerm& term : terms_) {
    total += term.coefficient * kernel_response(term.taps, wx) * kernel_response(term.taps, wy);
  }
  return total;
}

Plane ContrastOperator::dct_spectrum(int width, int height) const {
  Plane out(width, height);
  std::vector<double> rx(width);
  std::vector<double> ry(height);
  for (const BlurTerm& term : terms_) {
    for (int k = 0; k < width; ++k) rx[k] = kernel_response(term.taps, M_PI * k / width);
    for (int k = 0; k < height; ++k) ry[k] = kernel_response(term.taps, M_PI * k / height);
    for (int y = 0; y < height; ++y) {
      double* row = out.row(y);
      const double scale = term.coefficient * ry[y];
      for (int x = 0; x < width; ++x) row[x] += scale * rx[x];
    }
  }
  if (dc_free_ && !out.empty()) out[0] = 0.0;
  return out;
}

SpectralContrast::SpectralContrast(const ContrastOperator& op, int width, int height)
    : symbol_(op.dct_spectrum(width, height)),
      symbol_squared_(symbol_),
      dct_(std::make_shared<detail::Dct2>(width, height)) {
  for (double& v : symbol_squared_.values()) v *= v;
}

Plane SpectralContrast::apply(const Plane& f) const {
  return dct_->filter(symbol_[0] == 0.0 ? shift_by_first(f) : f, symbol_);
}

Plane SpectralContrast::apply_normal(const Plane& f, const Plane* q) const {
  if (q == nullptr) {
    return dct_->filter(symbol_[0] == 0.0 ? shift_by_first(f) : f, symbol_squared_);
  }
  require_same_shape(f, *q, "apply_normal");
  Plane cf = apply(f);
  for (std::size_t i = 0; i < cf.size(); ++i) cf[i] *= (*q)[i];
  return apply(cf);
}

Plane apply_C(const Plane& f, const ContrastConfig& cfg) { return ContrastOperator(cfg).apply(f); }

Plane apply_Ct(const Plane& f, const ContrastConfig& cfg) {
  return ContrastOperator(cfg).apply_adjoint(f);
}

}  // namespace c2g
