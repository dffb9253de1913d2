#pragma once

#include <cstddef>
#include <memory>

#include "c2g/image.hpp"

namespace c2g::detail {

/// SIMD-aligned scratch for FFTW transforms.
class AlignedBuffer {
 public:
  explicit AlignedBuffer(std::size_t n);
  ~AlignedBuffer();
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;

  double* data() { return data_; }
  std::size_t size() const { return size_; }

 private:
  double* data_;
  std::size_t size_;
};

/// Unnormalized 2-D DCT-II (forward) and DCT-III (inverse) on a
/// width x height row-major plane; inverse(forward(x)) = 4 W H x.
/// Execution is reentrant; each call supplies its own buffer.
class Dct2 {
 public:
  Dct2(int width, int height);
  ~Dct2();
  Dct2(const Dct2&) = delete;
  Dct2& operator=(const Dct2&) = delete;

  int width() const { return width_; }
  int height() const { return height_; }
  double normalization() const { return 4.0 * width_ * height_; }

  void forward(AlignedBuffer& buf) const;
  void inverse(AlignedBuffer& buf) const;

  /// out = inverse(symbol .* forward(in)) / normalization, i.e. applies the
  /// operator diagonalized by the DCT with eigenvalues `symbol`.
  Plane filter(const Plane& in, const Plane& symbol) const;

 private:
  struct Plans;
  int width_;
  int height_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace c2g::detail
