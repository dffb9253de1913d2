#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace c2g {

// Error types. The CLI maps each of these to a stable exit code.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major plane of doubles.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int x, int y) { return data_[index(x, y)]; }
  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
  const double* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool operator==(const Plane&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Field roles. All share the Plane representation.
using ScalarField = Plane;
using GrayField = Plane;   // lightness in L* units
using WeightField = Plane;

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb8&) const = default;
};

/// 8-bit sRGB image, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb8> pixels;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb8 fill = {});

  Rgb8& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb8& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }

  /// Throws InvalidArgument unless width, height >= 1 and pixel count matches.
  void validate() const;

  bool operator==(const RgbImage&) const = default;
};

/// CIEL*a*b* planes of a decoded image.
struct LabImage {
  Plane L;
  Plane a;
  Plane b;

  int width() const { return L.width(); }
  int height() const { return L.height(); }
};

// Plane arithmetic used throughout the operators.
Plane operator+(const Plane& x, const Plane& y);
Plane operator-(const Plane& x, const Plane& y);
Plane operator*(double s, const Plane& x);
/// y += s * x
void axpy(double s, const Plane& x, Plane& y);
double dot(const Plane& x, const Plane& y);
double norm2(const Plane& x);
double norm_inf(const Plane& x);
bool all_finite(const Plane& x);

void require_same_shape(const Plane& x, const Plane& y, const char* what);

}  // namespace c2g
