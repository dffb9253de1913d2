#include "c2g/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace c2g {

Plane::Plane(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("plane dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

RgbImage::RgbImage(int w, int h, Rgb8 fill) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw InvalidArgument("image dimensions must be positive");
  }
  pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

void RgbImage::validate() const {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be positive");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("pixel count does not match image dimensions");
  }
}

void require_same_shape(const Plane& x, const Plane& y, const char* what) {
  if (!x.same_shape(y)) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(x.width()) + "x" +
                            std::to_string(x.height()) + " vs " + std::to_string(y.width()) +
                            "x" + std::to_string(y.height()));
  }
}

Plane operator+(const Plane& x, const Plane& y) {
  require_same_shape(x, y, "plane addition");
  Plane out = x;
  axpy(1.0, y, out);
  return out;
}

Plane operator-(const Plane& x, const Plane& y) {
  require_same_shape(x, y, "plane subtraction");
  Plane out = x;
  axpy(-1.0, y, out);
  return out;
}

Plane operator*(double s, const Plane& x) {
  Plane out = x;
  for (double& v : out.values()) v *= s;
  return out;
}

void axpy(double s, const Plane& x, Plane& y) {
  require_same_shape(x, y, "axpy");
  auto xs = x.values();
  auto ys = y.values();
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] += s * xs[i];
}

double dot(const Plane& x, const Plane& y) {
  require_same_shape(x, y, "dot");
  auto xs = x.values();
  auto ys = y.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += xs[i] * ys[i];
  return sum;
}

double norm2(const Plane& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Plane& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Plane& x) {
  return std::all_of(x.values().begin(), x.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace c2g
