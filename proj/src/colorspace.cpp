#include "c2g/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace c2g {

namespace {

// Linear sRGB -> XYZ (D65).
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white taken as the image of linear (1,1,1) so that neutral
// inputs land exactly on the a = b = 0 axis.
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteY = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) {
  return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

// 8-bit -> linear lookup; every decode goes through it.
const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int v = 0; v < 256; ++v) t[v] = srgb_to_linear(v / 255.0);
    return t;
  }();
  return table;
}

}  // namespace

double srgb_to_linear(double encoded) {
  return encoded <= 0.04045 ? encoded / 12.92 : std::pow((encoded + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double linear) {
  return linear <= 0.0031308 ? linear * 12.92 : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double luminance_to_lightness(double y) { return 116.0 * lab_f(y) - 16.0; }

double lightness_to_luminance(double lightness) { return lab_f_inv((lightness + 16.0) / 116.0); }

Lab srgb_to_lab(Rgb8 px) {
  const auto& lin = linear_table();
  const double r = lin[px.r];
  const double g = lin[px.g];
  const double b = lin[px.b];
  const double x = kRgbToXyz[0][0] * r + kRgbToXyz[0][1] * g + kRgbToXyz[0][2] * b;
  const double y = kRgbToXyz[1][0] * r + kRgbToXyz[1][1] * g + kRgbToXyz[1][2] * b;
  const double z = kRgbToXyz[2][0] * r + kRgbToXyz[2][1] * g + kRgbToXyz[2][2] * b;
  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  Lab out;
  out.L = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
  out.a = 500.0 * (fx - fy);
  out.b = 200.0 * (fy - fz);
  return out;
}

LabImage srgb_to_lab(const RgbImage& img) {
  img.validate();
  LabImage lab{Plane(img.width, img.height), Plane(img.width, img.height),
               Plane(img.width, img.height)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const Lab v = srgb_to_lab(img.pixels[i]);
    lab.L[i] = v.L;
    lab.a[i] = v.a;
    lab.b[i] = v.b;
  }
  return lab;
}

std::uint8_t lightness_to_gray_level(double g) {
  if (!std::isfinite(g)) throw InvalidArgument("gray field contains non-finite values");
  const double lin = lightness_to_luminance(std::clamp(g, 0.0, 100.0));
  const double encoded = std::clamp(linear_to_srgb(lin), 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(encoded * 255.0));
}

RgbImage gray_to_rgb(const GrayField& f) {
  if (f.empty()) throw InvalidArgument("empty gray field");
  RgbImage out(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::uint8_t v = lightness_to_gray_level(f[i]);
    out.pixels[i] = {v, v, v};
  }
  return out;
}

int lab_roundtrip_check(const RgbImage& img) {
  img.validate();
  int worst = 0;
  for (const Rgb8& px : img.pixels) {
    if (px.r != px.g || px.g != px.b) continue;
    const int back = lightness_to_gray_level(srgb_to_lab(px).L);
    worst = std::max(worst, std::abs(back - static_cast<int>(px.r)));
  }
  return worst;
}

GrayField cie_y_lightness(const RgbImage& img) {
  img.validate();
  const auto& lin = linear_table();
  GrayField out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const Rgb8 px = img.pixels[i];
    const double y = 0.2126 * lin[px.r] + 0.7152 * lin[px.g] + 0.0722 * lin[px.b];
    out[i] = std::clamp(luminance_to_lightness(y), 0.0, 100.0);
  }
  return out;
}

}  // namespace c2g
