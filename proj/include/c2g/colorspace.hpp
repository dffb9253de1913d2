#pragma once

#include "c2g/image.hpp"

namespace c2g {

// sRGB (IEC 61966-2-1) <-> CIEL*a*b* under D65, 2 degree observer.

struct Lab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

double srgb_to_linear(double encoded);
double linear_to_srgb(double linear);

Lab srgb_to_lab(Rgb8 px);
LabImage srgb_to_lab(const RgbImage& img);

/// Relative luminance Y/Yn of a linear-light value -> L*.
double luminance_to_lightness(double y);
/// Inverse of luminance_to_lightness.
double lightness_to_luminance(double lightness);

/// 8-bit gray level whose sRGB encoding has lightness L* = g.
/// Values outside [0,100] are clamped; non-finite values throw.
std::uint8_t lightness_to_gray_level(double g);

/// Encodes a lightness field as a gray sRGB image (R = G = B).
RgbImage gray_to_rgb(const GrayField& f);

/// Max per-channel 8-bit error of gray_to_rgb(srgb_to_lab(img).L) over the
/// gray (R = G = B) pixels of img. Returns 0 if img has no gray pixels.
int lab_roundtrip_check(const RgbImage& img);

/// CIE Y of the linearized pixel, encoded as L*. Used by the cie-y baseline.
GrayField cie_y_lightness(const RgbImage& img);

}  // namespace c2g
