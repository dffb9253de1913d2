#pragma once

// Reference implementations for tests. Everything here is written from the
// definitions (explicit Gaussian samples, mirrored indexing, dense
// matrices) and shares no code with the operators under test.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c2g/contrast.hpp"
#include "c2g/image.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline int mirror(int i, int n) {
  while (i < 0 || i >= n) i = i < 0 ? -1 - i : 2 * n - 1 - i;
  return i;
}

// Pixel p = y * w + x. Entry (p, q) is the weight of input q in output p.
// Mirrored 1-D Gaussian blur on n samples, truncated at ceil(3 sigma).
inline Matrix blur_1d(int n, double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * r + 1);
  double total = 0.0;
  for (int k = -r; k <= r; ++k) total += taps[k + r] = std::exp(-k * k / (2.0 * sigma * sigma));
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = -r; k <= r; ++k) m(i, mirror(i + k, n)) += taps[k + r] / total;
  }
  return m;
}

// Dense 2-D blur on a row-major w x h plane: entry (y*w+x, y'*w+x') = By(y,y') Bx(x,x').
inline Matrix blur(int w, int h, double sigma) {
  const Matrix bx = blur_1d(w, sigma);
  const Matrix by = blur_1d(h, sigma);
  Matrix m(w * h, w * h);
  for (int y = 0; y < h; ++y) {
    for (int yy = 0; yy < h; ++yy) m.block(y * w, yy * w, w, w) = by(y, yy) * bx;
  }
  return m;
}

inline Matrix contrast(const c2g::ContrastConfig& cfg, int w, int h) {
  Matrix c = Matrix::Zero(w * h, w * h);
  for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
    if (cfg.betas[i] == 0.0) continue;
    c += cfg.betas[i] * (blur(w, h, cfg.scales[i]) - blur(w, h, 2.0 * cfg.scales[i]));
  }
  return c;
}

inline Vector vec(const c2g::Plane& p) {
  Vector v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v[static_cast<Eigen::Index>(i)] = p[i];
  return v;
}

inline c2g::Plane plane(const Vector& v, int w, int h) {
  c2g::Plane p(w, h);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = v[static_cast<Eigen::Index>(i)];
  return p;
}

inline double max_diff(const c2g::Plane& p, const Vector& v) {
  return (oracle::vec(p) - v).cwiseAbs().maxCoeff();
}

inline double max_diff(const c2g::Plane& p, const c2g::Plane& q) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
  return m;
}

inline c2g::Plane random_plane(std::mt19937_64& rng, int w, int h, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  c2g::Plane p(w, h);
  for (double& v : p.values()) v = d(rng);
  return p;
}

inline c2g::LabImage random_lab(std::mt19937_64& rng, int w, int h) {
  return {random_plane(rng, w, h, 5.0, 95.0), random_plane(rng, w, h, -60.0, 60.0),
          random_plane(rng, w, h, -60.0, 60.0)};
}

inline c2g::RgbImage random_rgb(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> d(0, 255);
  c2g::RgbImage img(w, h);
  for (auto& px : img.pixels) {
    px = {static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
          static_cast<std::uint8_t>(d(rng))};
  }
  return img;
}

// Brightness weight written out from its definition.
inline double weight(double l, double a, double b, double eps) {
  const double v = std::min(std::hypot(a, b), 100.0);
  l = std::clamp(l, 0.0, 100.0);
  return 1.0 / ((std::sqrt(100.0 * 100.0 - v * v) + eps) *
                (std::sqrt(100.0 * 100.0 - (2.0 * l - 100.0) * (2.0 * l - 100.0)) + eps));
}

inline Vector weights(const c2g::LabImage& lab, double eps) {
  Vector w(static_cast<Eigen::Index>(lab.L.size()));
  for (std::size_t i = 0; i < lab.L.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = weight(lab.L[i], lab.a[i], lab.b[i], eps);
  }
  return w;
}

// Objective as a plain function of g: brightness plus weighted contrast
// residual norms (sum of squares or of absolute values).
inline double energy(const Vector& g, const c2g::LabImage& lab, const Matrix& c, double eps,
                     double alpha_l, double alpha_ab, bool l1) {
  const Vector l = vec(lab.L), a = vec(lab.a), b = vec(lab.b), w = weights(lab, eps);
  auto n = [&](const Vector& r) { return l1 ? r.cwiseAbs().sum() : r.squaredNorm(); };
  const Vector cg = c * g;
  const double bright =
      l1 ? w.cwiseProduct((l - g).cwiseAbs()).sum() : w.cwiseProduct((l - g).cwiseAbs2()).sum();
  return bright + alpha_l * n(c * l - cg) + alpha_ab * n(c * a - cg) + alpha_ab * n(c * b - cg);
}

inline c2g::LabImage constant_lab(int w, int h, double l, double a, double b) {
  return {c2g::Plane(w, h, l), c2g::Plane(w, h, a), c2g::Plane(w, h, b)};
}

// Left/right halves of two Lab colours.
inline c2g::LabImage two_region_lab(int w, int h, double l0, double a0, double b0, double l1,
                                    double a1, double b1) {
  c2g::LabImage lab = constant_lab(w, h, l0, a0, b0);
  for (int y = 0; y < h; ++y) {
    for (int x = w / 2; x < w; ++x) {
      lab.L(x, y) = l1;
      lab.a(x, y) = a1;
      lab.b(x, y) = b1;
    }
  }
  return lab;
}

}  // namespace oracle
