#include "c2g/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include <Eigen/Dense>

#include "c2g/solver.hpp"

namespace c2g {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

int mirror(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

// n x n blur with sampled Gaussian taps on [-ceil(3s), ceil(3s)], unit sum,
// mirrored at both ends.
Matrix blur_1d(int n, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += taps[k + radius];
  }
  Matrix b = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = -radius; k <= radius; ++k) b(i, mirror(i + k, n)) += taps[k + radius] / sum;
  }
  return b;
}

// Row-major pixel order, index = y * width + x, so the 2-D blur is
// kron(B_rows_of_columns, B_within_row).
Matrix blur_2d(int width, int height, double sigma) {
  const Matrix by = blur_1d(height, sigma);
  const Matrix bx = blur_1d(width, sigma);
  Matrix out(width * height, width * height);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < height; ++j) out.block(i * width, j * width, width, width) = by(i, j) * bx;
  }
  return out;
}

Matrix dense_contrast(const ContrastConfig& cfg, int width, int height) {
  const int n = width * height;
  Matrix c = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
    const double s = cfg.scales[i];
    c += cfg.betas[i] * (blur_2d(width, height, s) - blur_2d(width, height, 2.0 * s));
  }
  return c;
}

Vector to_vector(const Plane& p) {
  Vector v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v[static_cast<Eigen::Index>(i)] = p[i];
  return v;
}

double max_abs_diff(const Plane& p, const Vector& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    worst = std::max(worst, std::abs(p[i] - v[static_cast<Eigen::Index>(i)]));
  }
  return worst;
}

Plane random_plane(std::mt19937_64& rng, int width, int height, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Plane p(width, height);
  for (double& v : p.values()) v = dist(rng);
  return p;
}

LabImage random_lab(std::mt19937_64& rng, int width, int height) {
  return {random_plane(rng, width, height, 0.0, 100.0),
          random_plane(rng, width, height, -80.0, 80.0),
          random_plane(rng, width, height, -80.0, 80.0)};
}

PropertyResult at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured <= tolerance, measured, tolerance};
}

}  // namespace

std::vector<PropertyResult> run_selftest(const SelftestOptions& options) {
  if (options.width < 1 || options.height < 1) {
    throw InvalidArgument("selftest size must be at least 1x1");
  }
  std::mt19937_64 rng(options.seed);
  const int w = options.width;
  const int h = options.height;
  const std::string size = std::to_string(w) + "x" + std::to_string(h);
  const ContrastConfig cfg = config_from_viewing(kReferenceDpi, kReferenceDistanceCm);
  const EnergyParams params;
  const ContrastOperator op(cfg);
  const SpectralContrast spectral(op, w, h);

  const Matrix c = dense_contrast(cfg, w, h);
  const Matrix ct = c.transpose();
  const double contrast_weight = params.alpha_L + 2.0 * params.alpha_AB;

  double err_c = 0.0, err_ct = 0.0, err_spec = 0.0, err_m = 0.0, err_u = 0.0, err_mq = 0.0;
  double err_adj = 0.0;
  for (int t = 0; t < options.fields; ++t) {
    const Plane f = random_plane(rng, w, h, -100.0, 100.0);
    const Vector fv = to_vector(f);
    err_c = std::max(err_c, max_abs_diff(apply_C(f, cfg), c * fv));
    err_ct = std::max(err_ct, max_abs_diff(apply_Ct(f, cfg), ct * fv));
    err_spec = std::max(err_spec, max_abs_diff(spectral.apply(f), c * fv));

    const LabImage lab = random_lab(rng, w, h);
    const WeightField wf = brightness_weight(lab, params.epsilon);
    const Vector wv = to_vector(wf);
    const Plane q = random_plane(rng, w, h, 0.05, 1.0);
    const Vector qv = to_vector(q);
    const Matrix m = Matrix(wv.asDiagonal()) + contrast_weight * ct * c;
    err_m = std::max(err_m, max_abs_diff(apply_M(f, wf, cfg, params), m * fv));
    const Matrix mq = Matrix((qv.cwiseProduct(wv)).asDiagonal()) +
                      contrast_weight * ct * qv.asDiagonal() * c;
    err_mq = std::max(err_mq, max_abs_diff(apply_M(f, wf, cfg, params, &q), mq * fv));

    const Vector lv = to_vector(lab.L);
    const Vector target =
        params.alpha_L * c * lv + params.alpha_AB * c * (to_vector(lab.a) + to_vector(lab.b));
    const Vector u = wv.cwiseProduct(lv) + ct * target;
    err_u = std::max(err_u, max_abs_diff(assemble_rhs(lab, wf, cfg, params), u));

    const Plane g = random_plane(rng, w, h, -100.0, 100.0);
    const double lhs = dot(apply_C(f, cfg), g);
    const double rhs = dot(f, apply_Ct(g, cfg));
    err_adj = std::max(err_adj, std::abs(lhs - rhs) / (norm2(f) * norm2(g)));
  }

  std::vector<PropertyResult> results;
  results.push_back(at_most("dense C " + size, err_c, 1e-9));
  results.push_back(at_most("dense C^T " + size, err_ct, 1e-9));
  results.push_back(at_most("dense C spectral " + size, err_spec, 1e-9));
  results.push_back(at_most("dense M " + size, err_m, 1e-9));
  results.push_back(at_most("dense M_q " + size, err_mq, 1e-9));
  results.push_back(at_most("dense rhs " + size, err_u, 1e-9));
  results.push_back(at_most("adjoint <Cf,g> = <f,C^T g> " + size, err_adj, 1e-12));

  // SPD probes and symmetry of M on a larger plane.
  {
    const int n = options.spd_size;
    const LabImage lab = random_lab(rng, n, n);
    const NormalEquations system(lab, cfg, params, OperatorRealization::Spatial);
    double min_ratio = INFINITY;
    double sym = 0.0;
    for (int t = 0; t < options.spd_probes; ++t) {
      const Plane x = random_plane(rng, n, n, -1.0, 1.0);
      const Plane y = random_plane(rng, n, n, -1.0, 1.0);
      const Plane mx = system.apply_M(x);
      min_ratio = std::min(min_ratio, dot(x, mx) / dot(x, x));
      sym = std::max(sym, std::abs(dot(mx, y) - dot(x, system.apply_M(y))) /
                              (norm2(x) * norm2(y)));
    }
    const std::string tag = std::to_string(n) + "x" + std::to_string(n);
    results.push_back({"SPD x^T M x > 0 " + tag, min_ratio > 0.0, min_ratio, 0.0});
    results.push_back(at_most("symmetry of M " + tag, sym, 1e-8));
  }

  // Gradient of the l2 energy against central differences, and the solved
  // system against a dense Cholesky solve.
  {
    const LabImage lab = random_lab(rng, w, h);
    const NormalEquations system(lab, cfg, params, OperatorRealization::Spatial);
    const Plane g = random_plane(rng, w, h, 0.0, 100.0);
    const Plane grad = system.gradient(g);
    const Plane dir = random_plane(rng, w, h, -1.0, 1.0);
    const double step = 1e-3;
    const double fd = (total_energy(g + step * dir, lab, op, params).total -
                       total_energy(g - step * dir, lab, op, params).total) /
                      (2.0 * step);
    const double analytic = dot(grad, dir);
    results.push_back(at_most("gradient vs finite differences " + size,
                              std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-300),
                              1e-5));

    const WeightField wf = brightness_weight(lab, params.epsilon);
    const Matrix m = Matrix(to_vector(wf).asDiagonal()) + contrast_weight * ct * c;
    const Vector dense = m.llt().solve(to_vector(system.rhs()));
    SolverConfig solver;
    solver.clamp_output = false;
    solver.cg_tol = 1e-12;
    solver.realization = OperatorRealization::Spatial;
    const Plane cg = solve_l2(lab, cfg, solver).g;
    results.push_back(at_most("CG vs dense solve " + size, max_abs_diff(cg, dense), 1e-6));
  }
  return results;
}

void print_results(std::ostream& out, const std::vector<PropertyResult>& results) {
  char line[256];
  for (const PropertyResult& r : results) {
    std::snprintf(line, sizeof line, "%s %-40s measured=%.3e tol=%.1e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance);
    out << line;
  }
}

}  // namespace c2g
