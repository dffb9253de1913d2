#include "c2g/solver.hpp"

#include "c2g/preconditioner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace c2g {

namespace {

Plane weighted(const Plane& x, const Plane* q) {
  if (q == nullptr) return x;
  require_same_shape(x, *q, "IRLS weights");
  Plane out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= (*q)[i];
  return out;
}

double relative_change(const Plane& next, const Plane& prev) {
  const double scale = norm2(prev);
  const double diff = norm2(next - prev);
  return scale > 0.0 ? diff / scale : diff;
}

void clamp_lightness(Plane& g) {
  for (double& v : g.values()) v = std::clamp(v, 0.0, 100.0);
}

}  // namespace

void SolverConfig::validate() const {
  energy.validate();
  if (!(cg_tol > 0.0 && cg_tol < 1.0)) throw InvalidArgument("cg_tol must lie in (0, 1)");
  if (cg_max_iters < 1) throw InvalidArgument("cg_max_iters must be >= 1");
  if (irls_iters < 1) throw InvalidArgument("irls_iters must be >= 1");
  if (!(irls_tol >= 0.0) || !std::isfinite(irls_tol)) {
    throw InvalidArgument("irls_tol must be non-negative");
  }
}

ConvergenceError::ConvergenceError(double relative_residual, int iterations, int irls_iteration)
    : NumericalError("conjugate gradient did not converge: relative residual " +
                     std::to_string(relative_residual) + " after " + std::to_string(iterations) +
                     " iterations" +
                     (irls_iteration >= 0
                          ? " (IRLS iteration " + std::to_string(irls_iteration) + ")"
                          : std::string())),
      relative_residual_(relative_residual),
      iterations_(iterations),
      irls_iteration_(irls_iteration) {}

CgResult conjugate_gradient(const LinearMap& apply, const Plane& rhs, Plane x0, double tol,
                            int max_iters, const LinearMap& preconditioner) {
  require_same_shape(rhs, x0, "conjugate_gradient");
  const double rhs_norm = norm2(rhs);
  CgResult result;
  if (rhs_norm == 0.0) {
    result.x = Plane(rhs.width(), rhs.height());
    return result;
  }
  result.x = std::move(x0);
  Plane r = rhs - apply(result.x);
  result.relative_residual = norm2(r) / rhs_norm;
  if (result.relative_residual <= tol) return result;

  auto precondition = [&](const Plane& v) { return preconditioner ? preconditioner(v) : v; };
  Plane z = precondition(r);
  double rz = dot(r, z);
  Plane p = z;
  for (int it = 1; it <= max_iters; ++it) {
    const Plane ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      throw NumericalError("conjugate gradient: operator is not positive definite (p^T A p = " +
                           std::to_string(pap) + ")");
    }
    const double step = rz / pap;
    axpy(step, p, result.x);
    axpy(-step, ap, r);
    result.iterations = it;
    result.relative_residual = norm2(r) / rhs_norm;
    if (result.relative_residual <= tol) {
      // Confirm with the true residual; restart from it if the recurrence drifted.
      r = rhs - apply(result.x);
      result.relative_residual = norm2(r) / rhs_norm;
      if (result.relative_residual <= tol) return result;
      z = precondition(r);
      rz = dot(r, z);
      p = z;
      continue;
    }
    z = precondition(r);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  throw ConvergenceError(result.relative_residual, result.iterations);
}

NormalEquations::NormalEquations(const LabImage& lab, const ContrastConfig& cfg,
                                 const EnergyParams& params, OperatorRealization realization)
    : NormalEquations(lab, brightness_weight(lab, params.epsilon), cfg, params, realization) {}

NormalEquations::NormalEquations(const LabImage& lab, WeightField w, const ContrastConfig& cfg,
                                 const EnergyParams& params, OperatorRealization realization)
    : lab_(lab), w_(std::move(w)), op_(cfg), params_(params) {
  params_.validate();
  require_same_shape(lab_.L, lab_, "normal equations");
  require_same_shape(w_, lab_.L, "normal equations weights");
  if (realization == OperatorRealization::Spectral) {
    spectral_.emplace(op_, lab_.width(), lab_.height());
  }
  cl_ = contrast_of(lab_.L);
  ca_ = contrast_of(lab_.a);
  cb_ = contrast_of(lab_.b);
}

Plane NormalEquations::contrast_of(const Plane& f) const {
  return spectral_ ? spectral_->apply(f) : op_.apply(f);
}

Plane NormalEquations::contrast_normal(const Plane& f, const Plane* q) const {
  if (spectral_) return spectral_->apply_normal(f, q);
  return op_.apply_adjoint(weighted(op_.apply(f), q));
}

Plane NormalEquations::apply_M(const Plane& g, const Plane* q) const {
  require_same_shape(g, w_, "apply_M");
  if (q != nullptr) require_same_shape(*q, w_, "apply_M weights");
  const double contrast_weight = params_.alpha_L + 2.0 * params_.alpha_AB;
  Plane out = contrast_normal(g, q);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double qi = q != nullptr ? (*q)[i] : 1.0;
    out[i] = qi * w_[i] * g[i] + contrast_weight * out[i];
  }
  return out;
}

Plane NormalEquations::rhs(const Plane* q) const {
  Plane target(w_.width(), w_.height());
  axpy(params_.alpha_L, cl_, target);
  axpy(params_.alpha_AB, ca_, target);
  axpy(params_.alpha_AB, cb_, target);
  Plane out = spectral_ ? spectral_->apply_adjoint(weighted(target, q))
                        : op_.apply_adjoint(weighted(target, q));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double qi = q != nullptr ? (*q)[i] : 1.0;
    out[i] += qi * w_[i] * lab_.L[i];
  }
  return out;
}

double NormalEquations::quadratic(const Plane& g, const Plane* q) const {
  require_same_shape(g, w_, "quadratic");
  const Plane cg = contrast_of(g);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double qi = q != nullptr ? (*q)[i] : 1.0;
    const double db = lab_.L[i] - g[i];
    const double dl = cl_[i] - cg[i];
    const double da = ca_[i] - cg[i];
    const double dbb = cb_[i] - cg[i];
    sum += qi * (w_[i] * db * db + params_.alpha_L * dl * dl +
                 params_.alpha_AB * (da * da + dbb * dbb));
  }
  return sum;
}

double NormalEquations::l1_energy(const Plane& g) const {
  require_same_shape(g, w_, "l1_energy");
  const Plane cg = contrast_of(g);
  double brightness = 0.0, contrast_l = 0.0, contrast_a = 0.0, contrast_b = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    brightness += w_[i] * std::abs(lab_.L[i] - g[i]);
    contrast_l += std::abs(cl_[i] - cg[i]);
    contrast_a += std::abs(ca_[i] - cg[i]);
    contrast_b += std::abs(cb_[i] - cg[i]);
  }
  return brightness + params_.alpha_L * contrast_l + params_.alpha_AB * (contrast_a + contrast_b);
}

Plane NormalEquations::weighted_residual(const Plane& g, const Plane& q) const {
  require_same_shape(g, w_, "weighted_residual");
  require_same_shape(q, w_, "weighted_residual");
  const Plane cg = contrast_of(g);
  Plane r(g.width(), g.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    r[i] = q[i] * (w_[i] * std::abs(lab_.L[i] - g[i]) +
                   params_.alpha_L * std::abs(cl_[i] - cg[i]) +
                   params_.alpha_AB * (std::abs(ca_[i] - cg[i]) + std::abs(cb_[i] - cg[i])));
  }
  return r;
}

LinearMap NormalEquations::preconditioner(const Plane* q) const {
  double mean_qw = 0.0;
  double mean_q = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    const double qi = q != nullptr ? (*q)[i] : 1.0;
    mean_qw += qi * w_[i];
    mean_q += qi;
  }
  mean_qw /= static_cast<double>(w_.size());
  mean_q /= static_cast<double>(w_.size());
  auto pc = std::make_shared<SpectralPreconditioner>(
      op_, w_.width(), w_.height(), mean_qw,
      mean_q * (params_.alpha_L + 2.0 * params_.alpha_AB));
  return [pc](const Plane& r) { return pc->apply(r); };
}

Plane NormalEquations::gradient(const Plane& g) const {
  return 2.0 * (apply_M(g) - rhs());
}

Plane apply_M(const GrayField& g, const WeightField& w, const ContrastConfig& cfg,
              const EnergyParams& params, const Plane* q) {
  params.validate();
  require_same_shape(g, w, "apply_M");
  if (q != nullptr) require_same_shape(*q, w, "apply_M weights");
  const ContrastOperator op(cfg);
  const double contrast_weight = params.alpha_L + 2.0 * params.alpha_AB;
  Plane out = op.apply_adjoint(weighted(op.apply(g), q));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double qi = q != nullptr ? (*q)[i] : 1.0;
    out[i] = qi * w[i] * g[i] + contrast_weight * out[i];
  }
  return out;
}

Plane assemble_rhs(const LabImage& lab, const WeightField& w, const ContrastConfig& cfg,
                   const EnergyParams& params, const Plane* q) {
  return NormalEquations(lab, w, cfg, params).rhs(q);
}

SolveResult solve_l2(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver) {
  solver.validate();
  const NormalEquations system(lab, cfg, solver.energy, solver.realization);
  const CgResult cg = conjugate_gradient([&](const Plane& x) { return system.apply_M(x); },
                                         system.rhs(), lab.L, solver.cg_tol, solver.cg_max_iters,
                                         solver.precondition ? system.preconditioner() : LinearMap{});
  SolveResult result;
  result.g = cg.x;
  result.cg_iterations = cg.iterations;
  result.relative_residual = cg.relative_residual;
  if (solver.clamp_output) clamp_lightness(result.g);
  return result;
}

SolveResult solve_l1(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver) {
  solver.validate();
  const NormalEquations system(lab, cfg, solver.energy, solver.realization);

  IrlsState state{Plane(lab.width(), lab.height(), 1.0), Plane(lab.width(), lab.height()), 0};
  SolveResult result;
  Plane g = lab.L;
  Plane best;
  double best_energy = INFINITY;
  for (int it = 0; it < solver.irls_iters; ++it) {
    // q0 is identically 1, so the first solve is exactly the l2 problem.
    const Plane* q = it == 0 ? nullptr : &state.q;
    IrlsStep step;
    step.iteration = it;
    step.quadratic_at_start = system.quadratic(g, q);
    CgResult cg;
    try {
      cg = conjugate_gradient([&](const Plane& x) { return system.apply_M(x, q); },
                              system.rhs(q), g, solver.cg_tol, solver.cg_max_iters,
                              solver.precondition ? system.preconditioner(q) : LinearMap{});
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.relative_residual(), e.iterations(), it);
    }
    step.quadratic_at_solution = system.quadratic(cg.x, q);
    step.relative_change = relative_change(cg.x, g);
    step.cg_iterations = cg.iterations;
    step.cg_residual = cg.relative_residual;
    result.cg_iterations += cg.iterations;
    result.relative_residual = cg.relative_residual;
    g = std::move(cg.x);

    Plane candidate = g;
    if (solver.clamp_output) clamp_lightness(candidate);
    step.l1_energy = system.l1_energy(candidate);
    if (step.l1_energy < best_energy) {
      best_energy = step.l1_energy;
      best = std::move(candidate);
      result.selected_iteration = it;
    }
    result.irls.push_back(step);

    // r_i = q_i [ ... ],  q_{i+1} = 1 / (|r_i| + 1)
    state.r = system.weighted_residual(g, state.q);
    Plane next(g.width(), g.height());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 1.0 / (std::abs(state.r[i]) + 1.0);
    state.q = std::move(next);
    state.iteration = it + 1;

    if (step.relative_change < solver.irls_tol) break;
  }
  result.g = std::move(best);
  result.state = std::move(state);
  return result;
}

SolveResult solve(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver) {
  return solver.energy.norm == Norm::L1 ? solve_l1(lab, cfg, solver)
                                        : solve_l2(lab, cfg, solver);
}

RgbImage convert(const RgbImage& img, const ContrastConfig& cfg, const SolverConfig& solver,
                 SolveResult* details) {
  SolveResult result = solve(srgb_to_lab(img), cfg, solver);
  Plane g = result.g;
  clamp_lightness(g);
  RgbImage out = gray_to_rgb(g);
  if (details != nullptr) *details = std::move(result);
  return out;
}

}  // namespace c2g
