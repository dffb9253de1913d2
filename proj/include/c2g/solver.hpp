#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "c2g/colorspace.hpp"
#include "c2g/contrast.hpp"
#include "c2g/energy.hpp"

namespace c2g {

struct SolverConfig {
  EnergyParams energy;
  double cg_tol = 1e-6;       // relative residual ||M g - u|| / ||u||
  int cg_max_iters = 1000;
  int irls_iters = 10;        // outer iterations, each one inner CG solve
  double irls_tol = 1e-3;     // relative change of g between outer iterations
  bool clamp_output = true;   // clamp to [0, 100] once, after optimization
  bool precondition = true;   // spectral preconditioner; false runs plain CG
  OperatorRealization realization = OperatorRealization::Spectral;

  void validate() const;

  bool operator==(const SolverConfig&) const = default;
};

/// CG failed to reach the requested tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(double relative_residual, int iterations, int irls_iteration = -1);

  double relative_residual() const { return relative_residual_; }
  int iterations() const { return iterations_; }
  /// Outer IRLS iteration the failure happened in, -1 for a plain l2 solve.
  int irls_iteration() const { return irls_iteration_; }

 private:
  double relative_residual_;
  int iterations_;
  int irls_iteration_;
};

struct CgResult {
  Plane x;
  int iterations = 0;
  double relative_residual = 0.0;
};

using LinearMap = std::function<Plane(const Plane&)>;

/// Conjugate gradient for an SPD operator, started at x0. An empty
/// preconditioner means the identity. Stops once ||b - A x|| <= tol * ||b||
/// (the unpreconditioned residual); throws ConvergenceError after max_iters
/// iterations otherwise.
CgResult conjugate_gradient(const LinearMap& apply, const Plane& rhs, Plane x0, double tol,
                            int max_iters, const LinearMap& preconditioner = {});

/// The normal equations M g = u of the quadratic objective for one image,
/// optionally reweighted per pixel by q (IRLS). With q absent (q = 1):
///   M = diag(w) + (alpha_L + 2 alpha_AB) C^T C
///   u = diag(w) l + C^T C (alpha_L l + alpha_AB a + alpha_AB b)
/// With q every term of the energy at pixel p is scaled by q_p:
///   M_q = diag(q w) + (alpha_L + 2 alpha_AB) C^T diag(q) C.
/// The contrast responses of l, a and b are computed once at construction.
class NormalEquations {
 public:
  NormalEquations(const LabImage& lab, const ContrastConfig& cfg, const EnergyParams& params,
                  OperatorRealization realization = OperatorRealization::Spectral);
  NormalEquations(const LabImage& lab, WeightField w, const ContrastConfig& cfg,
                  const EnergyParams& params,
                  OperatorRealization realization = OperatorRealization::Spectral);

  Plane apply_M(const Plane& g, const Plane* q = nullptr) const;
  Plane rhs(const Plane* q = nullptr) const;

  /// sum_p q_p [w_p (l-g)_p^2 + alpha_L (C(l-g))_p^2 + alpha_AB (C(a-g))_p^2
  ///            + alpha_AB (C(b-g))_p^2]
  double quadratic(const Plane& g, const Plane* q = nullptr) const;

  /// Per-pixel aggregate residual used to reweight IRLS:
  /// q_p [w_p |l-g|_p + alpha_L |C(l-g)|_p + alpha_AB |C(a-g)|_p + alpha_AB |C(b-g)|_p]
  Plane weighted_residual(const Plane& g, const Plane& q) const;

  /// l1 total energy of g, same value as total_energy with norm L1.
  double l1_energy(const Plane& g) const;

  /// Gradient of the l2 energy, 2 (M g - u).
  Plane gradient(const Plane& g) const;

  const LabImage& lab() const { return lab_; }
  const WeightField& weights() const { return w_; }
  const ContrastOperator& contrast() const { return op_; }

  /// C f and C^T diag(q) C f in the configured realization.
  Plane contrast_of(const Plane& f) const;
  Plane contrast_normal(const Plane& f, const Plane* q) const;
  const EnergyParams& params() const { return params_; }

  /// Spectral approximation of M_q^{-1} using the mean of q w and of q.
  LinearMap preconditioner(const Plane* q = nullptr) const;

 private:
  LabImage lab_;
  WeightField w_;
  ContrastOperator op_;
  std::optional<SpectralContrast> spectral_;
  EnergyParams params_;
  Plane cl_;
  Plane ca_;
  Plane cb_;
};

Plane apply_M(const GrayField& g, const WeightField& w, const ContrastConfig& cfg,
              const EnergyParams& params, const Plane* q = nullptr);
Plane assemble_rhs(const LabImage& lab, const WeightField& w, const ContrastConfig& cfg,
                   const EnergyParams& params, const Plane* q = nullptr);

/// Per-pixel IRLS weights q and the residual r they were derived from.
struct IrlsState {
  Plane q;
  Plane r;
  int iteration = 0;
};

struct IrlsStep {
  int iteration = 0;
  double quadratic_at_start = 0.0;     // reweighted objective at the warm start
  double quadratic_at_solution = 0.0;  // ... and after the inner solve
  double relative_change = 0.0;
  int cg_iterations = 0;
  double cg_residual = 0.0;
  double l1_energy = 0.0;  // l1 total energy of the iterate (clamped if clamp_output)
};

struct SolveResult {
  GrayField g;
  int cg_iterations = 0;        // summed over all inner solves
  double relative_residual = 0.0;  // of the last CG solve
  std::vector<IrlsStep> irls;   // empty for l2
  std::optional<IrlsState> state;
  int selected_iteration = -1;  // IRLS iterate returned as g
};

/// l2 minimizer: CG on M g = u from g0 = L.
SolveResult solve_l2(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver);

/// l1 objective by iteratively reweighted least squares. Starts from q = 1
/// (so the first inner solve is the l2 problem) and warm-starts each inner
/// CG from the previous iterate. Returns the iterate with the lowest l1 energy.
SolveResult solve_l1(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver);

/// Dispatches on solver.energy.norm.
SolveResult solve(const LabImage& lab, const ContrastConfig& cfg, const SolverConfig& solver);

/// sRGB in, gray sRGB out.
RgbImage convert(const RgbImage& img, const ContrastConfig& cfg, const SolverConfig& solver,
                 SolveResult* details = nullptr);

}  // namespace c2g
