#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "mfg/geometry.hpp"
#include "mfg/trajectory.hpp"

namespace mfg {

// Quadratic kinetic cost (c/2)|p|^2. Satisfies the superlinear lower
// bound ell >= alpha |p|^theta with alpha = c/2, theta = 2.
struct RunningCost {
  double coefficient = 1.0;  // c_ell

  static constexpr double theta = 2.0;
  double alpha() const { return 0.5 * coefficient; }

  double operator()(double /*t*/, std::span<const double> /*x*/, std::span<const double> p) const {
    double v2 = 0.0;
    for (double pc : p) v2 += pc * pc;
    return 0.5 * coefficient * v2;
  }
};

// Affine arrival-time penalty slope * t + offset. Nondecreasing; negative
// slopes are rejected. Slope zero is allowed (it drops the coercivity in
// time, which validate_hypotheses reports).
struct ArrivalCost {
  double slope = 1.0;   // a
  double offset = 0.0;  // b such that psi(t) >= a t - 0 + offset

  ArrivalCost() = default;
  ArrivalCost(double slope_, double offset_);

  double operator()(double t) const { return slope * t + offset; }
};

// Smoothed collision-avoidance kernel: a Gaussian of the separation times
// the positive part of a blend of the approach speed and the relative
// speed. The blend weights depend on |x - xt| / delta and sum to 1 by
// construction, so the kernel vanishes exactly when (x, p) = (xt, pt).
struct InteractionKernel {
  double amplitude = 8.0;  // A
  double sigma = 0.25;     // Gaussian width
  double delta = 0.2;      // blend radius for the direction term
  double beta_s = 50.0;    // sharpness of the smoothed max(0,.) / min(1,.)

  static constexpr double beta = 1.0;  // growth exponent: h <= C(|p| + |pt|) + slack
  double bound_constant() const { return amplitude; }
  // Uniform gap between smooth_pos and max(0, .).
  double smoothing_slack() const { return 0.2785 / beta_s; }
};

struct CostModel {
  RunningCost ell;
  ArrivalCost psi;
  InteractionKernel kernel;
  IndicatorSmoothing smoothing;
};

// x * logistic(beta_s * x): C^1, exactly 0 at 0, within 0.2785 / beta_s of
// max(0, x) everywhere.
inline double smooth_pos(double x, double beta_s) {
  const double z = beta_s * x;
  if (z >= 0.0) return x / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return x * e / (1.0 + e);
}

// Pointwise interaction cost h(x, xt, p, pt). Symmetric under swapping
// the two agents (bitwise: all primitives are even in the swap), zero
// exactly on the diagonal, and clamped to be nonnegative.
inline double eval_h(const InteractionKernel& k, std::span<const double> x,
                     std::span<const double> xt, std::span<const double> p,
                     std::span<const double> pt) {
  double dist2 = 0.0;   // |x - xt|^2
  double dot = 0.0;     // (p - pt) . (x - xt)
  double relv2 = 0.0;   // |p - pt|^2
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double dx = x[c] - xt[c];
    const double dv = p[c] - pt[c];
    dist2 += dx * dx;
    dot += dv * dx;
    relv2 += dv * dv;
  }
  const double dist = std::sqrt(dist2);
  // Positive when the two agents are closing in; left at 0 below the
  // resolvable separation, where the blend weight vanishes anyway.
  const double approach = dist < 1e-12 ? 0.0 : -dot / dist;
  const double near_w = smooth_pos(1.0 - dist / k.delta, k.beta_s);  // ~max(0, 1 - dist/delta)
  const double far_w = 1.0 - near_w;                                 // ~min(1, dist/delta)
  const double inner = far_w * approach + near_w * std::sqrt(relv2);
  const double pos = smooth_pos(inner, k.beta_s);
  if (pos <= 0.0) return 0.0;  // receding pair; also skips the Gaussian
  return k.amplitude * std::exp(-dist2 / (2.0 * k.sigma * k.sigma)) * pos;
}

// Individual cost L: rectangle-rule integral of the running cost plus the
// arrival penalty at the smoothed exit time.
double individual_cost_L(const CostModel& model, const Trajectory& traj,
                         const TargetSet& target);

// Pairwise cost H: rectangle-rule integral of eval_h weighted by both
// agents' survival weights. Symmetric in its two (trajectory, target)
// pairs; throws if the grids differ.
double pairwise_cost_H(const CostModel& model, const Trajectory& traj,
                       const TargetSet& target, const Trajectory& other,
                       const TargetSet& other_target);

// Recorded structural constants plus randomized spot checks of the
// symmetry, nonnegativity, and growth-bound properties of the kernel.
struct HypothesesReport {
  double alpha = 0.0;   // running-cost lower-bound constant
  double theta = 0.0;   // running-cost exponent
  double C = 0.0;       // kernel bound constant
  double beta = 0.0;    // kernel growth exponent
  double a = 0.0;       // arrival slope
  double b = 0.0;       // arrival lower-bound shift
  bool arrival_coercive = false;  // a > 0
  bool beta_leq_theta = false;
  int samples = 0;
  int symmetry_violations = 0;
  int negativity_violations = 0;
  int bound_violations = 0;
  int self_violations = 0;

  bool ok() const {
    return arrival_coercive && beta_leq_theta && symmetry_violations == 0 &&
           negativity_violations == 0 && bound_violations == 0 && self_violations == 0;
  }
  std::string summary() const;
};

HypothesesReport validate_hypotheses(const CostModel& model, int samples = 10000,
                                     std::uint64_t seed = 0x9e3779b97f4a7c15ull);

}  // namespace mfg
