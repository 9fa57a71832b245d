#include "mfg/cost_model.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfg {

ArrivalCost::ArrivalCost(double slope_, double offset_) : slope(slope_), offset(offset_) {
  if (!(slope >= 0.0)) throw std::invalid_argument("arrival cost: slope must be nonnegative");
  if (!(offset >= 0.0)) throw std::invalid_argument("arrival cost: offset must be nonnegative");
}

double individual_cost_L(const CostModel& model, const Trajectory& traj,
                         const TargetSet& target) {
  const int nt = traj.steps();
  const int d = traj.dim();
  const double dt = traj.grid().dt();
  const std::vector<double> vel = velocity(traj);
  double run = 0.0;
  for (int k = 0; k + 1 < nt; ++k) {
    const std::span<const double> v(vel.data() + static_cast<std::size_t>(k) * d,
                                    static_cast<std::size_t>(d));
    run += model.ell(traj.grid().time(k), traj.point(k), v);
  }
  const double tau = smoothed_exit_time(traj, target, model.smoothing);
  return dt * run + model.psi(tau);
}

double pairwise_cost_H(const CostModel& model, const Trajectory& traj,
                       const TargetSet& target, const Trajectory& other,
                       const TargetSet& other_target) {
  if (!(traj.grid() == other.grid())) {
    throw std::invalid_argument("pairwise cost: trajectories live on different time grids");
  }
  if (traj.dim() != other.dim()) {
    throw std::invalid_argument("pairwise cost: trajectories have different dimensions");
  }
  const int nt = traj.steps();
  const int d = traj.dim();
  const std::vector<double> va = velocity(traj);
  const std::vector<double> vb = velocity(other);
  const std::vector<double> ua = survival_weight(traj, target, model.smoothing);
  const std::vector<double> ub = survival_weight(other, other_target, model.smoothing);
  double sum = 0.0;
  for (int k = 0; k + 1 < nt; ++k) {
    const std::size_t off = static_cast<std::size_t>(k) * d;
    const std::span<const double> pa(va.data() + off, static_cast<std::size_t>(d));
    const std::span<const double> pb(vb.data() + off, static_cast<std::size_t>(d));
    sum += eval_h(model.kernel, traj.point(k), other.point(k), pa, pb) * ua[k] * ub[k];
  }
  return traj.grid().dt() * sum;
}

std::string HypothesesReport::summary() const {
  std::ostringstream os;
  os << "running cost: alpha=" << alpha << " theta=" << theta << "\n"
     << "kernel bound: C=" << C << " beta=" << beta
     << (beta_leq_theta ? " (beta <= theta)" : " (VIOLATION: beta > theta)") << "\n"
     << "arrival: a=" << a << " b=" << b
     << (arrival_coercive ? "" : " (WARNING: slope is zero, no coercivity in time)") << "\n"
     << "spot checks over " << samples << " samples: "
     << symmetry_violations << " symmetry, " << negativity_violations << " negativity, "
     << bound_violations << " bound, " << self_violations << " self-interaction violations";
  return os.str();
}

HypothesesReport validate_hypotheses(const CostModel& model, int samples, std::uint64_t seed) {
  HypothesesReport rep;
  rep.alpha = model.ell.alpha();
  rep.theta = RunningCost::theta;
  rep.C = model.kernel.bound_constant();
  rep.beta = InteractionKernel::beta;
  rep.a = model.psi.slope;
  rep.b = model.psi.offset;
  rep.arrival_coercive = model.psi.slope > 0.0;
  rep.beta_leq_theta = InteractionKernel::beta <= RunningCost::theta;
  rep.samples = samples;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-1.0, 2.0);
  std::uniform_real_distribution<double> vel(-4.0, 4.0);
  const double slack = model.kernel.amplitude * model.kernel.smoothing_slack();
  Vec x(2), xt(2), p(2), pt(2);
  for (int s = 0; s < samples; ++s) {
    for (auto* v : {&x, &xt}) {
      for (double& c : *v) c = pos(rng);
    }
    for (auto* v : {&p, &pt}) {
      for (double& c : *v) c = vel(rng);
    }
    const double h = eval_h(model.kernel, x, xt, p, pt);
    const double h_swapped = eval_h(model.kernel, xt, x, pt, p);
    if (h != h_swapped) ++rep.symmetry_violations;
    if (h < 0.0) ++rep.negativity_violations;
    const double speed_sum = std::hypot(p[0], p[1]) + std::hypot(pt[0], pt[1]);
    if (h > model.kernel.amplitude * speed_sum + slack) ++rep.bound_violations;
    if (eval_h(model.kernel, x, x, p, p) != 0.0) ++rep.self_violations;
  }
  return rep;
}

}  // namespace mfg
