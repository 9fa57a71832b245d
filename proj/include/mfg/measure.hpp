#pragma once

#include <utility>
#include <vector>

#include "mfg/cost_model.hpp"
#include "mfg/trajectory.hpp"

namespace mfg {

// One support point of a measure: a trajectory together with the target
// set that defines its exit cutoff (its population's target).
struct MeasureAtom {
  Trajectory traj;
  TargetSet target;
};

// Finitely supported probability measure on trajectories. Weights are
// nonnegative and sum to 1 within 1e-12; all atoms share one time grid.
class WeightedEmpiricalMeasure {
 public:
  WeightedEmpiricalMeasure(std::vector<MeasureAtom> atoms, std::vector<double> weights);

  static WeightedEmpiricalMeasure uniform(std::vector<MeasureAtom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const MeasureAtom& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const TimeGrid& grid() const { return atoms_.front().traj.grid(); }

  // Convex combination (1 - t) * this + t * other over the disjoint union
  // of the two atom lists (no deduplication).
  WeightedEmpiricalMeasure mix(const WeightedEmpiricalMeasure& other, double t) const;

 private:
  std::vector<MeasureAtom> atoms_;
  std::vector<double> weights_;
};

// Integral of L against Q (linear in the weights).
double functional_L(const WeightedEmpiricalMeasure& q, const CostModel& model);

// Double integral of H against Q x Qt (bilinear, symmetric when Q = Qt).
double functional_H(const WeightedEmpiricalMeasure& q, const WeightedEmpiricalMeasure& qt,
                    const CostModel& model);

// Potential J(Q) = 2 L(Q) + H(Q, Q).
double functional_J(const WeightedEmpiricalMeasure& q, const CostModel& model);

// Same value computed as the double integral of L(x) + L(xt) + H(x, xt);
// an independent summation route kept for the identity tests.
double functional_J_direct(const WeightedEmpiricalMeasure& q, const CostModel& model);

// Mean field cost of one trajectory against a population measure:
// F(gamma, Q) = L(gamma) + integral of H(gamma, .) dQ.
double mean_field_cost_F(const Trajectory& traj, const TargetSet& target,
                         const WeightedEmpiricalMeasure& q, const CostModel& model);

// Both sides of the exact second-order expansion of J along the segment
// from q0 to q. lhs is the expansion remainder measured directly,
// rhs = t^2 * H(q - q0, q - q0) by bilinear expansion; the two agree to
// machine precision because J is quadratic in the weights.
std::pair<double, double> derivative_residual(const WeightedEmpiricalMeasure& q0,
                                              const WeightedEmpiricalMeasure& q, double t,
                                              const CostModel& model);

}  // namespace mfg
