#include "mfg/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace mfg {

WeightedEmpiricalMeasure::WeightedEmpiricalMeasure(std::vector<MeasureAtom> atoms,
                                                   std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw std::invalid_argument("measure: needs at least one atom");
  if (atoms_.size() != weights_.size()) {
    throw std::invalid_argument("measure: atom and weight counts differ");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("measure: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("measure: weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
  for (const MeasureAtom& a : atoms_) {
    if (!(a.traj.grid() == atoms_.front().traj.grid())) {
      throw std::invalid_argument("measure: atoms must share one time grid");
    }
  }
}

WeightedEmpiricalMeasure WeightedEmpiricalMeasure::uniform(std::vector<MeasureAtom> atoms) {
  const std::size_t n = atoms.size();
  if (n == 0) throw std::invalid_argument("measure: needs at least one atom");
  return WeightedEmpiricalMeasure(std::move(atoms), std::vector<double>(n, 1.0 / n));
}

WeightedEmpiricalMeasure WeightedEmpiricalMeasure::mix(const WeightedEmpiricalMeasure& other,
                                                       double t) const {
  if (!(grid() == other.grid())) {
    throw std::invalid_argument("measure mix: operands live on different time grids");
  }
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("measure mix: t must lie in [0, 1]");
  std::vector<MeasureAtom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  std::vector<double> weights;
  weights.reserve(atoms.size());
  for (double w : weights_) weights.push_back((1.0 - t) * w);
  for (double w : other.weights_) weights.push_back(t * w);
  return WeightedEmpiricalMeasure(std::move(atoms), std::move(weights));
}

double functional_L(const WeightedEmpiricalMeasure& q, const CostModel& model) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += q.weight(i) * individual_cost_L(model, q.atom(i).traj, q.atom(i).target);
  }
  return sum;
}

double functional_H(const WeightedEmpiricalMeasure& q, const WeightedEmpiricalMeasure& qt,
                    const CostModel& model) {
  if (!(q.grid() == qt.grid())) {
    throw std::invalid_argument("functional H: measures live on different time grids");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < qt.size(); ++j) {
      sum += q.weight(i) * qt.weight(j) *
             pairwise_cost_H(model, q.atom(i).traj, q.atom(i).target, qt.atom(j).traj,
                             qt.atom(j).target);
    }
  }
  return sum;
}

double functional_J(const WeightedEmpiricalMeasure& q, const CostModel& model) {
  return 2.0 * functional_L(q, model) + functional_H(q, q, model);
}

double functional_J_direct(const WeightedEmpiricalMeasure& q, const CostModel& model) {
  std::vector<double> l(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    l[i] = individual_cost_L(model, q.atom(i).traj, q.atom(i).target);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double h = pairwise_cost_H(model, q.atom(i).traj, q.atom(i).target, q.atom(j).traj,
                                       q.atom(j).target);
      sum += q.weight(i) * q.weight(j) * (l[i] + l[j] + h);
    }
  }
  return sum;
}

double mean_field_cost_F(const Trajectory& traj, const TargetSet& target,
                         const WeightedEmpiricalMeasure& q, const CostModel& model) {
  if (!(traj.grid() == q.grid())) {
    throw std::invalid_argument("mean field cost: trajectory and measure grids differ");
  }
  double interaction = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    interaction +=
        q.weight(j) * pairwise_cost_H(model, traj, target, q.atom(j).traj, q.atom(j).target);
  }
  return individual_cost_L(model, traj, target) + interaction;
}

std::pair<double, double> derivative_residual(const WeightedEmpiricalMeasure& q0,
                                              const WeightedEmpiricalMeasure& q, double t,
                                              const CostModel& model) {
  if (!(q0.grid() == q.grid())) {
    throw std::invalid_argument("derivative residual: measures live on different time grids");
  }
  const WeightedEmpiricalMeasure mixed = q0.mix(q, t);

  // <2 F(., q0), q - q0> over the union of atoms.
  double pairing = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    pairing += q.weight(i) *
               2.0 * mean_field_cost_F(q.atom(i).traj, q.atom(i).target, q0, model);
  }
  for (std::size_t i = 0; i < q0.size(); ++i) {
    pairing -= q0.weight(i) *
               2.0 * mean_field_cost_F(q0.atom(i).traj, q0.atom(i).target, q0, model);
  }

  const double lhs = functional_J(mixed, model) - functional_J(q0, model) - t * pairing;
  const double rhs = t * t *
                     (functional_H(q, q, model) - 2.0 * functional_H(q, q0, model) +
                      functional_H(q0, q0, model));
  return {lhs, rhs};
}

}  // namespace mfg
