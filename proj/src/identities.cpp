#include "mfg/identities.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "mfg/geometry.hpp"

namespace mfg {

namespace {

// Random in-square trajectory: a clamped random walk from a random start.
Trajectory random_trajectory(std::mt19937_64& rng, const TimeGrid& grid) {
  std::uniform_real_distribution<double> start(0.0, 1.0);
  std::normal_distribution<double> step(0.0, 0.12);
  std::vector<double> pts(static_cast<std::size_t>(grid.steps) * 2);
  pts[0] = start(rng);
  pts[1] = start(rng);
  for (int k = 1; k < grid.steps; ++k) {
    for (int c = 0; c < 2; ++c) {
      const std::size_t idx = static_cast<std::size_t>(k) * 2 + c;
      pts[idx] = std::clamp(pts[idx - 2] + step(rng), 0.0, 1.0);
    }
  }
  return Trajectory(grid, 2, std::move(pts));
}

WeightedEmpiricalMeasure random_measure(std::mt19937_64& rng, const TimeGrid& grid) {
  std::uniform_int_distribution<int> natoms(3, 5);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  const TargetSet targets[2] = {TargetSet::slab(0, 1.0, TargetSet::Side::Geq),
                                TargetSet::slab(0, 0.0, TargetSet::Side::Leq)};
  const int n = natoms(rng);
  std::vector<MeasureAtom> atoms;
  std::vector<double> weights;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    atoms.push_back(MeasureAtom{random_trajectory(rng, grid), targets[i % 2]});
    weights.push_back(unit(rng));
    sum += weights.back();
  }
  for (double& w : weights) w /= sum;
  return WeightedEmpiricalMeasure(std::move(atoms), std::move(weights));
}

}  // namespace

IdentityReport run_identity_suite(int trials, std::uint64_t seed, std::ostream* log) {
  IdentityReport rep;
  rep.trials = trials;

  const TimeGrid grid(1.0, 9);
  const CostModel model;  // reference parameters
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < trials; ++trial) {
    const WeightedEmpiricalMeasure q0 = random_measure(rng, grid);
    const WeightedEmpiricalMeasure q = random_measure(rng, grid);

    // Mixture parameter sweeps the interesting range, including t = 1 and
    // a small-step case.
    double t;
    switch (trial % 3) {
      case 0: t = 1.0; break;
      case 1: t = 1e-3; break;
      default: t = unit(rng);
    }
    if (t <= 0.0) t = 0.5;

    const auto [lhs, rhs] = derivative_residual(q0, q, t, model);
    rep.max_derivative_residual =
        std::max(rep.max_derivative_residual, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));

    const double j_bilinear = functional_J(q, model);
    const double j_direct = functional_J_direct(q, model);
    rep.max_j_route_residual =
        std::max(rep.max_j_route_residual,
                 std::abs(j_bilinear - j_direct) / std::max({std::abs(j_bilinear),
                                                             std::abs(j_direct), 1e-30}));

    // Weight linearity of L and bilinearity of H under the mixture.
    const WeightedEmpiricalMeasure mixed = q0.mix(q, t);
    const double l_mix = functional_L(mixed, model);
    const double l_expected = (1.0 - t) * functional_L(q0, model) + t * functional_L(q, model);
    const double h_mix = functional_H(mixed, mixed, model);
    const double h_expected = (1.0 - t) * (1.0 - t) * functional_H(q0, q0, model) +
                              2.0 * t * (1.0 - t) * functional_H(q0, q, model) +
                              t * t * functional_H(q, q, model);
    rep.max_linearity_residual = std::max(
        {rep.max_linearity_residual, std::abs(l_mix - l_expected) / std::max(1.0, std::abs(l_mix)),
         std::abs(h_mix - h_expected) / std::max(1.0, std::abs(h_mix))});
  }

  if (log) {
    *log << "identity suite over " << trials << " trials\n"
         << "  max derivative expansion residual: " << rep.max_derivative_residual
         << "  (tolerance 1e-10)\n"
         << "  max J summation-route residual:    " << rep.max_j_route_residual
         << "  (tolerance 1e-12)\n"
         << "  max weight-linearity residual:     " << rep.max_linearity_residual
         << "  (tolerance 1e-12)\n";
  }
  return rep;
}

}  // namespace mfg
