#pragma once

#include <span>
#include <vector>

#include "mfg/geometry.hpp"

namespace mfg {

// Uniform grid t_k = k * dt on [0, horizon], dt = horizon / (steps - 1).
struct TimeGrid {
  double horizon = 1.0;
  int steps = 2;

  TimeGrid() = default;
  TimeGrid(double horizon_, int steps_);

  double dt() const { return horizon / (steps - 1); }
  double time(int k) const { return k * dt(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// A time-discretized path: `steps` points in R^d, stored flat. Immutable
// once built; the solver swaps whole trajectories instead of mutating.
class Trajectory {
 public:
  Trajectory(TimeGrid grid, int dim, std::vector<double> flat_points);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return dim_; }
  int steps() const { return grid_.steps; }

  std::span<const double> point(int k) const {
    return {pts_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> flat() const { return pts_; }

 private:
  TimeGrid grid_;
  int dim_;
  std::vector<double> pts_;
};

// Forward differences (x_{k+1} - x_k) / dt, flat, (steps - 1) * dim values.
std::vector<double> velocity(const Trajectory& traj);

// Left-endpoint rectangle rule: dt * sum(values).
double quadrature(std::span<const double> values, double dt);

// Approximate first entry time into the target: dt * sum_k chi(x_k) over
// k = 0..steps-2. Always in [0, horizon].
double smoothed_exit_time(const Trajectory& traj, const TargetSet& target,
                          const IndicatorSmoothing& s);

// Running minimum u_k = min_{j<=k} chi(x_j), k = 0..steps-2. Weights the
// interaction integrand so a pair stops interacting once either agent has
// entered its target.
std::vector<double> survival_weight(const Trajectory& traj, const TargetSet& target,
                                    const IndicatorSmoothing& s);

// Constant-velocity segment from x0 to the nearest target point, arriving
// exactly at the final grid time.
Trajectory straight_line_init(std::span<const double> x0, const TargetSet& target,
                              const TimeGrid& grid);

}  // namespace mfg
