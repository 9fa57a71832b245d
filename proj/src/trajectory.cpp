#include "mfg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfg {

TimeGrid::TimeGrid(double horizon_, int steps_) : horizon(horizon_), steps(steps_) {
  if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon must be positive");
  if (steps < 2) throw std::invalid_argument("grid: steps must be at least 2");
}

Trajectory::Trajectory(TimeGrid grid, int dim, std::vector<double> flat_points)
    : grid_(grid), dim_(dim), pts_(std::move(flat_points)) {
  if (dim_ <= 0) throw std::invalid_argument("trajectory: dimension must be positive");
  if (pts_.size() != static_cast<std::size_t>(grid_.steps) * dim_) {
    throw std::invalid_argument("trajectory: expected " + std::to_string(grid_.steps) +
                                " points of dimension " + std::to_string(dim_));
  }
  for (double v : pts_) {
    if (!std::isfinite(v)) throw std::invalid_argument("trajectory: points must be finite");
  }
}

std::vector<double> velocity(const Trajectory& traj) {
  const int nt = traj.steps();
  const int d = traj.dim();
  const double inv_dt = 1.0 / traj.grid().dt();
  std::vector<double> vel(static_cast<std::size_t>(nt - 1) * d);
  const std::span<const double> pts = traj.flat();
  for (int k = 0; k + 1 < nt; ++k) {
    for (int c = 0; c < d; ++c) {
      vel[static_cast<std::size_t>(k) * d + c] =
          (pts[static_cast<std::size_t>(k + 1) * d + c] - pts[static_cast<std::size_t>(k) * d + c]) * inv_dt;
    }
  }
  return vel;
}

double quadrature(std::span<const double> values, double dt) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return dt * sum;
}

double smoothed_exit_time(const Trajectory& traj, const TargetSet& target,
                          const IndicatorSmoothing& s) {
  double sum = 0.0;
  for (int k = 0; k + 1 < traj.steps(); ++k) sum += chi(target, s, traj.point(k));
  return traj.grid().dt() * sum;
}

std::vector<double> survival_weight(const Trajectory& traj, const TargetSet& target,
                                    const IndicatorSmoothing& s) {
  std::vector<double> u(static_cast<std::size_t>(traj.steps() - 1));
  double running = 1.0;
  for (int k = 0; k + 1 < traj.steps(); ++k) {
    running = std::min(running, chi(target, s, traj.point(k)));
    u[static_cast<std::size_t>(k)] = running;
  }
  return u;
}

Trajectory straight_line_init(std::span<const double> x0, const TargetSet& target,
                              const TimeGrid& grid) {
  const int d = static_cast<int>(x0.size());
  const Vec goal = target.nearest_point(x0);
  std::vector<double> pts(static_cast<std::size_t>(grid.steps) * d);
  for (int k = 0; k < grid.steps; ++k) {
    const double a = static_cast<double>(k) / (grid.steps - 1);
    for (int c = 0; c < d; ++c) {
      // x0 + a (goal - x0): exact at both endpoints and for zero-length
      // segments, which keeps in-target starts bitwise constant.
      pts[static_cast<std::size_t>(k) * d + c] =
          k + 1 == grid.steps ? goal[c] : x0[c] + a * (goal[c] - x0[c]);
    }
  }
  return Trajectory(grid, d, std::move(pts));
}

}  // namespace mfg
