#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfg/cost_model.hpp"
#include "mfg/geometry.hpp"
#include "mfg/trajectory.hpp"

namespace mfg {

// One player of the N-player game. The first trajectory point equals x0
// for the whole solve.
struct PlayerState {
  int index = 0;
  int population = 0;
  Vec x0;
  Trajectory traj;
};

// The full game: geometry, per-population targets, and all players.
struct GameState {
  Domain domain;
  TimeGrid grid;
  std::vector<TargetSet> population_targets;
  std::vector<PlayerState> players;

  const TargetSet& target_of(const PlayerState& p) const {
    return population_targets[static_cast<std::size_t>(p.population)];
  }
  int player_count() const { return static_cast<int>(players.size()); }
};

// Static description of a game instance (before trajectories exist).
struct GameSetup {
  Domain domain;
  TimeGrid grid;
  std::vector<TargetSet> population_targets;
  std::vector<int> player_population;
  std::vector<Vec> player_start;
};

struct CertificationConfig {
  int restarts = 3;
  double epsilon = 1e-2;      // relative gap threshold, scaled by 1 + |F_N|
  double perturbation = 0.02; // Gaussian restart scale, relative to domain extent
};

struct SolverConfig {
  int max_sweeps = 200;
  double sweep_tol = 1e-6;    // relative per-sweep potential decrease to stop
  double accept_tol = 1e-10;  // minimum relative improvement to accept an update
  int simplex_evals = 120;    // Nelder-Mead evaluation budget
  int gradient_iters = 60;    // projected-gradient iteration budget
  int br_restarts = 2;        // extra seeded perturbed starts per best response
  double fd_step = 1e-6;      // finite-difference step, relative to domain extent
  std::uint64_t rng_seed = 0;
  bool deterministic = true;  // pin the (already sequential) reduction order
  CertificationConfig certification;

  void validate() const;
};

struct SweepReport {
  int sweep = 0;
  double potential_before = 0.0;
  double potential_after = 0.0;
  std::vector<char> accepted;                  // per player
  std::vector<double> player_delta_cost;       // F_N change per player (0 if rejected)
  std::vector<double> player_delta_potential;  // J_N change measured around each update
  double wall_seconds = 0.0;
};

struct EquilibriumCertificate {
  double epsilon = 0.0;
  bool pass = false;
  std::vector<double> player_cost;       // F_N at the certified state
  std::vector<double> best_improvement;  // largest decrease found per player
};

struct SolveResult {
  GameState state;
  std::vector<SweepReport> sweeps;
  bool converged = false;
  std::vector<double> potential_history;  // J_N at start and after each sweep
};

// Individual cost of player i against the current profile:
// F_N = L(gamma_i) + (1/N) sum_j H(gamma_i, gamma_j).
double player_cost_FN(int i, const GameState& state, const CostModel& model);

// Potential J_N = (2/N) sum_i L + (1/N^2) sum_ij H.
double potential_JN(const GameState& state, const CostModel& model);

// Box bounds for a flattened decision vector.
struct BoxBounds {
  Vec lo, hi;
};

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Derivative-free simplex search with standard reflection / expansion /
// contraction / shrink coefficients (1, 2, 0.5, 0.5). Candidates are
// projected into the bounds before evaluation; never returns a value
// worse than f(x_init).
OptimResult nelder_mead(const Objective& f, std::span<const double> x_init, int max_evals,
                        const BoxBounds& bounds);

// Monotone projected gradient with central finite differences, a spectral
// (Barzilai-Borwein) initial step and Armijo backtracking that halves the
// step until decrease or a 1e-12 step floor. Stalls return the best point
// found so far.
OptimResult projected_gradient(const Objective& f, std::span<const double> x_init, int max_iters,
                               double fd_step, const BoxBounds& bounds);

struct BestResponse {
  Trajectory traj;
  bool improved = false;
  double delta_cost = 0.0;  // F_N(new) - F_N(old), 0 when rejected
  double cost_before = 0.0;
  double cost_after = 0.0;
};

// One inner step of the coordinate descent: minimize player i's cost over
// its trajectory points 1..steps-1 (the start point stays fixed), using
// Nelder-Mead followed by projected gradient from the incumbent. The
// candidate is accepted only when it improves by more than
// accept_tol * (1 + |F_N|).
BestResponse best_response(int i, const GameState& state, const CostModel& model,
                           const SolverConfig& config);

// Gauss-Seidel best-response sweeps from the straight-line initialization
// until the per-sweep potential decrease falls below sweep_tol or
// max_sweeps is reached. The reported potential sequence is nonincreasing.
SolveResult solve(const GameSetup& setup, const CostModel& model, const SolverConfig& config);

// Bounded-effort equilibrium check: rerun the best-response machinery
// from seeded Gaussian perturbations of each player's trajectory and
// record the largest improvement found. Not a proof; a search.
EquilibriumCertificate certify_epsilon_nash(const GameState& state, const CostModel& model,
                                            const SolverConfig& config);

}  // namespace mfg
