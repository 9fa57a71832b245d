#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfg/scenario.hpp"
#include "mfg/solver.hpp"

namespace mfg {

// Everything one solve produces, plus the written-file summary.
struct RunOutput {
  GameState state;
  std::vector<SweepReport> sweeps;
  bool converged = false;
  std::vector<double> potential_history;
  std::vector<double> player_costs;  // F_N per player at the final state
  std::vector<double> exit_times;    // smoothed exit time per player
  EquilibriumCertificate certificate;
  std::uint64_t seed = 0;
  GameSpec config_echo;
};

// Solve, certify, and write trajectories.csv, metrics.json, config.json,
// and frames/frame_<k>.svg under out_dir.
RunOutput run(const GameSpec& spec, const std::string& out_dir, std::uint64_t seed);

// Reload a previous run's trajectories and re-certify; prints per-player
// gaps to stdout and writes certificate.json next to the state.
EquilibriumCertificate verify(const GameSpec& spec, const std::string& state_dir,
                              std::optional<double> epsilon_override);

// File-level helpers (also used by the tests).
void write_trajectories_csv(const std::string& path, const GameState& state);
GameState load_trajectories_csv(const std::string& path, const GameSpec& spec);
void write_metrics_json(const std::string& path, const RunOutput& out);
void write_frames(const std::string& dir, const GameState& state,
                  const std::vector<double>& frame_times, int svg_size);

}  // namespace mfg
