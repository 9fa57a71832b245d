#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mfg/cost_model.hpp"
#include "mfg/solver.hpp"

namespace mfg {

// Config or state file problem, reported with the offending field.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One population: how many agents, where they start, what they chase.
struct PopulationSpec {
  enum class Placement { Explicit, Segment };

  int count = 1;
  Placement placement = Placement::Explicit;
  std::vector<Vec> points;  // Placement::Explicit
  Vec segment_a, segment_b; // Placement::Segment, midpoint-rule spacing
  TargetSet target = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);

  // The discretized initial positions (midpoints (j + 1/2) / count along
  // the segment for the Segment placement).
  std::vector<Vec> initial_points() const;
};

struct OutputOptions {
  std::vector<double> frame_times;  // empty: 24 uniform samples of [0, T]
  int svg_size = 800;
};

// Full scenario: geometry, grid, populations, costs, solver settings.
struct GameSpec {
  Domain domain{Vec{0.0, 0.0}, Vec{1.0, 1.0}};
  TimeGrid grid{3.0, 100};
  std::vector<PopulationSpec> populations;
  CostModel cost;
  SolverConfig solver;
  OutputOptions output;

  int total_players() const;
  void validate() const;   // throws ValidationError naming the field
  GameSetup setup() const;
  std::vector<double> effective_frame_times() const;
};

// The two-population crossing scenario: n agents per side of the unit
// square, each population targeting the opposite edge, costs and kernel
// parameters of the reference experiment.
GameSpec build_demo_scenario(int n_per_pop, const TimeGrid& grid);

// JSON round trip. Loading applies defaults for omitted fields and
// validates; errors carry the offending field's path.
GameSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const GameSpec& spec);
GameSpec load_spec(const std::string& path);

}  // namespace mfg
