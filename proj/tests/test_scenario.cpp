#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mfg/output.hpp"
#include "mfg/scenario.hpp"

using namespace mfg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Small fast scenario: one agent crossing to the right edge, no kernel.
GameSpec tiny_spec() {
  GameSpec spec;
  spec.domain = Domain(Vec{0.0, 0.0}, Vec{1.0, 1.0});
  spec.grid = TimeGrid(3.0, 16);
  PopulationSpec pop;
  pop.count = 1;
  pop.placement = PopulationSpec::Placement::Explicit;
  pop.points = {Vec{0.0, 0.5}};
  pop.target = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);
  spec.populations = {pop};
  spec.cost.kernel.amplitude = 0.0;
  spec.solver.max_sweeps = 60;
  spec.solver.simplex_evals = 60;
  spec.solver.gradient_iters = 30;
  spec.solver.br_restarts = 1;
  spec.output.frame_times = {0.0, 1.5, 3.0};
  return spec;
}

}  // namespace

TEST_CASE("demo scenario matches the reference experiment layout") {
  const GameSpec spec = build_demo_scenario(20, TimeGrid(3.0, 100));
  CHECK(spec.total_players() == 40);
  CHECK(spec.grid.steps == 100);
  CHECK(spec.grid.horizon == 3.0);
  CHECK(spec.cost.kernel.amplitude == 8.0);
  CHECK(spec.cost.kernel.sigma == 0.25);
  CHECK(spec.cost.kernel.delta == doctest::Approx(0.2));
  CHECK(spec.cost.psi.slope == 1.0);
  CHECK(spec.cost.ell.coefficient == 1.0);
  CHECK_NOTHROW(spec.validate());

  SUBCASE("one agent per side sits at the midpoint ordinate") {
    const GameSpec one = build_demo_scenario(1, TimeGrid(3.0, 100));
    CHECK(one.populations[0].initial_points()[0] == Vec{0.0, 0.5});
    CHECK(one.populations[1].initial_points()[0] == Vec{1.0, 0.5});
  }
  SUBCASE("two agents per side: midpoint-rule ordinates 0.25 and 0.75") {
    const GameSpec two = build_demo_scenario(2, TimeGrid(3.0, 100));
    const auto pts = two.populations[0].initial_points();
    CHECK(pts[0][1] == doctest::Approx(0.25));
    CHECK(pts[1][1] == doctest::Approx(0.75));
  }
  SUBCASE("populations are mirror images across x = 1/2") {
    const auto left = spec.populations[0].initial_points();
    const auto right = spec.populations[1].initial_points();
    REQUIRE(left.size() == right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      CHECK(1.0 - left[i][0] == doctest::Approx(right[i][0]));
      CHECK(left[i][1] == right[i][1]);
    }
    CHECK(spec.populations[0].target.slab_side() == TargetSet::Side::Geq);
    CHECK(spec.populations[0].target.slab_threshold() == 1.0);
    CHECK(spec.populations[1].target.slab_side() == TargetSet::Side::Leq);
    CHECK(spec.populations[1].target.slab_threshold() == 0.0);
  }
}

TEST_CASE("json round trip preserves the spec") {
  const GameSpec spec = build_demo_scenario(3, TimeGrid(3.0, 40));
  const json j = spec_to_json(spec);
  const GameSpec back = spec_from_json(j);
  CHECK(spec_to_json(back) == j);
}

TEST_CASE("shipped demo config equals the built demo scenario") {
  const GameSpec built = build_demo_scenario(20, TimeGrid(3.0, 100));
  const GameSpec loaded = load_spec(std::string(CONFIG_DIR) + "/demo.json");
  CHECK(spec_to_json(loaded) == spec_to_json(built));
}

TEST_CASE("config validation names the offending field") {
  const GameSpec base = tiny_spec();
  SUBCASE("target outside the domain") {
    json j = spec_to_json(base);
    j["populations"][0]["target"]["threshold"] = 1.5;
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("target"), ValidationError);
  }
  SUBCASE("negative sigma") {
    json j = spec_to_json(base);
    j["cost"]["kernel"]["sigma"] = -0.25;
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("sigma"), ValidationError);
  }
  SUBCASE("start point outside the domain") {
    json j = spec_to_json(base);
    j["populations"][0]["placement"]["points"][0][0] = -2.0;
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("points"), ValidationError);
  }
  SUBCASE("zero players") {
    json j = spec_to_json(base);
    j["populations"][0]["count"] = 0;
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("count"), ValidationError);
  }
  SUBCASE("missing grid") {
    json j = spec_to_json(base);
    j.erase("grid");
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("grid"), ValidationError);
  }
}

TEST_CASE("run writes the full artifact set") {
  const fs::path out = fs::path("scenario_run_out");
  fs::remove_all(out);
  const GameSpec spec = tiny_spec();
  const RunOutput result = run(spec, out.string(), 42);

  CHECK(result.converged);
  CHECK(result.seed == 42);
  REQUIRE(result.player_costs.size() == 1);
  // zero interaction: the analytic single-agent oracle applies
  CHECK(std::abs(result.player_costs[0] - std::sqrt(2.0)) <= 0.02 * std::sqrt(2.0));

  CHECK(fs::exists(out / "trajectories.csv"));
  CHECK(fs::exists(out / "metrics.json"));
  CHECK(fs::exists(out / "config.json"));
  for (int i = 0; i < 3; ++i) {
    CHECK(fs::exists(out / "frames" / ("frame_" + std::to_string(i) + ".svg")));
  }

  SUBCASE("csv has one row per player and step, full round-trip precision") {
    std::ifstream csv(out / "trajectories.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "population,agent,k,t,x0,x1");
    int rows = 0;
    while (std::getline(csv, line)) {
      if (!line.empty()) ++rows;
    }
    CHECK(rows == spec.total_players() * spec.grid.steps);

    const GameState reloaded = load_trajectories_csv((out / "trajectories.csv").string(), spec);
    REQUIRE(reloaded.players.size() == result.state.players.size());
    for (std::size_t i = 0; i < reloaded.players.size(); ++i) {
      const auto a = reloaded.players[i].traj.flat();
      const auto b = result.state.players[i].traj.flat();
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);  // bitwise
    }
  }

  SUBCASE("metrics carries exactly the documented keys, monotone potential") {
    const json metrics = json::parse(slurp(out / "metrics.json"));
    CHECK(metrics.size() == 6);
    for (const char* key : {"potential_history", "player_costs", "exit_times", "sweeps", "seed",
                            "certificate"}) {
      CHECK(metrics.contains(key));
    }
    const auto hist = metrics["potential_history"].get<std::vector<double>>();
    for (std::size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1] + 1e-12);
    CHECK(hist.size() == metrics["sweeps"].get<std::size_t>() + 1);
    CHECK(metrics["seed"] == 42);
  }

  SUBCASE("same seed reproduces metrics.json byte for byte") {
    const fs::path out2 = fs::path("scenario_run_out2");
    fs::remove_all(out2);
    run(spec, out2.string(), 42);
    CHECK(slurp(out / "metrics.json") == slurp(out2 / "metrics.json"));
  }

  SUBCASE("verify passes on the fresh run and flags corruption") {
    CHECK(verify(spec, out.string(), 5e-2).pass);

    // corrupt one interior waypoint of the only agent
    std::ifstream csv(out / "trajectories.csv");
    std::stringstream patched;
    std::string line;
    int row = -1;
    while (std::getline(csv, line)) {
      ++row;
      if (row == 8) {
        const auto last = line.rfind(',');
        line = line.substr(0, last) + ",0.05";
      }
      patched << line << "\n";
    }
    std::ofstream(out / "trajectories.csv") << patched.str();
    const EquilibriumCertificate cert = verify(spec, out.string(), 5e-2);
    CHECK_FALSE(cert.pass);
    CHECK(cert.best_improvement[0] > 5e-2 * (1.0 + std::abs(cert.player_cost[0])));
    CHECK(verify(spec, out.string(), std::numeric_limits<double>::infinity()).pass);
  }
}

TEST_CASE("corrupt state files are rejected") {
  const fs::path dir = fs::path("scenario_bad_state");
  fs::remove_all(dir);
  fs::create_directories(dir);
  const GameSpec spec = tiny_spec();
  CHECK_THROWS_AS(load_trajectories_csv((dir / "missing.csv").string(), spec), ValidationError);
  std::ofstream(dir / "trajectories.csv") << "population,agent,k,t,x0,x1\n0,0,0,0,0,0.5\n";
  CHECK_THROWS_WITH_AS(load_trajectories_csv((dir / "trajectories.csv").string(), spec),
                       doctest::Contains("rows"), ValidationError);
}
