#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mfg/identities.hpp"
#include "mfg/output.hpp"
#include "mfg/scenario.hpp"

namespace {

void print_run_summary(const mfg::RunOutput& out) {
  std::cout << "players: " << out.state.player_count() << ", sweeps: " << out.sweeps.size()
            << (out.converged ? " (converged)" : " (NOT converged)") << "\n";
  std::cout << "potential: " << out.potential_history.front() << " -> "
            << out.potential_history.back() << "\n";
  double max_exit = 0.0;
  for (double t : out.exit_times) max_exit = std::max(max_exit, t);
  std::cout << "largest smoothed exit time: " << max_exit << " (horizon "
            << out.state.grid.horizon << ")\n";
  std::cout << "certificate: " << (out.certificate.pass ? "pass" : "fail") << " at epsilon "
            << out.certificate.epsilon << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-player crowd motion game: best-response coordinate descent on a shared potential"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", state_dir;
  std::uint64_t seed = 0;
  bool deterministic = false;
  int demo_n = 20;
  int trials = 200;
  double epsilon = 0.0;
  bool epsilon_set = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve the game described by a config file");
  solve_cmd->add_option("--config", config_path, "Scenario config (JSON)")->required();
  solve_cmd->add_option("--out", out_dir, "Output directory");
  solve_cmd->add_option("--seed", seed, "RNG seed for the certification restarts");
  solve_cmd->add_flag("--deterministic", deterministic,
                      "Pin the deterministic reduction order (always on in this build)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Re-certify a previous run's trajectories");
  verify_cmd->add_option("--config", config_path, "Scenario config (JSON)")->required();
  verify_cmd->add_option("--state", state_dir, "Directory holding trajectories.csv")->required();
  verify_cmd->add_option("--epsilon", epsilon, "Override the certification epsilon")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { epsilon_set = true; });

  CLI::App* demo_cmd = app.add_subcommand("demo", "Run the two-population crossing scenario");
  demo_cmd->add_option("--n", demo_n, "Agents per population")->check(CLI::PositiveNumber);
  demo_cmd->add_option("--out", out_dir, "Output directory");
  demo_cmd->add_option("--seed", seed, "RNG seed for the certification restarts");

  CLI::App* ids_cmd = app.add_subcommand("check-identities",
                                         "Run the measure-level identity suite");
  ids_cmd->add_option("--trials", trials, "Number of randomized trials")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      mfg::GameSpec spec = mfg::load_spec(config_path);
      spec.solver.deterministic = deterministic || spec.solver.deterministic;
      const mfg::RunOutput out = mfg::run(spec, out_dir, seed);
      print_run_summary(out);
      return out.converged ? 0 : 2;
    }
    if (verify_cmd->parsed()) {
      mfg::GameSpec spec = mfg::load_spec(config_path);
      std::optional<double> eps;
      if (epsilon_set) eps = epsilon;
      const mfg::EquilibriumCertificate cert = mfg::verify(spec, state_dir, eps);
      return cert.pass ? 0 : 3;
    }
    if (demo_cmd->parsed()) {
      mfg::GameSpec spec = mfg::build_demo_scenario(demo_n, mfg::TimeGrid(3.0, 100));
      const mfg::RunOutput out = mfg::run(spec, out_dir, seed);
      print_run_summary(out);
      return out.converged ? 0 : 2;
    }
    // check-identities
    const mfg::IdentityReport rep = mfg::run_identity_suite(trials, 0x5eedu, &std::cout);
    std::cout << (rep.ok() ? "PASS" : "FAIL") << ": identity suite\n";
    return rep.ok() ? 0 : 1;
  } catch (const mfg::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
