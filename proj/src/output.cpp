#include "mfg/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mfg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* population_color(int pop) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return kPalette[pop % 8];
}

json certificate_to_json(const EquilibriumCertificate& cert) {
  return json{{"epsilon", cert.epsilon},
              {"pass", cert.pass},
              {"player_cost", cert.player_cost},
              {"best_improvement", cert.best_improvement}};
}

}  // namespace

void write_trajectories_csv(const std::string& path, const GameState& state) {
  std::ofstream out(path);
  if (!out) throw ValidationError("output: cannot write " + path);
  const int d = state.domain.dim();
  out << "population,agent,k,t";
  for (int c = 0; c < d; ++c) out << ",x" << c;
  out << "\n";
  for (const PlayerState& p : state.players) {
    for (int k = 0; k < state.grid.steps; ++k) {
      out << p.population << ',' << p.index << ',' << k << ',' << fmt17(state.grid.time(k));
      const std::span<const double> x = p.traj.point(k);
      for (int c = 0; c < d; ++c) out << ',' << fmt17(x[c]);
      out << "\n";
    }
  }
  if (!out) throw ValidationError("output: failed while writing " + path);
}

GameState load_trajectories_csv(const std::string& path, const GameSpec& spec) {
  std::ifstream in(path);
  if (!in) throw ValidationError("state: cannot open " + path);
  const int d = spec.domain.dim();
  const int nt = spec.grid.steps;
  const int n = spec.total_players();

  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(nt) * d,
                                                           std::numeric_limits<double>::quiet_NaN()));
  std::vector<int> population(static_cast<std::size_t>(n), -1);

  std::string line;
  if (!std::getline(in, line)) throw ValidationError("state: " + path + " is empty");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != static_cast<std::size_t>(4 + d)) {
      throw ValidationError("state: malformed row \"" + line + "\"");
    }
    try {
      const int pop = std::stoi(fields[0]);
      const int agent = std::stoi(fields[1]);
      const int k = std::stoi(fields[2]);
      if (agent < 0 || agent >= n || k < 0 || k >= nt) {
        throw ValidationError("state: row out of range \"" + line + "\"");
      }
      if (pop < 0 || pop >= static_cast<int>(spec.populations.size())) {
        throw ValidationError("state: unknown population in row \"" + line + "\"");
      }
      population[static_cast<std::size_t>(agent)] = pop;
      for (int c = 0; c < d; ++c) {
        pts[static_cast<std::size_t>(agent)][static_cast<std::size_t>(k) * d + c] =
            std::stod(fields[static_cast<std::size_t>(4 + c)]);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("state: unparsable row \"" + line + "\"");
    }
    ++rows;
  }
  if (rows != static_cast<std::size_t>(n) * nt) {
    throw ValidationError("state: expected " + std::to_string(static_cast<std::size_t>(n) * nt) +
                          " rows, found " + std::to_string(rows));
  }

  GameState state{spec.domain, spec.grid, {}, {}};
  for (const PopulationSpec& p : spec.populations) state.population_targets.push_back(p.target);
  for (int i = 0; i < n; ++i) {
    for (double v : pts[static_cast<std::size_t>(i)]) {
      if (std::isnan(v)) throw ValidationError("state: missing rows for agent " + std::to_string(i));
    }
    Vec x0(pts[static_cast<std::size_t>(i)].begin(), pts[static_cast<std::size_t>(i)].begin() + d);
    Trajectory traj(spec.grid, d, pts[static_cast<std::size_t>(i)]);
    state.players.push_back(
        PlayerState{i, population[static_cast<std::size_t>(i)], std::move(x0), std::move(traj)});
  }
  return state;
}

void write_metrics_json(const std::string& path, const RunOutput& out) {
  json j;
  j["potential_history"] = out.potential_history;
  j["player_costs"] = out.player_costs;
  j["exit_times"] = out.exit_times;
  j["sweeps"] = out.sweeps.size();
  j["seed"] = out.seed;
  j["certificate"] = certificate_to_json(out.certificate);
  std::ofstream f(path);
  if (!f) throw ValidationError("output: cannot write " + path);
  f << j.dump(2) << "\n";
}

void write_frames(const std::string& dir, const GameState& state,
                  const std::vector<double>& frame_times, int svg_size) {
  if (state.domain.dim() != 2) return;  // frames are drawn for planar games only
  fs::create_directories(dir);
  const double dt = state.grid.dt();
  const Vec& lo = state.domain.lo;
  const Vec& hi = state.domain.hi;
  const double sx = svg_size / (hi[0] - lo[0]);
  const double sy = svg_size / (hi[1] - lo[1]);

  for (std::size_t fidx = 0; fidx < frame_times.size(); ++fidx) {
    const double t = frame_times[fidx];
    int k = static_cast<int>(std::lround(t / dt));
    k = std::clamp(k, 0, state.grid.steps - 1);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_size << "\" height=\""
        << svg_size << "\" viewBox=\"0 0 " << svg_size << " " << svg_size << "\">\n";
    svg << "<rect width=\"" << svg_size << "\" height=\"" << svg_size
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    char buf[64];
    for (const PlayerState& p : state.players) {
      const char* color = population_color(p.population);
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (int s = 0; s <= k; ++s) {
        const std::span<const double> x = p.traj.point(s);
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", (x[0] - lo[0]) * sx,
                      svg_size - (x[1] - lo[1]) * sy);
        svg << buf;
      }
      svg << "\"/>\n";
      const std::span<const double> x = p.traj.point(k);
      std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"6\" fill=\"%s\"/>\n",
                    (x[0] - lo[0]) * sx, svg_size - (x[1] - lo[1]) * sy, color);
      svg << buf;
    }
    svg << "</svg>\n";

    std::ofstream f(dir + "/frame_" + std::to_string(fidx) + ".svg");
    if (!f) throw ValidationError("output: cannot write frame " + std::to_string(fidx));
    f << svg.str();
  }
}

RunOutput run(const GameSpec& spec, const std::string& out_dir, std::uint64_t seed) {
  spec.validate();
  fs::create_directories(out_dir);

  SolverConfig config = spec.solver;
  config.rng_seed = seed;

  SolveResult solved = solve(spec.setup(), spec.cost, config);
  RunOutput out{std::move(solved.state), std::move(solved.sweeps), solved.converged,
                std::move(solved.potential_history), {}, {}, {}, seed, spec};

  for (int i = 0; i < out.state.player_count(); ++i) {
    out.player_costs.push_back(player_cost_FN(i, out.state, spec.cost));
    const PlayerState& p = out.state.players[static_cast<std::size_t>(i)];
    out.exit_times.push_back(
        smoothed_exit_time(p.traj, out.state.target_of(p), spec.cost.smoothing));
  }
  out.certificate = certify_epsilon_nash(out.state, spec.cost, config);

  write_trajectories_csv(out_dir + "/trajectories.csv", out.state);
  write_metrics_json(out_dir + "/metrics.json", out);
  {
    std::ofstream f(out_dir + "/config.json");
    if (!f) throw ValidationError("output: cannot write " + out_dir + "/config.json");
    json echo = spec_to_json(spec);
    echo["solver"]["rng_seed"] = seed;
    f << echo.dump(2) << "\n";
  }
  write_frames(out_dir + "/frames", out.state, spec.effective_frame_times(), spec.output.svg_size);
  return out;
}

EquilibriumCertificate verify(const GameSpec& spec, const std::string& state_dir,
                              std::optional<double> epsilon_override) {
  spec.validate();
  GameState state = load_trajectories_csv(state_dir + "/trajectories.csv", spec);
  SolverConfig config = spec.solver;
  if (epsilon_override) config.certification.epsilon = *epsilon_override;

  const EquilibriumCertificate cert = certify_epsilon_nash(state, spec.cost, config);
  for (std::size_t i = 0; i < cert.player_cost.size(); ++i) {
    const double rel = cert.best_improvement[i] / (1.0 + std::abs(cert.player_cost[i]));
    std::cout << "player " << i << ": cost " << cert.player_cost[i] << ", best improvement "
              << cert.best_improvement[i] << " (relative " << rel << ")"
              << (rel > cert.epsilon ? "  <-- above epsilon" : "") << "\n";
  }
  std::cout << (cert.pass ? "PASS" : "FAIL") << ": epsilon-Nash certificate at epsilon = "
            << cert.epsilon << "\n";

  std::ofstream f(state_dir + "/certificate.json");
  if (!f) throw ValidationError("output: cannot write " + state_dir + "/certificate.json");
  f << certificate_to_json(cert).dump(2) << "\n";
  return cert;
}

}  // namespace mfg
