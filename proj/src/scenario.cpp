#include "mfg/scenario.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace mfg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double num_or(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return get_num(*it, path + "." + key);
}

int int_or(const json& j, const std::string& path, const char* key, int fallback) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) fail(path + "." + key, "expected an integer");
  return it->get<int>();
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Vec get_vec(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
  Vec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(get_num(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return v;
}

TargetSet target_from_json(const json& j, const std::string& path) {
  const std::string type = get_str(member(j, path, "type"), path + ".type");
  try {
    if (type == "slab") {
      const std::string side = get_str(member(j, path, "side"), path + ".side");
      if (side != "geq" && side != "leq") fail(path + ".side", "expected \"geq\" or \"leq\"");
      return TargetSet::slab(int_or(j, path, "coord", 0),
                             get_num(member(j, path, "threshold"), path + ".threshold"),
                             side == "geq" ? TargetSet::Side::Geq : TargetSet::Side::Leq);
    }
    if (type == "box") {
      return TargetSet::box(get_vec(member(j, path, "lo"), path + ".lo"),
                            get_vec(member(j, path, "hi"), path + ".hi"));
    }
    if (type == "ball") {
      return TargetSet::ball(get_vec(member(j, path, "center"), path + ".center"),
                             get_num(member(j, path, "radius"), path + ".radius"));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".type", "unknown target type \"" + type + "\"");
}

json target_to_json(const TargetSet& t) {
  json j;
  switch (t.kind()) {
    case TargetSet::Kind::Slab:
      j["type"] = "slab";
      j["coord"] = t.slab_coord();
      j["threshold"] = t.slab_threshold();
      j["side"] = t.slab_side() == TargetSet::Side::Geq ? "geq" : "leq";
      break;
    case TargetSet::Kind::Box:
      j["type"] = "box";
      j["lo"] = t.box_lo();
      j["hi"] = t.box_hi();
      break;
    case TargetSet::Kind::Ball:
      j["type"] = "ball";
      j["center"] = t.ball_center();
      j["radius"] = t.ball_radius();
      break;
  }
  return j;
}

}  // namespace

std::vector<Vec> PopulationSpec::initial_points() const {
  if (placement == Placement::Explicit) return points;
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = (i + 0.5) / count;
    Vec p(segment_a.size());
    for (std::size_t c = 0; c < p.size(); ++c) {
      p[c] = (1.0 - a) * segment_a[c] + a * segment_b[c];
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

int GameSpec::total_players() const {
  int n = 0;
  for (const PopulationSpec& p : populations) n += p.count;
  return n;
}

void GameSpec::validate() const {
  if (populations.empty()) throw ValidationError("populations: at least one population required");
  for (std::size_t i = 0; i < populations.size(); ++i) {
    const std::string path = "populations[" + std::to_string(i) + "]";
    const PopulationSpec& pop = populations[i];
    if (pop.count < 1) throw ValidationError(path + ".count: must be at least 1");
    try {
      pop.target.check_within(domain);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(path + "." + e.what());
    }
    const std::vector<Vec> pts = pop.initial_points();
    if (static_cast<int>(pts.size()) != pop.count) {
      throw ValidationError(path + ".points: expected " + std::to_string(pop.count) + " points");
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (static_cast<int>(pts[k].size()) != domain.dim()) {
        throw ValidationError(path + ".points[" + std::to_string(k) + "]: wrong dimension");
      }
      if (!domain.contains(pts[k])) {
        throw ValidationError(path + ".points[" + std::to_string(k) + "]: outside the domain");
      }
    }
  }
  if (!(cost.ell.coefficient > 0.0)) throw ValidationError("cost.running.coefficient: must be positive");
  if (!(cost.psi.slope >= 0.0)) throw ValidationError("cost.arrival.slope: must be nonnegative");
  if (!(cost.psi.offset >= 0.0)) throw ValidationError("cost.arrival.offset: must be nonnegative");
  if (!(cost.kernel.amplitude >= 0.0)) throw ValidationError("cost.kernel.amplitude: must be nonnegative");
  if (!(cost.kernel.sigma > 0.0)) throw ValidationError("cost.kernel.sigma: must be positive");
  if (!(cost.kernel.delta > 0.0)) throw ValidationError("cost.kernel.delta: must be positive");
  if (!(cost.kernel.beta_s > 0.0)) throw ValidationError("cost.kernel.beta_s: must be positive");
  if (!(cost.smoothing.rho > 0.0)) throw ValidationError("cost.smoothing.rho: must be positive");
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  for (double t : output.frame_times) {
    if (!(t >= 0.0 && t <= grid.horizon)) {
      throw ValidationError("output.frame_times: times must lie in [0, horizon]");
    }
  }
}

GameSetup GameSpec::setup() const {
  GameSetup s{domain, grid, {}, {}, {}};
  for (const PopulationSpec& pop : populations) s.population_targets.push_back(pop.target);
  for (std::size_t p = 0; p < populations.size(); ++p) {
    for (Vec& x0 : populations[p].initial_points()) {
      s.player_population.push_back(static_cast<int>(p));
      s.player_start.push_back(std::move(x0));
    }
  }
  return s;
}

std::vector<double> GameSpec::effective_frame_times() const {
  if (!output.frame_times.empty()) return output.frame_times;
  std::vector<double> times;
  times.reserve(24);
  for (int i = 0; i < 24; ++i) times.push_back(grid.horizon * i / 23.0);
  return times;
}

GameSpec build_demo_scenario(int n_per_pop, const TimeGrid& grid) {
  if (n_per_pop < 1) throw ValidationError("demo: n_per_pop must be at least 1");
  GameSpec spec;
  spec.domain = Domain(Vec{0.0, 0.0}, Vec{1.0, 1.0});
  spec.grid = grid;

  PopulationSpec left;
  left.count = n_per_pop;
  left.placement = PopulationSpec::Placement::Segment;
  left.segment_a = {0.0, 0.0};
  left.segment_b = {0.0, 1.0};
  left.target = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);

  PopulationSpec right;
  right.count = n_per_pop;
  right.placement = PopulationSpec::Placement::Segment;
  right.segment_a = {1.0, 0.0};
  right.segment_b = {1.0, 1.0};
  right.target = TargetSet::slab(0, 0.0, TargetSet::Side::Leq);

  spec.populations = {std::move(left), std::move(right)};
  // Best-response restarts keep shaving microscopic amounts off the
  // potential long after the profile stops moving; the demo stops at a
  // coarser tolerance and leaves the equilibrium claim to certification.
  spec.solver.sweep_tol = 1e-4;
  spec.output.frame_times = {0.0, 0.24, 0.36, 0.76};
  return spec;
}

GameSpec spec_from_json(const json& j) {
  GameSpec spec;
  try {
    spec.domain = Domain(get_vec(member(member(j, "", "domain"), "domain", "lo"), "domain.lo"),
                         get_vec(member(member(j, "", "domain"), "domain", "hi"), "domain.hi"));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("domain: ") + e.what());
  }
  {
    const json& g = member(j, "", "grid");
    try {
      spec.grid = TimeGrid(get_num(member(g, "grid", "horizon"), "grid.horizon"),
                           int_or(g, "grid", "steps", 100));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("grid: ") + e.what());
    }
  }
  {
    const json& pops = member(j, "", "populations");
    if (!pops.is_array() || pops.empty()) fail("populations", "expected a nonempty array");
    for (std::size_t i = 0; i < pops.size(); ++i) {
      const std::string path = "populations[" + std::to_string(i) + "]";
      const json& pj = pops[i];
      PopulationSpec pop;
      pop.count = int_or(pj, path, "count", 1);
      const json& placement = member(pj, path, "placement");
      const std::string type =
          get_str(member(placement, path + ".placement", "type"), path + ".placement.type");
      if (type == "explicit") {
        pop.placement = PopulationSpec::Placement::Explicit;
        const json& pts = member(placement, path + ".placement", "points");
        if (!pts.is_array()) fail(path + ".placement.points", "expected an array");
        for (std::size_t k = 0; k < pts.size(); ++k) {
          pop.points.push_back(
              get_vec(pts[k], path + ".placement.points[" + std::to_string(k) + "]"));
        }
        if (pop.points.size() != static_cast<std::size_t>(pop.count)) {
          fail(path + ".placement.points", "point count must equal count");
        }
      } else if (type == "segment") {
        pop.placement = PopulationSpec::Placement::Segment;
        pop.segment_a = get_vec(member(placement, path + ".placement", "a"), path + ".placement.a");
        pop.segment_b = get_vec(member(placement, path + ".placement", "b"), path + ".placement.b");
      } else {
        fail(path + ".placement.type", "expected \"explicit\" or \"segment\"");
      }
      pop.target = target_from_json(member(pj, path, "target"), path + ".target");
      spec.populations.push_back(std::move(pop));
    }
  }
  if (j.contains("cost")) {
    const json& c = j["cost"];
    if (c.contains("running")) {
      spec.cost.ell.coefficient = num_or(c["running"], "cost.running", "coefficient", 1.0);
    }
    if (c.contains("arrival")) {
      try {
        spec.cost.psi = ArrivalCost(num_or(c["arrival"], "cost.arrival", "slope", 1.0),
                                    num_or(c["arrival"], "cost.arrival", "offset", 0.0));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("cost.arrival: ") + e.what());
      }
    }
    if (c.contains("kernel")) {
      const json& k = c["kernel"];
      spec.cost.kernel.amplitude = num_or(k, "cost.kernel", "amplitude", 8.0);
      spec.cost.kernel.sigma = num_or(k, "cost.kernel", "sigma", 0.25);
      spec.cost.kernel.delta = num_or(k, "cost.kernel", "delta", 0.2);
      spec.cost.kernel.beta_s = num_or(k, "cost.kernel", "beta_s", 50.0);
    }
    if (c.contains("smoothing")) {
      spec.cost.smoothing.rho = num_or(c["smoothing"], "cost.smoothing", "rho", 0.05);
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    spec.solver.max_sweeps = int_or(s, "solver", "max_sweeps", spec.solver.max_sweeps);
    spec.solver.sweep_tol = num_or(s, "solver", "sweep_tol", spec.solver.sweep_tol);
    spec.solver.accept_tol = num_or(s, "solver", "accept_tol", spec.solver.accept_tol);
    spec.solver.simplex_evals = int_or(s, "solver", "simplex_evals", spec.solver.simplex_evals);
    spec.solver.gradient_iters = int_or(s, "solver", "gradient_iters", spec.solver.gradient_iters);
    spec.solver.br_restarts = int_or(s, "solver", "br_restarts", spec.solver.br_restarts);
    spec.solver.fd_step = num_or(s, "solver", "fd_step", spec.solver.fd_step);
    if (s.contains("rng_seed")) {
      if (!s["rng_seed"].is_number_unsigned()) fail("solver.rng_seed", "expected an unsigned integer");
      spec.solver.rng_seed = s["rng_seed"].get<std::uint64_t>();
    }
    if (s.contains("certification")) {
      const json& cert = s["certification"];
      spec.solver.certification.restarts =
          int_or(cert, "solver.certification", "restarts", spec.solver.certification.restarts);
      spec.solver.certification.epsilon =
          num_or(cert, "solver.certification", "epsilon", spec.solver.certification.epsilon);
      spec.solver.certification.perturbation = num_or(
          cert, "solver.certification", "perturbation", spec.solver.certification.perturbation);
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (o.contains("frame_times")) {
      spec.output.frame_times = get_vec(o["frame_times"], "output.frame_times");
    }
    spec.output.svg_size = int_or(o, "output", "svg_size", spec.output.svg_size);
  }
  spec.validate();
  return spec;
}

json spec_to_json(const GameSpec& spec) {
  json j;
  j["domain"] = {{"lo", spec.domain.lo}, {"hi", spec.domain.hi}};
  j["grid"] = {{"horizon", spec.grid.horizon}, {"steps", spec.grid.steps}};
  j["populations"] = json::array();
  for (const PopulationSpec& pop : spec.populations) {
    json pj;
    pj["count"] = pop.count;
    if (pop.placement == PopulationSpec::Placement::Explicit) {
      pj["placement"] = {{"type", "explicit"}, {"points", pop.points}};
    } else {
      pj["placement"] = {{"type", "segment"}, {"a", pop.segment_a}, {"b", pop.segment_b}};
    }
    pj["target"] = target_to_json(pop.target);
    j["populations"].push_back(std::move(pj));
  }
  j["cost"] = {{"running", {{"coefficient", spec.cost.ell.coefficient}}},
               {"arrival", {{"slope", spec.cost.psi.slope}, {"offset", spec.cost.psi.offset}}},
               {"kernel",
                {{"amplitude", spec.cost.kernel.amplitude},
                 {"sigma", spec.cost.kernel.sigma},
                 {"delta", spec.cost.kernel.delta},
                 {"beta_s", spec.cost.kernel.beta_s}}},
               {"smoothing", {{"rho", spec.cost.smoothing.rho}}}};
  j["solver"] = {{"max_sweeps", spec.solver.max_sweeps},
                 {"sweep_tol", spec.solver.sweep_tol},
                 {"accept_tol", spec.solver.accept_tol},
                 {"simplex_evals", spec.solver.simplex_evals},
                 {"gradient_iters", spec.solver.gradient_iters},
                 {"br_restarts", spec.solver.br_restarts},
                 {"fd_step", spec.solver.fd_step},
                 {"rng_seed", spec.solver.rng_seed},
                 {"certification",
                  {{"restarts", spec.solver.certification.restarts},
                   {"epsilon", spec.solver.certification.epsilon},
                   {"perturbation", spec.solver.certification.perturbation}}}};
  j["output"] = {{"frame_times", spec.output.frame_times}, {"svg_size", spec.output.svg_size}};
  return j;
}

GameSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace mfg
