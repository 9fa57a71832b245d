#include "mfg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <cstring>
#include <random>
#include <stdexcept>
#include <utility>

namespace mfg {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double box_extent(const BoxBounds& bounds) {
  double e = 0.0;
  for (std::size_t i = 0; i < bounds.lo.size(); ++i) e = std::max(e, bounds.hi[i] - bounds.lo[i]);
  return e;
}

void clamp_into(std::vector<double>& x, const BoxBounds& bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds.lo[i], bounds.hi[i]);
}

// F_N of one player's candidate trajectory, with every other player's
// positions, velocities, and survival weights precomputed. Accumulation
// order matches individual_cost_L / pairwise_cost_H / player_cost_FN
// exactly, so values agree bitwise with the public functions.
class PlayerObjective {
 public:
  PlayerObjective(int i, const GameState& state, const CostModel& model)
      : model_(model),
        grid_(state.grid),
        d_(state.players[static_cast<std::size_t>(i)].traj.dim()),
        nt_(state.grid.steps),
        dt_(state.grid.dt()),
        inv_dt_(1.0 / state.grid.dt()),
        n_players_(state.player_count()),
        target_(state.target_of(state.players[static_cast<std::size_t>(i)])) {
    const PlayerState& self = state.players[static_cast<std::size_t>(i)];
    x0_ = self.x0;
    for (int j = 0; j < n_players_; ++j) {
      if (j == i) continue;  // H(gamma, gamma) = 0
      const PlayerState& q = state.players[static_cast<std::size_t>(j)];
      Opponent o;
      o.pts.assign(q.traj.flat().begin(), q.traj.flat().end());
      o.vel = velocity(q.traj);
      o.surv = survival_weight(q.traj, state.target_of(q), model.smoothing);
      o.alive_until = static_cast<int>(o.surv.size());
      while (o.alive_until > 0 && o.surv[static_cast<std::size_t>(o.alive_until - 1)] == 0.0) {
        --o.alive_until;
      }
      opponents_.push_back(std::move(o));
    }
    pts_.resize(static_cast<std::size_t>(nt_) * d_);
    std::copy(x0_.begin(), x0_.end(), pts_.begin());
    vel_.resize(static_cast<std::size_t>(nt_ - 1) * d_);
    u_.resize(static_cast<std::size_t>(nt_ - 1));
  }

  int decision_dim() const { return (nt_ - 1) * d_; }

  std::vector<double> flatten(const Trajectory& traj) const {
    return std::vector<double>(traj.flat().begin() + d_, traj.flat().end());
  }

  Trajectory assemble(std::span<const double> z) const {
    std::vector<double> pts(static_cast<std::size_t>(nt_) * d_);
    std::copy(x0_.begin(), x0_.end(), pts.begin());
    std::copy(z.begin(), z.end(), pts.begin() + d_);
    return Trajectory(grid_, d_, std::move(pts));
  }

  double operator()(std::span<const double> z) {
    std::copy(z.begin(), z.end(), pts_.begin() + d_);
    const std::size_t nv = vel_.size();
    for (std::size_t idx = 0; idx < nv; ++idx) {
      vel_[idx] = (pts_[idx + d_] - pts_[idx]) * inv_dt_;
    }
    double chi_sum = 0.0;
    double run = 0.0;
    double running = 1.0;
    int alive_until = 0;  // first index from which the survival weight is 0
    for (int k = 0; k + 1 < nt_; ++k) {
      const std::span<const double> x(pts_.data() + static_cast<std::size_t>(k) * d_,
                                      static_cast<std::size_t>(d_));
      const std::span<const double> v(vel_.data() + static_cast<std::size_t>(k) * d_,
                                      static_cast<std::size_t>(d_));
      const double c = chi(target_, model_.smoothing, x);
      chi_sum += c;
      running = std::min(running, c);
      u_[static_cast<std::size_t>(k)] = running;
      if (running != 0.0) alive_until = k + 1;
      run += model_.ell(grid_.time(k), x, v);
    }
    const double l_cost = dt_ * run + model_.psi(dt_ * chi_sum);
    if (opponents_.empty() || model_.kernel.amplitude == 0.0) return l_cost;

    double interaction = 0.0;
    for (const Opponent& o : opponents_) {
      // Terms where either survival weight is exactly 0 contribute exact
      // zeros and are skipped.
      const int kmax = std::min(alive_until, o.alive_until);
      double s = 0.0;
      for (int k = 0; k < kmax; ++k) {
        const std::size_t off = static_cast<std::size_t>(k) * d_;
        const std::span<const double> xa(pts_.data() + off, static_cast<std::size_t>(d_));
        const std::span<const double> xb(o.pts.data() + off, static_cast<std::size_t>(d_));
        const std::span<const double> pa(vel_.data() + off, static_cast<std::size_t>(d_));
        const std::span<const double> pb(o.vel.data() + off, static_cast<std::size_t>(d_));
        s += eval_h(model_.kernel, xa, xb, pa, pb) * u_[static_cast<std::size_t>(k)] *
             o.surv[static_cast<std::size_t>(k)];
      }
      interaction += dt_ * s;
    }
    return l_cost + interaction / static_cast<double>(n_players_);
  }

 private:
  struct Opponent {
    std::vector<double> pts;
    std::vector<double> vel;
    std::vector<double> surv;
    int alive_until = 0;
  };

  const CostModel& model_;
  TimeGrid grid_;
  int d_;
  int nt_;
  double dt_;
  double inv_dt_;
  int n_players_;
  TargetSet target_;
  Vec x0_;
  std::vector<Opponent> opponents_;
  std::vector<double> pts_, vel_, u_;
};

BoxBounds player_bounds(const Domain& domain, int nt) {
  const int d = domain.dim();
  BoxBounds b;
  b.lo.reserve(static_cast<std::size_t>(nt - 1) * d);
  b.hi.reserve(static_cast<std::size_t>(nt - 1) * d);
  for (int k = 1; k < nt; ++k) {
    b.lo.insert(b.lo.end(), domain.lo.begin(), domain.lo.end());
    b.hi.insert(b.hi.end(), domain.hi.begin(), domain.hi.end());
  }
  return b;
}

// Time-rescaled copy of a trajectory: traverse the same geometric path at
// constant speed so its end is reached at time s, then park there. Arc
// length (not the original parameterization) drives the traversal, so a
// path that sprints and parks can be slowed down as well as sped up.
// Convex combinations of in-domain points stay in the domain.
std::vector<double> rescale_decision(std::span<const double> z, const Vec& x0,
                                     const TimeGrid& grid, int d, double s) {
  const int nt = grid.steps;
  auto point = [&](int k) { return k <= 0 ? x0.data() : z.data() + (k - 1) * d; };

  std::vector<double> arc(static_cast<std::size_t>(nt), 0.0);
  for (int k = 1; k < nt; ++k) {
    double seg2 = 0.0;
    for (int c = 0; c < d; ++c) {
      const double dx = point(k)[c] - point(k - 1)[c];
      seg2 += dx * dx;
    }
    arc[static_cast<std::size_t>(k)] = arc[static_cast<std::size_t>(k - 1)] + std::sqrt(seg2);
  }
  const double total = arc.back();

  std::vector<double> out(static_cast<std::size_t>(nt - 1) * d);
  int seg = 1;
  for (int k = 1; k < nt; ++k) {
    const double target_arc = total * std::min(1.0, grid.time(k) / s);
    while (seg < nt - 1 && arc[static_cast<std::size_t>(seg)] < target_arc) ++seg;
    const double seg_len =
        arc[static_cast<std::size_t>(seg)] - arc[static_cast<std::size_t>(seg - 1)];
    const double frac =
        seg_len > 0.0 ? (target_arc - arc[static_cast<std::size_t>(seg - 1)]) / seg_len : 1.0;
    const double* p = point(seg - 1);
    const double* q = point(seg);
    for (int c = 0; c < d; ++c) {
      out[static_cast<std::size_t>(k - 1) * d + c] = p[c] + frac * (q[c] - p[c]);
    }
  }
  return out;
}

// The inner minimization used by best_response and by the certification
// restarts: a one-dimensional arrival-time line search over rescalings of
// the start path (the smoothed exit-time ramp is flat almost everywhere,
// which strands plain descent in spurious stationary points; the rescale
// family crosses them), then Nelder-Mead, then projected gradient.
struct LineSearchResult {
  OptimResult main;              // refined best over all arrival times
  std::vector<double> runner_x;  // best candidate from a different arrival phase
  double runner_value = std::numeric_limits<double>::infinity();
};

// One-dimensional arrival-time line search over rescalings of the anchor
// path: all grid arrivals, then a halving refinement around the best. The
// runner-up from a neighboring arrival phase is kept as well: polishing
// reorders nearly tied phases, so the caller descends from both.
LineSearchResult arrival_line_search(const Objective& f, const std::vector<double>& anchor,
                                     double f_anchor, const Vec& x0, const TimeGrid& grid,
                                     int d) {
  LineSearchResult out;
  out.main = {anchor, f_anchor, 0};
  double s_best = 0.0;  // 0 marks "no rescaling beat the anchor"
  std::vector<std::pair<double, double>> values;  // (f, s) per grid arrival
  for (int m = 1; m + 1 < grid.steps; ++m) {
    std::vector<double> cand = rescale_decision(anchor, x0, grid, d, grid.time(m));
    const double fc = f(cand);
    ++out.main.evals;
    values.emplace_back(fc, grid.time(m));
    if (fc < out.main.value) {
      out.main.value = fc;
      s_best = grid.time(m);
      out.main.x = std::move(cand);
    }
  }
  if (s_best > 0.0) {
    double runner_s = 0.0;
    for (const auto& [fc, s] : values) {
      if (std::abs(s - s_best) < 1.5 * grid.dt()) continue;  // same phase as the winner
      if (fc < out.runner_value) {
        out.runner_value = fc;
        runner_s = s;
      }
    }
    if (runner_s > 0.0) {
      out.runner_x = rescale_decision(anchor, x0, grid, d, runner_s);
    }
    double width = grid.dt();
    for (int round = 0; round < 3; ++round, width *= 0.5) {
      for (const double s : {s_best - 0.5 * width, s_best + 0.5 * width}) {
        if (s <= 0.0 || s > grid.horizon) continue;
        std::vector<double> cand = rescale_decision(anchor, x0, grid, d, s);
        const double fc = f(cand);
        ++out.main.evals;
        if (fc < out.main.value) {
          out.main.value = fc;
          s_best = s;
          out.main.x = std::move(cand);
        }
      }
    }
  }
  return out;
}

OptimResult minimize_from(const Objective& f, const std::vector<double>& z_start,
                          const Vec& x0, const TimeGrid& grid, int d,
                          const SolverConfig& config, const BoxBounds& bounds,
                          double fd_abs) {
  OptimResult best{z_start, f(z_start), 1};

  // Two rounds: descent drifts along the nearly flat arrival-time valley,
  // so a second line search recenters it before the final polish.
  for (int round = 0; round < 2; ++round) {
    LineSearchResult ls = arrival_line_search(f, best.x, best.value, x0, grid, d);
    best.evals += ls.main.evals;
    OptimResult descended = ls.main;
    if (round == 0 && !ls.runner_x.empty()) {
      const OptimResult pg_runner =
          projected_gradient(f, ls.runner_x, config.gradient_iters, fd_abs, bounds);
      best.evals += pg_runner.evals;
      if (pg_runner.value < descended.value) descended = pg_runner;
    }
    if (descended.value < best.value) {
      best.x = std::move(descended.x);
      best.value = descended.value;
    }
    const OptimResult nm = nelder_mead(f, best.x, config.simplex_evals, bounds);
    best.evals += nm.evals;
    if (nm.value < best.value) {
      best.x = nm.x;
      best.value = nm.value;
    }
    const OptimResult pg = projected_gradient(f, best.x, config.gradient_iters, fd_abs, bounds);
    best.evals += pg.evals;
    if (pg.value < best.value) {
      best.x = pg.x;
      best.value = pg.value;
    }
  }
  return best;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_sweeps < 1) throw std::invalid_argument("solver.max_sweeps must be at least 1");
  if (!(sweep_tol > 0.0)) throw std::invalid_argument("solver.sweep_tol must be positive");
  if (!(accept_tol > 0.0)) throw std::invalid_argument("solver.accept_tol must be positive");
  if (simplex_evals < 1) throw std::invalid_argument("solver.simplex_evals must be at least 1");
  if (gradient_iters < 1) throw std::invalid_argument("solver.gradient_iters must be at least 1");
  if (br_restarts < 0) throw std::invalid_argument("solver.br_restarts must be nonnegative");
  if (!(fd_step > 0.0)) throw std::invalid_argument("solver.fd_step must be positive");
  if (certification.restarts < 0) {
    throw std::invalid_argument("solver.certification.restarts must be nonnegative");
  }
  if (!(certification.epsilon > 0.0)) {
    throw std::invalid_argument("solver.certification.epsilon must be positive");
  }
  if (!(certification.perturbation > 0.0)) {
    throw std::invalid_argument("solver.certification.perturbation must be positive");
  }
}

double player_cost_FN(int i, const GameState& state, const CostModel& model) {
  const PlayerState& p = state.players[static_cast<std::size_t>(i)];
  const int n = state.player_count();
  double interaction = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;  // H(gamma, gamma) = 0
    const PlayerState& q = state.players[static_cast<std::size_t>(j)];
    interaction += pairwise_cost_H(model, p.traj, state.target_of(p), q.traj, state.target_of(q));
  }
  return individual_cost_L(model, p.traj, state.target_of(p)) +
         interaction / static_cast<double>(n);
}

double potential_JN(const GameState& state, const CostModel& model) {
  const int n = state.player_count();
  double l_sum = 0.0;
  for (const PlayerState& p : state.players) {
    l_sum += individual_cost_L(model, p.traj, state.target_of(p));
  }
  double h_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;  // diagonal vanishes
      h_sum += pairwise_cost_H(model, state.players[static_cast<std::size_t>(i)].traj,
                               state.target_of(state.players[static_cast<std::size_t>(i)]),
                               state.players[static_cast<std::size_t>(j)].traj,
                               state.target_of(state.players[static_cast<std::size_t>(j)]));
    }
  }
  return 2.0 * l_sum / static_cast<double>(n) +
         h_sum / (static_cast<double>(n) * static_cast<double>(n));
}

OptimResult nelder_mead(const Objective& f, std::span<const double> x_init, int max_evals,
                        const BoxBounds& bounds) {
  const std::size_t n = x_init.size();
  int evals = 0;

  std::vector<double> best_x(x_init.begin(), x_init.end());
  clamp_into(best_x, bounds);
  double best_f = f(best_x);
  ++evals;

  const double step = 0.02 * box_extent(bounds);
  std::vector<std::vector<double>> verts;
  std::vector<double> fvals;
  verts.reserve(n + 1);
  verts.push_back(best_x);
  fvals.push_back(best_f);

  auto note_best = [&](const std::vector<double>& x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };

  for (std::size_t i = 0; i < n && evals < max_evals; ++i) {
    std::vector<double> v = verts[0];
    // Step away from the nearest face so the vertex stays distinct.
    if (v[i] + step <= bounds.hi[i]) {
      v[i] += step;
    } else {
      v[i] -= step;
    }
    clamp_into(v, bounds);
    const double fv = f(v);
    ++evals;
    note_best(v, fv);
    verts.push_back(std::move(v));
    fvals.push_back(fv);
  }
  if (verts.size() < n + 1) return {best_x, best_f, evals};  // budget too small to iterate

  std::vector<std::size_t> order(n + 1);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> centroid(n), cand(n);

  while (evals < max_evals) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t lo = order[0];
    const std::size_t hi = order[n];
    const std::size_t second_hi = order[n - 1];

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::vector<double>& v = verts[order[r]];
      for (std::size_t c = 0; c < n; ++c) centroid[c] += v[c];
    }
    for (std::size_t c = 0; c < n; ++c) centroid[c] /= static_cast<double>(n);

    auto try_point = [&](double coeff) {
      for (std::size_t c = 0; c < n; ++c) {
        cand[c] = centroid[c] + coeff * (centroid[c] - verts[hi][c]);
      }
      clamp_into(cand, bounds);
      const double fc = f(cand);
      ++evals;
      note_best(cand, fc);
      return fc;
    };

    const double fr = try_point(1.0);  // reflection
    if (fr < fvals[lo]) {
      double fe = fr;
      std::vector<double> reflected = cand;
      if (evals < max_evals) {
        fe = try_point(2.0);  // expansion
        if (fe < fr) {
          verts[hi] = cand;
          fvals[hi] = fe;
          continue;
        }
      }
      verts[hi] = std::move(reflected);
      fvals[hi] = fr;
      continue;
    }
    if (fr < fvals[second_hi]) {
      verts[hi] = cand;
      fvals[hi] = fr;
      continue;
    }
    if (evals >= max_evals) break;
    const bool outside = fr < fvals[hi];
    const double fc = try_point(outside ? 0.5 : -0.5);  // contraction
    if (fc < std::min(fr, fvals[hi])) {
      verts[hi] = cand;
      fvals[hi] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t r = 1; r <= n && evals < max_evals; ++r) {
      const std::size_t idx = order[r];
      for (std::size_t c = 0; c < n; ++c) {
        verts[idx][c] = verts[lo][c] + 0.5 * (verts[idx][c] - verts[lo][c]);
      }
      clamp_into(verts[idx], bounds);
      fvals[idx] = f(verts[idx]);
      ++evals;
      note_best(verts[idx], fvals[idx]);
    }
  }
  return {best_x, best_f, evals};
}

OptimResult projected_gradient(const Objective& f, std::span<const double> x_init, int max_iters,
                               double fd_step, const BoxBounds& bounds) {
  const std::size_t n = x_init.size();
  constexpr double kStepFloor = 1e-12;
  constexpr double kArmijo = 1e-4;

  std::vector<double> x(x_init.begin(), x_init.end());
  clamp_into(x, bounds);
  double fx = f(x);
  int evals = 1;

  std::vector<double> g(n), g_prev(n), x_prev(n), cand(n);
  const double extent = box_extent(bounds);
  bool have_history = false;
  double alpha_prev = 0.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    // Central finite differences; probe points are evaluated unprojected
    // so boundary derivatives stay honest.
    double g_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      x[i] = xi + fd_step;
      const double fp = f(x);
      x[i] = xi - fd_step;
      const double fm = f(x);
      x[i] = xi;
      g[i] = (fp - fm) / (2.0 * fd_step);
      g_max = std::max(g_max, std::abs(g[i]));
    }
    evals += static_cast<int>(2 * n);
    if (!(g_max > 0.0)) break;

    double alpha;
    if (have_history) {
      // Spectral (Barzilai-Borwein) step from the last accepted move.
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] - x_prev[i];
        const double y = g[i] - g_prev[i];
        ss += s * s;
        sy += s * y;
      }
      alpha = sy > 1e-300 ? ss / sy : 2.0 * alpha_prev;
    } else {
      alpha = 0.01 * extent / g_max;
    }
    alpha = std::clamp(alpha, kStepFloor, 1e12);

    bool accepted = false;
    double fc = 0.0;
    while (alpha >= kStepFloor) {
      for (std::size_t i = 0; i < n; ++i) {
        cand[i] = std::clamp(x[i] - alpha * g[i], bounds.lo[i], bounds.hi[i]);
      }
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x[i] - cand[i]);
      if (!(decrease > 0.0)) break;  // move fully blocked by the bounds
      fc = f(cand);
      ++evals;
      if (fc <= fx - kArmijo * decrease) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;

    x_prev = x;
    g_prev = g;
    have_history = true;
    alpha_prev = alpha;
    x.swap(cand);
    fx = fc;
  }
  return {x, fx, evals};
}

BestResponse best_response(int i, const GameState& state, const CostModel& model,
                           const SolverConfig& config) {
  PlayerObjective objective(i, state, model);
  const Objective f = [&objective](std::span<const double> z) { return objective(z); };
  const PlayerState& player = state.players[static_cast<std::size_t>(i)];

  const std::vector<double> z0 = objective.flatten(player.traj);
  const double f0 = f(z0);
  const BoxBounds bounds = player_bounds(state.domain, state.grid.steps);
  const double fd_abs = config.fd_step * state.domain.extent();

  OptimResult best =
      minimize_from(f, z0, player.x0, state.grid, player.traj.dim(), config, bounds, fd_abs);

  // Perturbed restarts hop between strategy basins (dodge left / dodge
  // right / rush) that the warm-started descent cannot cross. Seeded from
  // the incumbent bits so runs stay reproducible while restarts differ
  // from sweep to sweep.
  if (config.br_restarts > 0) {
    const double scale = config.certification.perturbation * state.domain.extent();
    std::uint64_t salt = 0xcbf29ce484222325ull;
    for (double v : z0) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      salt = (salt ^ bits) * 0x100000001b3ull;
    }
    for (int r = 0; r < config.br_restarts; ++r) {
      std::mt19937_64 rng(splitmix64(config.rng_seed ^ salt ^
                                     splitmix64(static_cast<std::uint64_t>(i) * 0x9e3779b9ull +
                                                static_cast<std::uint64_t>(r))));
      std::normal_distribution<double> noise(0.0, scale);
      std::vector<double> z = z0;
      for (double& v : z) v += noise(rng);
      clamp_into(z, bounds);
      const OptimResult cand =
          minimize_from(f, z, player.x0, state.grid, player.traj.dim(), config, bounds, fd_abs);
      if (cand.value < best.value) best = cand;
      best.evals += cand.evals;
    }
  }

  if (f0 - best.value > config.accept_tol * (1.0 + std::abs(f0))) {
    return {objective.assemble(best.x), true, best.value - f0, f0, best.value};
  }
  return {player.traj, false, 0.0, f0, f0};
}

SolveResult solve(const GameSetup& setup, const CostModel& model, const SolverConfig& config) {
  config.validate();
  const std::size_t n = setup.player_start.size();
  if (n == 0) throw std::invalid_argument("solve: no players");
  if (setup.player_population.size() != n) {
    throw std::invalid_argument("solve: player_population size mismatch");
  }

  GameState state{setup.domain, setup.grid, setup.population_targets, {}};
  state.players.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int pop = setup.player_population[i];
    if (pop < 0 || pop >= static_cast<int>(setup.population_targets.size())) {
      throw std::invalid_argument("solve: player population id out of range");
    }
    const Vec& x0 = setup.player_start[i];
    if (!setup.domain.contains(x0)) {
      throw std::invalid_argument("solve: player start outside the domain");
    }
    Trajectory traj = straight_line_init(x0, setup.population_targets[static_cast<std::size_t>(pop)],
                                         setup.grid);
    state.players.push_back(PlayerState{static_cast<int>(i), pop, x0, std::move(traj)});
  }

  SolveResult result{std::move(state), {}, false, {}};
  double potential = potential_JN(result.state, model);
  result.potential_history.push_back(potential);

  for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
    const auto t_start = std::chrono::steady_clock::now();
    SweepReport report;
    report.sweep = sweep;
    report.potential_before = potential;

    for (int i = 0; i < result.state.player_count(); ++i) {
      BestResponse br = best_response(i, result.state, model, config);
      report.accepted.push_back(br.improved ? 1 : 0);
      report.player_delta_cost.push_back(br.delta_cost);
      if (br.improved) {
        result.state.players[static_cast<std::size_t>(i)].traj = std::move(br.traj);
        const double updated = potential_JN(result.state, model);
        report.player_delta_potential.push_back(updated - potential);
        potential = updated;
      } else {
        report.player_delta_potential.push_back(0.0);
      }
    }

    report.potential_after = potential;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    const double decrease = report.potential_before - report.potential_after;
    result.sweeps.push_back(std::move(report));
    result.potential_history.push_back(potential);

    if (decrease <= config.sweep_tol * (1.0 + std::abs(potential))) {
      result.converged = true;
      break;
    }
  }
  return result;
}

EquilibriumCertificate certify_epsilon_nash(const GameState& state, const CostModel& model,
                                            const SolverConfig& config) {
  EquilibriumCertificate cert;
  cert.epsilon = config.certification.epsilon;
  cert.pass = true;

  const BoxBounds bounds = player_bounds(state.domain, state.grid.steps);
  const double fd_abs = config.fd_step * state.domain.extent();
  const double scale = config.certification.perturbation * state.domain.extent();

  for (int i = 0; i < state.player_count(); ++i) {
    const PlayerState& player = state.players[static_cast<std::size_t>(i)];
    PlayerObjective objective(i, state, model);
    const Objective f = [&objective](std::span<const double> z) { return objective(z); };
    const std::vector<double> z0 = objective.flatten(player.traj);
    const double f0 = f(z0);
    double best = f0;

    for (int r = 0; r < config.certification.restarts; ++r) {
      std::mt19937_64 rng(splitmix64(config.rng_seed ^
                                     splitmix64(static_cast<std::uint64_t>(i) * 0x100000001b3ull +
                                                static_cast<std::uint64_t>(r))));
      std::normal_distribution<double> noise(0.0, scale);
      std::vector<double> z = z0;
      for (double& v : z) v += noise(rng);
      clamp_into(z, bounds);

      const OptimResult found =
          minimize_from(f, z, player.x0, state.grid, player.traj.dim(), config, bounds, fd_abs);
      best = std::min(best, found.value);
    }

    const double improvement = f0 - best;
    cert.player_cost.push_back(f0);
    cert.best_improvement.push_back(improvement);
    if (improvement > cert.epsilon * (1.0 + std::abs(f0))) cert.pass = false;
  }
  return cert;
}

}  // namespace mfg
