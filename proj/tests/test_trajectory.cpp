#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mfg/trajectory.hpp"

using namespace mfg;

namespace {

Trajectory from_points(const TimeGrid& grid, const std::vector<Vec>& pts) {
  std::vector<double> flat;
  for (const Vec& p : pts) flat.insert(flat.end(), p.begin(), p.end());
  return Trajectory(grid, static_cast<int>(pts.front().size()), std::move(flat));
}

}  // namespace

TEST_CASE("grid and trajectory validation") {
  CHECK_THROWS_AS(TimeGrid(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(1.0, 1), std::invalid_argument);
  const TimeGrid g(3.0, 100);
  CHECK(g.dt() == doctest::Approx(3.0 / 99.0));
  CHECK_THROWS_AS(Trajectory(g, 2, std::vector<double>(7)), std::invalid_argument);
}

TEST_CASE("velocity examples") {
  const TimeGrid g(1.0, 3);
  SUBCASE("constant trajectory has zero velocity") {
    const Trajectory t = from_points(g, {{0.4, 0.4}, {0.4, 0.4}, {0.4, 0.4}});
    for (double v : velocity(t)) CHECK(v == 0.0);
  }
  SUBCASE("uniform motion") {
    const Trajectory t = from_points(g, {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
    const std::vector<double> v = velocity(t);
    CHECK(v == std::vector<double>{1.0, 0.0, 1.0, 0.0});
  }
  SUBCASE("hand finite difference") {
    const TimeGrid g2(0.2, 3);  // dt = 0.1
    const Trajectory t = from_points(g2, {{0.0, 0.0}, {0.1, 0.0}, {0.3, 0.0}});
    const std::vector<double> v = velocity(t);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[2] == doctest::Approx(2.0));
  }
}

TEST_CASE("velocity is linear in the points") {
  const TimeGrid g(1.0, 6);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto rand_traj = [&] {
    std::vector<double> flat(12);
    for (double& x : flat) x = u(rng);
    return Trajectory(g, 2, std::move(flat));
  };
  const Trajectory a = rand_traj();
  const Trajectory b = rand_traj();
  const double alpha = 0.3;
  std::vector<double> mixed(12);
  for (int i = 0; i < 12; ++i) mixed[i] = alpha * a.flat()[i] + (1 - alpha) * b.flat()[i];
  const Trajectory m(g, 2, std::move(mixed));
  const std::vector<double> va = velocity(a), vb = velocity(b), vm = velocity(m);
  for (std::size_t i = 0; i < vm.size(); ++i) {
    CHECK(vm[i] == doctest::Approx(alpha * va[i] + (1 - alpha) * vb[i]).epsilon(1e-12));
  }
}

TEST_CASE("quadrature examples") {
  CHECK(quadrature(std::vector<double>{0.0, 0.0, 0.0}, 0.3) == 0.0);
  CHECK(quadrature(std::vector<double>{1.0, 2.0, 3.0}, 0.5) == doctest::Approx(3.0));
  // exact for constants: c * T with T = dt * (steps - 1)
  const std::vector<double> c(9, 0.7);
  CHECK(quadrature(c, 1.0 / 9.0) == doctest::Approx(0.7));
}

TEST_CASE("smoothed exit time anchors") {
  const TargetSet slab = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);
  const IndicatorSmoothing s{0.05};
  SUBCASE("constant inside the target") {
    const TimeGrid g(3.0, 10);
    const Trajectory t = from_points(g, std::vector<Vec>(10, Vec{1.0, 0.5}));
    CHECK(smoothed_exit_time(t, slab, s) == 0.0);
  }
  SUBCASE("never within rho of the target") {
    const TimeGrid g(3.0, 10);
    const Trajectory t = from_points(g, std::vector<Vec>(10, Vec{0.2, 0.5}));
    CHECK(smoothed_exit_time(t, slab, s) == doctest::Approx(3.0));
  }
  SUBCASE("unit-speed crossing of the square") {
    const TimeGrid g(3.0, 100);
    std::vector<Vec> pts;
    for (int k = 0; k < 100; ++k) {
      pts.push_back(Vec{std::min(g.time(k), 1.0), 0.5});
    }
    const Trajectory t = from_points(g, pts);
    const double tau = smoothed_exit_time(t, slab, s);
    CHECK(std::abs(tau - 1.0) <= 0.05);  // crossing time of the continuous path
    // independent recomputation
    double acc = 0.0;
    for (int k = 0; k + 1 < 100; ++k) acc += chi(slab, s, t.point(k));
    CHECK(tau == doctest::Approx(g.dt() * acc));
  }
}

TEST_CASE("exit time bounds and slab monotonicity") {
  const IndicatorSmoothing s{0.05};
  const TimeGrid g(2.0, 20);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> flat(40);
    for (double& x : flat) x = u(rng);
    const Trajectory t(g, 2, std::move(flat));
    const double thr_far = 0.9, thr_near = 0.6;
    const double tau_far =
        smoothed_exit_time(t, TargetSet::slab(0, thr_far, TargetSet::Side::Geq), s);
    const double tau_near =
        smoothed_exit_time(t, TargetSet::slab(0, thr_near, TargetSet::Side::Geq), s);
    CHECK(tau_far >= 0.0);
    CHECK(tau_far <= 2.0 + 1e-12);
    CHECK(tau_near <= tau_far + 1e-12);  // enlarging the target never delays exit
  }
}

TEST_CASE("survival weights") {
  const TargetSet slab = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);
  const IndicatorSmoothing s{0.1};
  const TimeGrid g(1.0, 3);
  SUBCASE("far from the target: all ones") {
    const Trajectory t = from_points(g, {{0.2, 0.5}, {0.3, 0.5}, {0.4, 0.5}});
    CHECK(survival_weight(t, slab, s) == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("running minimum does not recover") {
    // chi values 1, 0.5, 1 -> weights 1, 0.5
    const Trajectory t = from_points(g, {{0.8, 0.5}, {0.95, 0.5}, {0.9, 0.5}});
    const std::vector<double> u = survival_weight(t, slab, s);
    CHECK(u[0] == 1.0);
    CHECK(u[1] == doctest::Approx(0.5));
  }
  SUBCASE("entering the target zeroes the tail") {
    const TimeGrid g5(1.0, 5);
    const Trajectory t =
        from_points(g5, {{0.5, 0.5}, {1.0, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    const std::vector<double> u = survival_weight(t, slab, s);
    CHECK(u[0] == 1.0);
    for (std::size_t k = 1; k < u.size(); ++k) CHECK(u[k] == 0.0);
  }
}

TEST_CASE("survival weight is a nonincreasing bound on chi") {
  const TargetSet ball = TargetSet::ball(Vec{0.5, 0.5}, 0.2);
  const IndicatorSmoothing s{0.07};
  const TimeGrid g(1.0, 15);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> flat(30);
    for (double& x : flat) x = dist(rng);
    const Trajectory t(g, 2, std::move(flat));
    const std::vector<double> u = survival_weight(t, ball, s);
    for (std::size_t k = 0; k < u.size(); ++k) {
      CHECK(u[k] <= chi(ball, s, t.point(static_cast<int>(k))) + 1e-15);
      if (k > 0) CHECK(u[k] <= u[k - 1] + 1e-15);
    }
  }
}

TEST_CASE("straight line initialization") {
  const TargetSet slab = TargetSet::slab(0, 1.0, TargetSet::Side::Geq);
  SUBCASE("already inside: constant") {
    const Trajectory t = straight_line_init(Vec{1.0, 0.3}, slab, TimeGrid(3.0, 5));
    for (int k = 0; k < 5; ++k) {
      CHECK(t.point(k)[0] == 1.0);
      CHECK(t.point(k)[1] == 0.3);
    }
  }
  SUBCASE("same-ordinate arrival at the final time") {
    const Trajectory t = straight_line_init(Vec{0.0, 0.5}, slab, TimeGrid(1.0, 3));
    CHECK(t.point(0)[0] == 0.0);
    CHECK(t.point(1)[0] == doctest::Approx(0.5));
    CHECK(t.point(2)[0] == doctest::Approx(1.0));
    for (int k = 0; k < 3; ++k) CHECK(t.point(k)[1] == doctest::Approx(0.5));
  }
  SUBCASE("endpoints are exact") {
    const TargetSet ball = TargetSet::ball(Vec{0.5, 0.5}, 0.1);
    const Trajectory t = straight_line_init(Vec{0.1, 0.9}, ball, TimeGrid(2.0, 7));
    CHECK(t.point(0)[0] == 0.1);
    CHECK(t.point(0)[1] == 0.9);
    const Vec goal = ball.nearest_point(Vec{0.1, 0.9});
    CHECK(t.point(6)[0] == doctest::Approx(goal[0]));
    CHECK(t.point(6)[1] == doctest::Approx(goal[1]));
  }
}
