#include <random>

#include <catch_amalgamated.hpp>

#include "sslkit/motion.hpp"
#include "test_util.hpp"

using namespace sslkit;
using Catch::Approx;

TEST_CASE("plan_1d trivial and textbook cases") {
  CHECK(plan_1d(0.0, 0.0, 2000, 1000, 1000).total_time == 0.0);

  // peak velocity sqrt(a*d) = 2000 exactly hits v_max; 2*sqrt(d/a)
  auto p1 = plan_1d(4000.0, 0.0, 2000, 1000, 1000);
  CHECK(p1.total_time == Approx(4.0).margin(1e-9));

  // 1 s accel + 3 s cruise + 1 s decel
  auto p2 = plan_1d(4000.0, 0.0, 1000, 1000, 1000);
  CHECK(p2.total_time == Approx(5.0).margin(1e-9));
  REQUIRE(p2.phases.size() == 3);
  CHECK(p2.phases[0].duration == Approx(1.0));
  CHECK(p2.phases[1].duration == Approx(3.0));
  CHECK(p2.phases[1].accel == 0.0);
  CHECK(p2.phases[2].duration == Approx(1.0));
}

TEST_CASE("plan_1d handles overshoot and wrong-way starts") {
  // Moving away from a target behind us.
  auto p1 = plan_1d(-1000.0, 2000.0, 3000, 2000, 2000);
  auto [pos1, v1] = testutil::integrate_phases(p1, 2000.0);
  CHECK(pos1 == Approx(-1000.0).margin(1e-6));
  CHECK(v1 == Approx(0.0).margin(1e-9));

  // Too fast to stop before a near target: brake past it, come back.
  auto p2 = plan_1d(100.0, 3000.0, 3000, 2000, 2000);
  auto [pos2, v2] = testutil::integrate_phases(p2, 3000.0);
  CHECK(pos2 == Approx(100.0).margin(1e-6));
  CHECK(v2 == Approx(0.0).margin(1e-9));

  // Entry velocity above the cap.
  auto p3 = plan_1d(20000.0, 5000.0, 3000, 2000, 2000);
  auto [pos3, v3] = testutil::integrate_phases(p3, 5000.0);
  CHECK(pos3 == Approx(20000.0).margin(1e-6));
  CHECK(v3 == Approx(0.0).margin(1e-9));
}

TEST_CASE("plan_1d matches independent integration over random cases") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-10000.0, 10000.0);
  std::uniform_real_distribution<double> vel(-5000.0, 5000.0);
  std::uniform_real_distribution<double> vmax(500.0, 4000.0);
  std::uniform_real_distribution<double> acc(500.0, 6000.0);
  for (int i = 0; i < 10000; ++i) {
    double d = dist(rng), v0 = vel(rng);
    double vm = vmax(rng), aa = acc(rng), ad = acc(rng);
    TimeProfile p = plan_1d(d, v0, vm, aa, ad);
    double total = 0.0;
    for (const auto& ph : p.phases) {
      REQUIRE(ph.duration >= 0.0);
      total += ph.duration;
    }
    REQUIRE(p.total_time == Approx(total).margin(1e-9));
    auto [pos, v] = testutil::integrate_phases(p, v0);
    REQUIRE(pos == Approx(d).margin(1e-6));
    REQUIRE(std::abs(v) < 1e-6);
  }
}

TEST_CASE("plan_1d total_time is nondecreasing in |distance| from rest") {
  MotionLimits lim;
  double prev = -1.0;
  for (double d = 0.0; d <= 20000.0; d += 37.0) {
    double t = plan_1d(d, 0.0, lim).total_time;
    REQUIRE(t >= prev);
    prev = t;
  }
}

TEST_CASE("sampled profile never exceeds v_max") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-8000.0, 8000.0);
  std::uniform_real_distribution<double> vmax(500.0, 4000.0);
  std::uniform_real_distribution<double> acc(500.0, 6000.0);
  for (int i = 0; i < 200; ++i) {
    double vm = vmax(rng);
    std::uniform_real_distribution<double> vel(-vm, vm);
    double v0 = vel(rng);
    TimeProfile p = plan_1d(dist(rng), v0, vm, acc(rng), acc(rng));
    for (double t = 0.0; t <= p.total_time; t += 1e-3) {
      ProfileState s = sample_profile(p, v0, t);
      REQUIRE(std::abs(s.vel) <= vm + 1e-9);
    }
  }
}

TEST_CASE("arrival_time basics") {
  MotionLimits lim;
  CHECK(arrival_time({{0, 0}, 0.0}, {0, 0}, {0, 0}, std::nullopt, lim) == 0.0);

  MotionLimits fast{2000, 2000, 2000, 10, 30};
  double t = arrival_time({{0, 0}, 0.0}, {0, 0}, {1000, 0}, std::nullopt, fast);
  CHECK(t == Approx(2.0 * std::sqrt(1000.0 / 2000.0)).margin(1e-9));

  // Pure rotation through pi at aw = pi: triangular, 2*sqrt(pi/pi) = 2 s.
  MotionLimits rot{3000, 3000, 4000, 1e9, kPi};
  double tr = arrival_time({{0, 0}, 0.0}, {0, 0}, {0, 0}, kPi, rot);
  CHECK(tr == Approx(2.0).margin(1e-9));
}

TEST_CASE("arrival_time kills lateral velocity") {
  MotionLimits lim{2000, 2000, 2000, 10, 30};
  // Start at the target moving sideways: time = brake + return on Y.
  double t = arrival_time({{0, 0}, 0.0}, {0, 1000}, {1000, 0}, std::nullopt, lim);
  double tx = plan_1d(1000.0, 0.0, lim).total_time;
  double ty = plan_1d(0.0, 1000.0, lim).total_time;
  CHECK(t == Approx(std::max(tx, ty)).margin(1e-12));
  CHECK(ty > 0.0);
}

TEST_CASE("arrival_time is invariant under global rotation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-5000.0, 5000.0);
  std::uniform_real_distribution<double> vu(-3000.0, 3000.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  MotionLimits lim;
  for (int i = 0; i < 10000; ++i) {
    Vec2 start{u(rng), u(rng)}, target{u(rng), u(rng)}, v{vu(rng), vu(rng)};
    double t0 =
        arrival_time({start, 0.0}, v, target, std::nullopt, lim);
    double a = ang(rng);
    double t1 = arrival_time({start.rotated(a), 0.0}, v.rotated(a),
                             target.rotated(a), std::nullopt, lim);
    REQUIRE(t0 == Approx(t1).margin(1e-9));
  }
}

TEST_CASE("fly-through arrival drops the deceleration phase") {
  // From rest, a_acc = 2000, v_max = 2000: 1000 mm is exactly the ramp.
  CHECK(fly_through_time_1d(1000, 0, 2000, 2000, 2000) ==
        Approx(1.0).margin(1e-9));
  // 4000 mm: 1 s ramp (1000 mm) + 3000 mm cruise at 2000.
  CHECK(fly_through_time_1d(4000, 0, 2000, 2000, 2000) ==
        Approx(2.5).margin(1e-9));
  CHECK(fly_through_time_1d(0, 500, 2000, 2000, 2000) == 0.0);

  MotionLimits lim{2000, 2000, 2000, 10, 30};
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-5000.0, 5000.0);
  std::uniform_real_distribution<double> vu(-2000.0, 2000.0);
  for (int i = 0; i < 2000; ++i) {
    Pose start{{u(rng), u(rng)}, 0.0};
    Vec2 v{vu(rng), vu(rng)}, target{u(rng), u(rng)};
    double fly = arrival_time(start, v, target, std::nullopt, lim,
                              ArrivalMode::fly_through);
    double stop = arrival_time(start, v, target, std::nullopt, lim);
    REQUIRE(fly <= stop + 1e-9);
  }
}

TEST_CASE("predict_robot_arrival_time is arrival_time without rotation") {
  MotionLimits lim;
  Vec2 r{100, 200}, v{500, -100}, p{4000, 1000};
  CHECK(predict_robot_arrival_time(r, v, p, lim) ==
        arrival_time({r, 1.234}, v, p, std::nullopt, lim));
}
