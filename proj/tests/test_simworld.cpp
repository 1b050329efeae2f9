#include <catch_amalgamated.hpp>

#include "sslkit/simworld.hpp"

using namespace sslkit;
using Catch::Approx;

namespace {

SimState two_robot_state(const SimConfig& cfg, std::uint64_t seed = 1) {
  SimState s;
  s.rng.seed(seed);
  s.robots.push_back({{{-1000, 0}, 0.0}, {0, 0}, 0.0, ObjectKind::robot_blue, 0});
  s.robots.push_back({{{1000, 0}, kPi}, {0, 0}, 0.0, ObjectKind::robot_blue, 1});
  s.ball.pos = {0, 0};
  (void)cfg;
  return s;
}

}  // namespace

TEST_CASE("step: idle world only advances time") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  SimState before = s;
  step(s, cfg, {{}, {}});
  CHECK(s.t == Approx(cfg.dt));
  CHECK(s.ball.pos == before.ball.pos);
  CHECK(s.robots[0].pose.pos == before.robots[0].pose.pos);
}

TEST_CASE("step: ball decelerates by a*dt per tick") {
  SimConfig cfg;  // decel 500, dt 1/60
  SimState s = two_robot_state(cfg);
  s.ball.pos = {0, 3000};
  s.ball.vel = {1000, 0};
  step(s, cfg, {});
  CHECK(s.ball.vel.x == Approx(1000.0 - 500.0 / 60.0).margin(1e-9));
  CHECK(s.ball.vel.x == Approx(991.6667).margin(1e-3));
}

TEST_CASE("step: free ball speed decays strictly to zero") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  s.ball.pos = {-3000, 3000};
  s.ball.vel = {800, 100};
  double prev = s.ball.vel.norm();
  for (int i = 0; i < 200; ++i) {
    step(s, cfg, {});
    double sp = s.ball.vel.norm();
    if (prev > 0.0) REQUIRE(sp < prev);
    prev = sp;
  }
  CHECK(prev == 0.0);
}

TEST_CASE("step: commanded speed is clamped to v_max after the ramp") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  RobotCommand floor_it;
  floor_it.vx = 4095;
  for (int i = 0; i < 300; ++i) step(s, cfg, {floor_it, {}});
  CHECK(s.robots[0].vel.norm() == Approx(cfg.limits.v_max).margin(1e-6));
  // ramp respected: from rest the first tick gains at most a_acc*dt
  SimState s2 = two_robot_state(cfg);
  step(s2, cfg, {floor_it, {}});
  CHECK(s2.robots[0].vel.norm() <= cfg.limits.a_acc * cfg.dt + 1e-9);
}

TEST_CASE("step: capture requires proximity and facing") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  // Ball rolls toward robot 1 (facing -x at (1000,0)).
  s.ball.pos = {900, 0};
  s.ball.vel = {500, 0};
  step(s, cfg, {});
  CHECK(s.holder == 1);
  CHECK(s.capture_speed > 0.0);

  // Same geometry but the robot looks away: no capture.
  SimState s2 = two_robot_state(cfg);
  s2.robots[1].pose.theta = 0.0;
  s2.ball.pos = {900, 0};
  s2.ball.vel = {500, 0};
  step(s2, cfg, {});
  CHECK(s2.holder == -1);
}

TEST_CASE("step: a kick launches the ball along the heading") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  s.holder = 0;  // robot 0 faces +x at (-1000, 0)
  RobotCommand kick;
  kick.kick_power = 127;
  step(s, cfg, {kick, {}});
  CHECK(s.holder == -1);
  CHECK(s.ball.vel.x ==
        Approx(cfg.kick_speed_max - cfg.ball_model.decel * cfg.dt).margin(1e-6));
  CHECK(s.ball.vel.y == Approx(0.0).margin(1e-9));
}

TEST_CASE("observe: noiseless frames report ground truth, loss drops them") {
  SimConfig cfg;
  SimState s = two_robot_state(cfg);
  auto frame = observe(s, cfg);
  REQUIRE(frame.has_value());
  REQUIRE(frame->detections.size() == 3);  // ball + 2 robots
  CHECK(frame->detections[0].position == s.ball.pos);
  CHECK(frame->detections[1].position == s.robots[0].pose.pos);
  CHECK(frame->detections[1].orientation == s.robots[0].pose.theta);

  SimConfig lossy = cfg;
  lossy.packet_loss = 1.0;
  for (int i = 0; i < 100; ++i) CHECK_FALSE(observe(s, lossy).has_value());

  // A held ball is occluded.
  s.holder = 0;
  auto occluded = observe(s, cfg);
  REQUIRE(occluded.has_value());
  CHECK(occluded->detections.size() == 2);
}

TEST_CASE("observe: noise variance matches sigma within 5%") {
  SimConfig cfg;
  cfg.sigma_xy = 20.0;
  SimState s = two_robot_state(cfg, 77);
  double sum = 0.0, sum_sq = 0.0;
  int n = 0;
  for (int i = 0; i < 5000; ++i) {
    auto frame = observe(s, cfg);
    REQUIRE(frame.has_value());
    for (double d : {frame->detections[0].position.x - s.ball.pos.x,
                     frame->detections[0].position.y - s.ball.pos.y}) {
      sum += d;
      sum_sq += d * d;
      ++n;
    }
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(var == Approx(400.0).epsilon(0.05));
}

TEST_CASE("simulation is deterministic given the seed") {
  SimConfig cfg;
  cfg.sigma_xy = 15.0;
  cfg.packet_loss = 0.2;
  cfg.seed = 99;

  auto run = [&]() {
    SimState s = two_robot_state(cfg, cfg.seed);
    s.ball.vel = {1200, -400};
    std::vector<double> trace;
    RobotCommand drift;
    drift.vx = 800;
    for (int i = 0; i < 120; ++i) {
      auto frame = observe(s, cfg);
      if (frame && !frame->detections.empty())
        trace.push_back(frame->detections[0].position.x);
      step(s, cfg, {drift, {}});
      trace.push_back(s.ball.pos.x);
      trace.push_back(s.robots[0].pose.pos.y);
    }
    return trace;
  };
  auto a = run();
  auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("pass trials succeed cleanly without noise") {
  SimConfig cfg;
  cfg.seed = 3;
  double rate = pass_success_rate(cfg, 10);
  CHECK(rate >= 0.9);
}

TEST_CASE("pass trials fail blind") {
  SimConfig cfg;
  cfg.seed = 3;
  cfg.packet_loss = 1.0;
  CHECK(pass_success_rate(cfg, 5) == 0.0);
}

TEST_CASE("pass_success_rate validates trial count") {
  SimConfig cfg;
  CHECK_THROWS_AS(pass_success_rate(cfg, 0), std::invalid_argument);
}
