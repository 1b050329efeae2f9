// simworld.hpp - deterministic kinematic simulator with Gaussian observation
// noise and frame loss, plus the closed-loop pass-success experiment.
//
// The robot model is velocity-level: commands are robot-frame velocities,
// ramped with the trapezoidal acceleration limits and clamped to v_max. The
// ball rolls straight under constant friction deceleration. There are no
// robot-robot collisions; a robot catches the ball when it is close enough
// and facing it.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sslkit/geom.hpp"
#include "sslkit/interception.hpp"
#include "sslkit/motion.hpp"
#include "sslkit/radio.hpp"
#include "sslkit/tactics.hpp"
#include "sslkit/tracker.hpp"

namespace sslkit {

// splitmix64 step; decorrelates derived seeds (per-trial, per-purpose).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SimConfig {
  double dt{1.0 / 60.0};
  double sigma_xy{0.0};      // mm, position observation noise per axis
  double sigma_theta{0.0};   // rad, orientation observation noise
  double packet_loss{0.0};   // probability a whole frame is dropped
  std::uint64_t seed{1};
  FieldGeometry field;
  MotionLimits limits;
  BallModel ball_model;
  double catch_radius{111.5};            // mm from robot center
  double facing_cone{deg_to_rad(30.0)};  // rad, half-angle
  double kick_speed_max{6500.0};         // mm/s at kick_power 127
  double robot_mouth{90.0};              // mm, dribbler offset from center
  CameraModel camera{0, {0.0, 0.0}, 8000.0, 0};
};

struct SimRobot {
  Pose pose;
  Vec2 vel;          // world frame, mm/s
  double omega{0.0}; // rad/s
  ObjectKind team{ObjectKind::robot_blue};
  int id{0};
};

struct SimBall {
  Vec2 pos;
  Vec2 vel;
};

struct SimState {
  double t{0.0};
  SimBall ball;
  std::vector<SimRobot> robots;
  std::mt19937_64 rng;
  int holder{-1};             // robot index holding the ball, -1 = free
  double capture_speed{0.0};  // ball speed at the moment of the last capture
  Vec2 capture_pos;
};

namespace detail {

inline double ramp_axis(double cur, double des, double a_acc, double a_dec,
                        double dt) {
  bool speeding = std::abs(des) >= std::abs(cur) && des * cur >= 0.0;
  double lim = (speeding ? a_acc : a_dec) * dt;
  return cur + std::clamp(des - cur, -lim, lim);
}

inline Vec2 mouth_of(const SimRobot& r, const SimConfig& cfg) {
  return r.pose.pos + Vec2{std::cos(r.pose.theta), std::sin(r.pose.theta)} *
                          cfg.robot_mouth;
}

}  // namespace detail

// Advances the world by one tick. Fully deterministic (no RNG use).
inline void step(SimState& s, const SimConfig& cfg,
                 const std::vector<RobotCommand>& commands) {
  const double dt = cfg.dt;

  // Robots: ramp toward the commanded robot-frame velocity.
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    SimRobot& r = s.robots[i];
    RobotCommand cmd = i < commands.size() ? commands[i] : RobotCommand{};

    Vec2 des_world = Vec2{static_cast<double>(cmd.vx),
                          static_cast<double>(cmd.vy)}
                         .rotated(r.pose.theta);
    Vec2 v{detail::ramp_axis(r.vel.x, des_world.x, cfg.limits.a_acc,
                             cfg.limits.a_dec, dt),
           detail::ramp_axis(r.vel.y, des_world.y, cfg.limits.a_acc,
                             cfg.limits.a_dec, dt)};
    double speed = v.norm();
    if (speed > cfg.limits.v_max) v = v * (cfg.limits.v_max / speed);
    r.vel = v;
    r.pose.pos += v * dt;

    double w_des = static_cast<double>(cmd.w) / 100.0;  // centirad/s -> rad/s
    double w = detail::ramp_axis(r.omega, w_des, cfg.limits.aw, cfg.limits.aw,
                                 dt);
    r.omega = std::clamp(w, -cfg.limits.w_max, cfg.limits.w_max);
    r.pose.theta = wrap_angle(r.pose.theta + r.omega * dt);
  }

  // Kicks release the ball along the kicker's heading.
  int kicked_by = -1;
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    RobotCommand cmd = i < commands.size() ? commands[i] : RobotCommand{};
    if (cmd.kick_power == 0) continue;
    const SimRobot& r = s.robots[static_cast<int>(i)];
    bool has_ball = s.holder == static_cast<int>(i);
    if (!has_ball) {
      double dist = distance(r.pose.pos, s.ball.pos);
      double bearing = (s.ball.pos - r.pose.pos).is_zero()
                           ? 0.0
                           : wrap_angle((s.ball.pos - r.pose.pos).angle() -
                                        r.pose.theta);
      has_ball = dist <= cfg.catch_radius && std::abs(bearing) < cfg.facing_cone;
    }
    if (!has_ball) continue;
    double speed = cfg.kick_speed_max * cmd.kick_power / 127.0;
    s.ball.pos = detail::mouth_of(r, cfg);
    s.ball.vel = Vec2{std::cos(r.pose.theta), std::sin(r.pose.theta)} * speed;
    s.holder = -1;
    kicked_by = static_cast<int>(i);
    break;  // one ball, one kick per tick
  }

  // Ball motion.
  if (s.holder >= 0) {
    const SimRobot& r = s.robots[s.holder];
    s.ball.pos = detail::mouth_of(r, cfg);
    s.ball.vel = r.vel;
  } else {
    double speed = s.ball.vel.norm();
    if (speed > 0.0) {
      double decel = cfg.ball_model.decel;
      double t_stop = speed / decel;
      Vec2 dir = s.ball.vel / speed;
      if (t_stop <= dt) {
        s.ball.pos += dir * (speed * speed / (2.0 * decel));
        s.ball.vel = {0.0, 0.0};
      } else {
        s.ball.pos += dir * (speed * dt - 0.5 * decel * dt * dt);
        s.ball.vel = dir * (speed - decel * dt);
      }
    }
  }

  // Capture: close enough and facing the ball. The kicker cannot re-capture
  // on its own kick tick.
  if (s.holder < 0) {
    for (std::size_t i = 0; i < s.robots.size(); ++i) {
      if (static_cast<int>(i) == kicked_by) continue;
      const SimRobot& r = s.robots[i];
      Vec2 to_ball = s.ball.pos - r.pose.pos;
      if (to_ball.norm() > cfg.catch_radius) continue;
      double bearing =
          to_ball.is_zero() ? 0.0
                            : wrap_angle(to_ball.angle() - r.pose.theta);
      if (std::abs(bearing) >= cfg.facing_cone) continue;
      s.capture_speed = s.ball.vel.norm();
      s.capture_pos = s.ball.pos;
      s.holder = static_cast<int>(i);
      s.ball.vel = r.vel;
      break;
    }
  }

  s.t += dt;
}

// One observation frame, or nullopt when the frame is lost. A held ball is
// occluded by its robot and not reported.
inline std::optional<DetectionFrame> observe(SimState& s,
                                             const SimConfig& cfg) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double drop = uni(s.rng);
  std::normal_distribution<double> noise_xy(0.0, cfg.sigma_xy);
  std::normal_distribution<double> noise_th(0.0, cfg.sigma_theta);
  auto jitter_xy = [&](const Vec2& p) {
    return cfg.sigma_xy > 0.0 ? Vec2{p.x + noise_xy(s.rng), p.y + noise_xy(s.rng)}
                              : p;
  };
  auto jitter_th = [&](double th) {
    return cfg.sigma_theta > 0.0 ? wrap_angle(th + noise_th(s.rng)) : th;
  };

  DetectionFrame frame;
  frame.t = s.t;
  frame.camera_id = cfg.camera.id;
  if (s.holder < 0) {
    Detection d;
    d.camera_id = cfg.camera.id;
    d.kind = ObjectKind::ball;
    d.position = jitter_xy(s.ball.pos);
    frame.detections.push_back(d);
  }
  for (const auto& r : s.robots) {
    Detection d;
    d.camera_id = cfg.camera.id;
    d.kind = r.team;
    d.robot_id = r.id;
    d.position = jitter_xy(r.pose.pos);
    d.orientation = jitter_th(r.pose.theta);
    frame.detections.push_back(d);
  }
  if (drop < cfg.packet_loss) return std::nullopt;
  return frame;
}

// ---------------------------------------------------------------------------
// Pass experiment: a passer kicks along a jittered ray; the receiver runs the
// tracker -> intercept -> select_skill pipeline and tries to catch the ball
// while it is still rolling inside the field.

// Default script: an 8 m pass with the receiver starting 3 m off the ball
// line, lightly jittered per trial.
struct PassScenario {
  Vec2 passer_pos{-4000.0, 0.0};
  double pass_dir{0.0};           // rad, nominal kick direction
  double pass_length{8000.0};     // mm, to the nominal kick target
  Vec2 receiver_base{1500.0, 3000.0};  // y is mirrored randomly per trial
  double kick_speed{3000.0};      // mm/s
  int warmup_ticks{30};           // ticks before the kick (tracker lock-on)
  double timeout{8.0};            // s per trial
  double receiver_jitter{400.0};  // mm
  double angle_jitter{deg_to_rad(3.0)};
};

namespace detail {

inline Vec2 clamp_to_field(const Vec2& p, const FieldGeometry& f,
                           double inset = 1.0) {
  return {std::clamp(p.x, -f.half_length() + inset, f.half_length() - inset),
          std::clamp(p.y, -f.half_width() + inset, f.half_width() - inset)};
}

// Drive toward `target` (stop there), face `face_at`. Works on the tracker's
// estimates only; errors in the estimated heading rotate the whole command.
inline RobotCommand drive_command(const Vec2& self_p, double self_theta,
                                  const Vec2& target, const Vec2& face_at,
                                  const MotionLimits& limits) {
  RobotCommand cmd;
  Vec2 delta = target - self_p;
  double dist = delta.norm();
  if (dist > 1.0) {
    double speed = std::min(limits.v_max,
                            std::sqrt(2.0 * 0.7 * limits.a_dec * dist));
    Vec2 v_world = delta * (speed / dist);
    Vec2 v_robot = v_world.rotated(-self_theta);
    cmd.vx = static_cast<int>(std::clamp(v_robot.x, -4095.0, 4095.0));
    cmd.vy = static_cast<int>(std::clamp(v_robot.y, -4095.0, 4095.0));
  }
  Vec2 look = face_at - self_p;
  if (!look.is_zero()) {
    double w = 5.0 * wrap_angle(look.angle() - self_theta);
    w = std::clamp(w, -limits.w_max, limits.w_max);
    cmd.w = static_cast<int>(std::clamp(w * 100.0, -2047.0, 2047.0));
  }
  return cmd;
}

}  // namespace detail

// Runs one scripted pass. Success: the receiver captures the ball before it
// stops or leaves the field.
inline bool run_pass_trial(const SimConfig& cfg, const PassScenario& sc,
                           int trial) {
  std::mt19937_64 trng(mix_seed(cfg.seed, 0x70617373ULL + trial));
  auto uni = [&](double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(trng);
  };

  double side = (trng() & 1) ? 1.0 : -1.0;
  double ang = sc.pass_dir + uni(-sc.angle_jitter, sc.angle_jitter);
  Vec2 dir{std::cos(ang), std::sin(ang)};
  Vec2 kick_target = sc.passer_pos + dir * sc.pass_length;
  Vec2 receiver_pos{sc.receiver_base.x + uni(-sc.receiver_jitter, sc.receiver_jitter),
                    side * (sc.receiver_base.y +
                            uni(-sc.receiver_jitter, sc.receiver_jitter))};

  SimState sim;
  sim.rng.seed(mix_seed(cfg.seed, 0x6F627376ULL + trial));
  SimRobot passer{{sc.passer_pos, ang}, {0, 0}, 0.0, ObjectKind::robot_blue, 0};
  SimRobot receiver{{receiver_pos, (sc.passer_pos - receiver_pos).angle()},
                    {0, 0},
                    0.0,
                    ObjectKind::robot_blue,
                    1};
  sim.robots = {passer, receiver};
  sim.holder = 0;
  sim.ball.pos = detail::mouth_of(passer, cfg);

  TrackerWorld tracker;
  tracker.add_camera(cfg.camera);

  InterceptParams intercept_params;
  auto kick_power = static_cast<std::uint8_t>(std::clamp(
      std::lround(127.0 * sc.kick_speed / cfg.kick_speed_max), 1L, 127L));

  int max_ticks = static_cast<int>(sc.timeout / cfg.dt);
  for (int tick = 0; tick <= max_ticks; ++tick) {
    if (auto frame = observe(sim, cfg)) tracker.ingest_frame(*frame);

    std::vector<RobotCommand> cmds(2);
    if (tick == sc.warmup_ticks) cmds[0].kick_power = kick_power;

    auto self = tracker.robot(ObjectKind::robot_blue, 1);
    auto ball = tracker.best_ball();
    const ConfidenceParams& conf = tracker.config().confidence;
    if (self && ball && is_valid(self->confidence, conf) &&
        is_valid(ball->confidence, conf)) {
      Track self_now = tracker.predicted(*self, sim.t);
      Track ball_now = tracker.predicted(*ball, sim.t);
      Vec2 self_p = detail::clamp_to_field(self_now.position(), cfg.field);
      Vec2 ball_p = detail::clamp_to_field(ball_now.position(), cfg.field);
      Vec2 ball_v = ball_now.velocity();

      Vec2 target = ball_p;
      if (ball_v.norm() > 250.0) {
        InterceptResult res =
            intercept(ball_p, ball_v, self_p, self_now.velocity(), cfg.limits,
                      cfg.ball_model, intercept_params, cfg.field);
        target = res.p_best;
        // The skill choice is informational here: in this kinematic world
        // chase/intercept/touch all reduce to reaching the point while
        // facing the ball.
        if (self_p != target && target != kick_target)
          (void)select_skill(self_p, target, kick_target);
      }
      cmds[1] = detail::drive_command(self_p, self_now.theta(), target, ball_p,
                                      cfg.limits);
    }

    step(sim, cfg, cmds);

    if (sim.holder == 1)
      return sim.capture_speed > 0.0 && cfg.field.contains(sim.capture_pos);
    if (sim.holder < 0 && tick > sc.warmup_ticks) {
      if (!cfg.field.contains(sim.ball.pos)) return false;
      if (sim.ball.vel.is_zero()) return false;
    }
  }
  return false;
}

inline double pass_success_rate(const SimConfig& cfg, int n_trials,
                                const PassScenario& sc = {}) {
  if (n_trials < 1)
    throw std::invalid_argument("pass_success_rate: n_trials must be >= 1");
  int ok = 0;
  for (int trial = 0; trial < n_trials; ++trial)
    if (run_pass_trial(cfg, sc, trial)) ++ok;
  return static_cast<double>(ok) / n_trials;
}

}  // namespace sslkit
