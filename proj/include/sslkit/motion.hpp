// motion.hpp - time-optimal 1-D trapezoidal velocity planning and the 2-D/1-D
// axis decomposition used to predict robot arrival times.
//
// A plan is a bang-coast-bang acceleration schedule that brings the robot to
// the requested displacement with zero terminal velocity. Planning is exact;
// every emitted phase has constant acceleration, so the profile can be
// integrated in closed form.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sslkit/geom.hpp"

namespace sslkit {

struct MotionLimits {
  double v_max{3000.0};   // mm/s
  double a_acc{3000.0};   // mm/s^2, accelerating toward the target
  double a_dec{4000.0};   // mm/s^2, braking
  double w_max{10.0};     // rad/s
  double aw{30.0};        // rad/s^2
};

struct MotionPhase {
  double duration{0.0};  // s
  double accel{0.0};     // mm/s^2 (or rad/s^2 on the rotation axis)
};

struct TimeProfile {
  std::vector<MotionPhase> phases;  // executed in order, constant accel each
  double total_time{0.0};
};

struct ProfileState {
  double pos{0.0};
  double vel{0.0};
};

// Evaluates a profile at time t (clamped to [0, total_time]) given the
// initial velocity it was planned for.
inline ProfileState sample_profile(const TimeProfile& profile, double v0,
                                   double t) {
  ProfileState s{0.0, v0};
  double elapsed = 0.0;
  for (const auto& ph : profile.phases) {
    double tau = std::min(std::max(t - elapsed, 0.0), ph.duration);
    s.pos += s.vel * tau + 0.5 * ph.accel * tau * tau;
    s.vel += ph.accel * tau;
    elapsed += ph.duration;
    if (t <= elapsed) break;
  }
  return s;
}

namespace detail {

inline void append_phase(TimeProfile& p, double duration, double accel) {
  if (duration > 0.0) {
    p.phases.push_back({duration, accel});
    p.total_time += duration;
  }
}

}  // namespace detail

// Time-optimal 1-D plan: reach displacement `distance` (signed) starting at
// velocity `v0` (signed), ending at rest, with |v| <= v_max and acceleration
// within [-a_dec, +a_acc] in the direction of travel.
//
// Overshoot (v0 too fast to stop before the target, or moving away from it)
// is handled by braking at the applicable limit and replanning the remainder,
// which is the time-optimal policy for this constraint set.
inline TimeProfile plan_1d(double distance, double v0, double v_max,
                           double a_acc, double a_dec) {
  TimeProfile out;
  if (distance == 0.0 && v0 == 0.0) return out;

  if (distance < 0.0) {
    TimeProfile mirrored = plan_1d(-distance, -v0, v_max, a_acc, a_dec);
    out.total_time = mirrored.total_time;
    out.phases.reserve(mirrored.phases.size());
    for (const auto& ph : mirrored.phases)
      out.phases.push_back({ph.duration, -ph.accel});
    return out;
  }

  // Canonical frame: target at +distance.
  double v = v0;
  double d = distance;

  if (v < 0.0) {
    // Moving away: maximum available acceleration toward the target is
    // +a_acc. Stop, then plan the enlarged distance from rest.
    double t_stop = -v / a_acc;
    double d_stop = v * t_stop + 0.5 * a_acc * t_stop * t_stop;  // < 0
    detail::append_phase(out, t_stop, a_acc);
    TimeProfile rest = plan_1d(d - d_stop, 0.0, v_max, a_acc, a_dec);
    for (const auto& ph : rest.phases)
      detail::append_phase(out, ph.duration, ph.accel);
    return out;
  }

  double stop_dist = v * v / (2.0 * a_dec);
  if (stop_dist > d) {
    // Cannot stop before the target: brake to rest, then come back.
    detail::append_phase(out, v / a_dec, -a_dec);
    TimeProfile back = plan_1d(d - stop_dist, 0.0, v_max, a_acc, a_dec);
    for (const auto& ph : back.phases)
      detail::append_phase(out, ph.duration, ph.accel);
    return out;
  }

  if (v > v_max) {
    // Above the cap (e.g. handed an out-of-spec entry velocity): shed the
    // excess first. No overshoot possible here since stop_dist <= d.
    double t_b = (v - v_max) / a_dec;
    d -= v * t_b - 0.5 * a_dec * t_b * t_b;
    detail::append_phase(out, t_b, -a_dec);
    v = v_max;
  }

  // v in [0, v_max], stop_dist <= d. Peak velocity if no cruise cap applied:
  //   (v_peak^2 - v^2) / (2 a_acc) + v_peak^2 / (2 a_dec) = d
  double v_peak_sq =
      (2.0 * d * a_acc * a_dec + v * v * a_dec) / (a_acc + a_dec);
  double v_peak = std::sqrt(std::max(v_peak_sq, 0.0));

  if (v_peak <= v_max) {
    detail::append_phase(out, (v_peak - v) / a_acc, a_acc);
    detail::append_phase(out, v_peak / a_dec, -a_dec);
  } else {
    double d_acc = (v_max * v_max - v * v) / (2.0 * a_acc);
    double d_dec = v_max * v_max / (2.0 * a_dec);
    detail::append_phase(out, (v_max - v) / a_acc, a_acc);
    detail::append_phase(out, (d - d_acc - d_dec) / v_max, 0.0);
    detail::append_phase(out, v_max / a_dec, -a_dec);
  }
  return out;
}

inline TimeProfile plan_1d(double distance, double v0,
                           const MotionLimits& limits) {
  return plan_1d(distance, v0, limits.v_max, limits.a_acc, limits.a_dec);
}

// Arrival semantics: `stop` plans the full trapezoid (zero velocity at the
// target, the default); `fly_through` only requires reaching the point.
enum class ArrivalMode { stop, fly_through };

// Minimal time to sweep past a point `distance` away starting at v0, with no
// terminal-velocity constraint.
inline double fly_through_time_1d(double distance, double v0, double v_max,
                                  double a_acc, double a_dec) {
  if (distance == 0.0) return 0.0;
  if (distance < 0.0) return fly_through_time_1d(-distance, -v0, v_max, a_acc, a_dec);

  double t = 0.0, v = v0, d = distance;
  if (v < 0.0) {
    // Moving away: stop first, then run at the target from rest.
    double t_stop = -v / a_acc;
    t += t_stop;
    d += v * v / (2.0 * a_acc);
    v = 0.0;
  } else if (v > v_max) {
    // Shed the excess; if the target falls inside the braking arc, solve the
    // decel quadratic directly.
    double d_brake = (v * v - v_max * v_max) / (2.0 * a_dec);
    if (d_brake >= d) {
      double disc = std::sqrt(v * v - 2.0 * a_dec * d);
      return (v - disc) / a_dec;
    }
    t += (v - v_max) / a_dec;
    d -= d_brake;
    v = v_max;
  }

  double d_to_cap = (v_max * v_max - v * v) / (2.0 * a_acc);
  if (d_to_cap >= d) {
    // Never reaches the cap: v0 t + a t^2 / 2 = d.
    double disc = std::sqrt(v * v + 2.0 * a_acc * d);
    return t + (disc - v) / a_acc;
  }
  return t + (v_max - v) / a_acc + (d - d_to_cap) / v_max;
}

// Arrival time of an omnidirectional robot: the frame is rotated so +X points
// from start to target, then X (full distance), Y (kill lateral velocity) and
// optionally rotation are planned as independent 1-D problems. The slowest
// axis dominates.
inline double arrival_time(const Pose& start, const Vec2& v_start,
                           const Vec2& target,
                           std::optional<double> target_theta,
                           const MotionLimits& limits,
                           ArrivalMode mode = ArrivalMode::stop) {
  Vec2 delta = target - start.pos;
  double dist = delta.norm();

  Vec2 x_axis{1.0, 0.0};
  if (dist > 0.0)
    x_axis = delta / dist;
  else if (!v_start.is_zero())
    x_axis = v_start.normalized();
  Vec2 y_axis = x_axis.perp();

  double vx = v_start.dot(x_axis);
  double tx = mode == ArrivalMode::stop
                  ? plan_1d(dist, vx, limits).total_time
                  : fly_through_time_1d(dist, vx, limits.v_max, limits.a_acc,
                                        limits.a_dec);
  double ty = plan_1d(0.0, v_start.dot(y_axis), limits).total_time;
  double t = std::max(tx, ty);

  if (target_theta) {
    double dth = wrap_angle(*target_theta - start.theta);
    t = std::max(
        t, plan_1d(dth, 0.0, limits.w_max, limits.aw, limits.aw).total_time);
  }
  return t;
}

// Arrival time without a final-heading constraint; this is the cost the
// interception search queries.
inline double predict_robot_arrival_time(const Vec2& robot_pos,
                                         const Vec2& robot_vel,
                                         const Vec2& point,
                                         const MotionLimits& limits) {
  return arrival_time(Pose{robot_pos, 0.0}, robot_vel, point, std::nullopt,
                      limits);
}

}  // namespace sslkit
