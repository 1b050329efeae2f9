// tactics.hpp - interception-skill selection, marking-point construction and
// time-cost role assignment.
#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "sslkit/geom.hpp"
#include "sslkit/interception.hpp"
#include "sslkit/motion.hpp"

namespace sslkit {

// ---------------------------------------------------------------------------
// Skill selection by the angle between robot->ball and ball->kick-target

enum class Skill { chase, intercept, touch };

struct SkillChoice {
  Skill skill{Skill::chase};
  double theta{0.0};  // rad, in [0, pi]
};

// theta < 45 deg: chase the ball forward and kick on.
// 45 deg <= theta <= 120 deg: intercept, then turn and shoot.
// theta > 120 deg: the ball comes toward us, touch it on directly.
// Both boundaries belong to the intercept band.
inline Skill skill_for_theta(double theta) {
  if (theta < deg_to_rad(45.0)) return Skill::chase;
  if (theta <= deg_to_rad(120.0)) return Skill::intercept;
  return Skill::touch;
}

inline SkillChoice select_skill(const Vec2& robot_p, const Vec2& intercept_p,
                                const Vec2& kick_target) {
  Vec2 pb = intercept_p - robot_p;
  Vec2 bt = kick_target - intercept_p;
  if (pb.is_zero() || bt.is_zero())
    throw std::invalid_argument(
        "select_skill: degenerate geometry (coincident points)");
  double theta = angle_between(pb, bt);
  return {skill_for_theta(theta), theta};
}

// ---------------------------------------------------------------------------
// Marking

struct MarkingPoint {
  Vec2 m;          // where our defender should stand
  Vec2 o;          // opponent's best interception point
  Vec2 p;          // shot-line point the stand-off is anchored to
  double radius;   // |o - e|: inside this circle we win the race to o
};

// Geometry core: circle centered at o with the given radius, p is where the
// segment o->goal crosses the circle (or the goal itself when inside), and m
// sits on segment p->o at fraction lambda from p.
inline MarkingPoint marking_from_circle(const Vec2& o, double radius,
                                        const Vec2& goal, double lambda) {
  Vec2 p = goal;
  Vec2 og = goal - o;
  double d = og.norm();
  if (d > radius && d > 0.0) p = o + og * (radius / d);
  return {p + (o - p) * lambda, o, p, radius};
}

// Defensive stand-off against a pass B -> E: assume the ball is kicked from B
// along ray BE at full speed and the receiver at E (at rest, with the
// opponent's motion limits) runs its optimal interception. Standing at M we
// reach the opponent's interception point first while staying on its shot
// line to the goal.
inline MarkingPoint marking_point(const Vec2& ball, const Vec2& receiver,
                                  const Vec2& goal,
                                  const MotionLimits& opp_limits,
                                  double ball_speed_max, const BallModel& model,
                                  const InterceptParams& params,
                                  const FieldGeometry& field,
                                  double lambda = 0.15) {
  if ((receiver - ball).is_zero())
    throw std::invalid_argument("marking_point: ball and receiver coincide");
  if (!field.contains(goal))
    throw std::invalid_argument("marking_point: goal outside field");

  Vec2 ball_v = (receiver - ball).normalized() * ball_speed_max;
  InterceptResult opp =
      intercept(ball, ball_v, receiver, {0.0, 0.0}, opp_limits, model, params,
                field);
  return marking_from_circle(opp.p_best, distance(opp.p_best, receiver), goal,
                             lambda);
}

// ---------------------------------------------------------------------------
// Role assignment

struct RoleTarget {
  enum class Type { point, ball };
  Type type{Type::point};
  Vec2 point;     // point target, or current ball position
  Vec2 ball_vel;  // ball targets only
};

enum class AssignCostMode {
  time,              // arrival time / interception time
  squared_distance,  // legacy cost, for comparison experiments
};

struct RobotState {
  Vec2 pos;
  Vec2 vel;
};

// Exact minimum-cost assignment (Hungarian method with potentials, O(n^3)).
inline std::vector<int> min_cost_assignment(
    const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

inline double role_cost(const RobotState& robot, const RoleTarget& target,
                        const MotionLimits& limits, const BallModel& model,
                        const InterceptParams& params,
                        const FieldGeometry& field, AssignCostMode mode,
                        ArrivalMode arrival = ArrivalMode::stop) {
  if (mode == AssignCostMode::squared_distance)
    return (target.point - robot.pos).norm_sq();
  if (target.type == RoleTarget::Type::ball)
    return intercept(target.point, target.ball_vel, robot.pos, robot.vel,
                     limits, model, params, field)
        .t_best;
  return arrival_time(Pose{robot.pos, 0.0}, robot.vel, target.point,
                      std::nullopt, limits, arrival);
}

// Minimum-total-cost matching robot -> target. result[i] is the target index
// assigned to robot i.
inline std::vector<int> assign_roles(
    const std::vector<RobotState>& robots,
    const std::vector<RoleTarget>& targets, const MotionLimits& limits,
    const BallModel& model, const InterceptParams& params,
    const FieldGeometry& field,
    AssignCostMode mode = AssignCostMode::time,
    ArrivalMode arrival = ArrivalMode::stop) {
  if (robots.size() != targets.size())
    throw std::invalid_argument(
        "assign_roles: robot and target counts differ (" +
        std::to_string(robots.size()) + " vs " +
        std::to_string(targets.size()) + ")");
  if (robots.size() > 16)
    throw std::invalid_argument("assign_roles: more than 16 robots");

  std::size_t n = robots.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i][j] = role_cost(robots[i], targets[j], limits, model, params,
                             field, mode, arrival);
  return min_cost_assignment(cost);
}

}  // namespace sslkit
