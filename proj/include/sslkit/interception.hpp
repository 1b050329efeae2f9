// interception.hpp - ball rolling model under field friction and the
// search-based interception prediction, plus interception-time heat maps.
//
// The search walks the ball's future positions at a fixed step dt and stops
// at the first step the robot (plus a conservative margin) can beat the ball
// to its position. Two terminal fallbacks guarantee a solution: a stopped
// ball is intercepted where it lies, and a ball leaving the field is
// intercepted at its boundary exit point.
#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sslkit/geom.hpp"
#include "sslkit/motion.hpp"

namespace sslkit {

struct BallModel {
  double decel{500.0};  // mm/s^2, friction deceleration magnitude
};

struct InterceptParams {
  double dt{1.0 / 60.0};   // s, search interval
  double t_margin{0.1};    // s, added to predicted robot arrival times
  double max_horizon{15.0};  // s
};

enum class InterceptKind { normal, ball_stopped, out_of_field };

struct InterceptResult {
  Vec2 p_best;
  double t_best{0.0};
  InterceptKind kind{InterceptKind::normal};
  int steps{0};  // k at termination
};

inline double ball_stop_time(const Vec2& v0, const BallModel& model) {
  return v0.norm() / model.decel;
}

// Straight-line uniform deceleration; the ball parks at its stop point.
inline Vec2 predict_ball_position(const Vec2& p0, const Vec2& v0, double t,
                                  const BallModel& model) {
  if (t < 0.0)
    throw std::invalid_argument("predict_ball_position: t must be >= 0");
  double speed = v0.norm();
  if (speed == 0.0) return p0;
  double t_stop = speed / model.decel;
  double s = (t >= t_stop) ? speed * speed / (2.0 * model.decel)
                           : speed * t - 0.5 * model.decel * t * t;
  return p0 + v0 * (s / speed);
}

inline Vec2 ball_stop_point(const Vec2& p0, const Vec2& v0,
                            const BallModel& model) {
  return predict_ball_position(p0, v0, ball_stop_time(v0, model), model);
}

inline InterceptResult intercept(const Vec2& ball_p, const Vec2& ball_v,
                                 const Vec2& robot_p, const Vec2& robot_v,
                                 const MotionLimits& limits,
                                 const BallModel& model,
                                 const InterceptParams& params,
                                 const FieldGeometry& field) {
  if (!field.contains(ball_p))
    throw std::invalid_argument("intercept: ball outside field");
  if (!field.contains(robot_p))
    throw std::invalid_argument("intercept: robot outside field");

  double t_stop = ball_v.is_zero() ? 0.0 : ball_stop_time(ball_v, model);

  for (int k = 0;; ++k) {
    double tk = k * params.dt;
    if (tk > params.max_horizon)
      throw std::runtime_error(
          "intercept: horizon exhausted without a terminal condition");

    Vec2 pk = predict_ball_position(ball_p, ball_v, tk, model);
    bool inside = field.contains(pk);

    if (inside) {
      double arrive =
          predict_robot_arrival_time(robot_p, robot_v, pk, limits) +
          params.t_margin;
      if (arrive <= tk) return {pk, arrive, InterceptKind::normal, k};
    }

    if (tk >= t_stop && inside) {
      // Ball already at rest: its stop point is the best interception point.
      Vec2 stop = pk;
      double arrive =
          predict_robot_arrival_time(robot_p, robot_v, stop, limits) +
          params.t_margin;
      return {stop, arrive, InterceptKind::ball_stopped, k};
    }

    if (!inside) {
      Vec2 exit = ray_field_exit(ball_p, ball_v, field);
      double arrive =
          predict_robot_arrival_time(robot_p, robot_v, exit, limits) +
          params.t_margin;
      return {exit, arrive, InterceptKind::out_of_field, k};
    }
  }
}

// ---------------------------------------------------------------------------
// Heat maps (interception time of a stationary robot per grid cell)

struct HeatmapCell {
  double t_best{0.0};
  bool out_of_field{false};
};

struct Heatmap {
  int nx{0};
  int ny{0};
  FieldGeometry field;
  std::vector<HeatmapCell> cells;  // row-major, index j*nx + i

  const HeatmapCell& at(int i, int j) const { return cells[j * nx + i]; }
  HeatmapCell& at(int i, int j) { return cells[j * nx + i]; }

  Vec2 cell_center(int i, int j) const {
    return {-field.half_length() + (i + 0.5) * field.length / nx,
            -field.half_width() + (j + 0.5) * field.width / ny};
  }
};

// Cells are independent; rows are computed in parallel and each thread writes
// only its own cells, so the result is deterministic.
inline Heatmap intercept_heatmap(const Vec2& ball_p, const Vec2& ball_v,
                                 int nx, int ny, const FieldGeometry& field,
                                 const MotionLimits& limits,
                                 const BallModel& model,
                                 const InterceptParams& params,
                                 unsigned n_threads = 0) {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("intercept_heatmap: grid must be >= 2x2");
  Heatmap map;
  map.nx = nx;
  map.ny = ny;
  map.field = field;
  map.cells.resize(static_cast<std::size_t>(nx) * ny);

  if (n_threads == 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(ny));

  auto worker = [&](int j_begin, int j_end) {
    for (int j = j_begin; j < j_end; ++j) {
      for (int i = 0; i < nx; ++i) {
        InterceptResult r = intercept(ball_p, ball_v, map.cell_center(i, j),
                                      {0.0, 0.0}, limits, model, params, field);
        map.at(i, j) = {r.t_best, r.kind == InterceptKind::out_of_field};
      }
    }
  };

  std::vector<std::thread> threads;
  int rows_per = (ny + static_cast<int>(n_threads) - 1) / static_cast<int>(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    int begin = static_cast<int>(w) * rows_per;
    int end = std::min(ny, begin + rows_per);
    if (begin >= end) break;
    threads.emplace_back(worker, begin, end);
  }
  for (auto& th : threads) th.join();
  return map;
}

// Row-major CSV, top row first (highest y). Out-of-field cells are emitted
// with a negated time so the flag survives the round trip.
inline void write_heatmap_csv(const Heatmap& map, std::ostream& os) {
  char buf[32];
  for (int j = map.ny - 1; j >= 0; --j) {
    for (int i = 0; i < map.nx; ++i) {
      const HeatmapCell& c = map.at(i, j);
      double v = c.out_of_field ? -c.t_best : c.t_best;
      std::snprintf(buf, sizeof(buf), "%.6f", v);
      os << buf;
      if (i + 1 < map.nx) os << ',';
    }
    os << '\n';
  }
}

// 8-bit binary PGM normalized to the largest finite interception time; darker
// means faster, out-of-field cells render white.
inline void write_heatmap_pgm(const Heatmap& map, std::ostream& os) {
  double t_max = 0.0;
  for (const auto& c : map.cells)
    if (!c.out_of_field) t_max = std::max(t_max, c.t_best);
  os << "P5\n" << map.nx << ' ' << map.ny << "\n255\n";
  for (int j = map.ny - 1; j >= 0; --j) {
    for (int i = 0; i < map.nx; ++i) {
      const HeatmapCell& c = map.at(i, j);
      unsigned char px = 255;
      if (!c.out_of_field)
        px = static_cast<unsigned char>(
            t_max > 0.0 ? std::lround(254.0 * c.t_best / t_max) : 0);
      os.put(static_cast<char>(px));
    }
  }
}

}  // namespace sslkit
