// config.hpp - key=value config files feeding the CLI defaults.
//
//   # comment
//   v_max = 3000
//   ball_decel = 500
//
// Unknown keys are rejected by name so typos do not silently fall back to
// defaults.
#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sslkit/interception.hpp"
#include "sslkit/motion.hpp"
#include "sslkit/simworld.hpp"
#include "sslkit/tracker.hpp"

namespace sslkit {

struct ToolConfig {
  FieldGeometry field;
  MotionLimits limits;
  BallModel ball_model;
  InterceptParams intercept;
  TrackerConfig tracker;
  PassScenario pass;
  ArrivalMode arrival_mode{ArrivalMode::stop};
  double lambda{0.15};
  double ball_speed_max{6500.0};
  double catch_radius{111.5};
  double kick_speed_max{6500.0};
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline ToolConfig parse_tool_config(const std::string& text,
                                    ToolConfig cfg = {}) {
  std::map<std::string, std::function<void(double)>> numeric{
      {"field_length", [&](double v) { cfg.field.length = v; }},
      {"field_width", [&](double v) { cfg.field.width = v; }},
      {"v_max", [&](double v) { cfg.limits.v_max = v; }},
      {"a_acc", [&](double v) { cfg.limits.a_acc = v; }},
      {"a_dec", [&](double v) { cfg.limits.a_dec = v; }},
      {"w_max", [&](double v) { cfg.limits.w_max = v; }},
      {"aw", [&](double v) { cfg.limits.aw = v; }},
      {"ball_decel", [&](double v) { cfg.ball_model.decel = v; }},
      {"dt", [&](double v) { cfg.intercept.dt = v; }},
      {"t_margin", [&](double v) { cfg.intercept.t_margin = v; }},
      {"max_horizon", [&](double v) { cfg.intercept.max_horizon = v; }},
      {"gate_radius", [&](double v) { cfg.tracker.gate_radius = v; }},
      {"fusion_radius", [&](double v) { cfg.tracker.fusion_radius = v; }},
      {"expiry", [&](double v) { cfg.tracker.expiry = v; }},
      {"p_seen", [&](double v) { cfg.tracker.confidence.p_seen = v; }},
      {"p_lost", [&](double v) { cfg.tracker.confidence.p_lost = v; }},
      {"p_valid", [&](double v) { cfg.tracker.confidence.p_valid = v; }},
      {"sigma_accel_ball", [&](double v) { cfg.tracker.sigma_accel_ball = v; }},
      {"sigma_accel_robot", [&](double v) { cfg.tracker.sigma_accel_robot = v; }},
      {"sigma_meas", [&](double v) { cfg.tracker.sigma_meas = v; }},
      {"sigma_meas_theta", [&](double v) { cfg.tracker.sigma_meas_theta = v; }},
      {"lambda", [&](double v) { cfg.lambda = v; }},
      {"ball_speed_max", [&](double v) { cfg.ball_speed_max = v; }},
      {"catch_radius", [&](double v) { cfg.catch_radius = v; }},
      {"kick_speed_max", [&](double v) { cfg.kick_speed_max = v; }},
      {"pass_passer_x", [&](double v) { cfg.pass.passer_pos.x = v; }},
      {"pass_passer_y", [&](double v) { cfg.pass.passer_pos.y = v; }},
      {"pass_dir", [&](double v) { cfg.pass.pass_dir = v; }},
      {"pass_length", [&](double v) { cfg.pass.pass_length = v; }},
      {"pass_receiver_x", [&](double v) { cfg.pass.receiver_base.x = v; }},
      {"pass_receiver_y", [&](double v) { cfg.pass.receiver_base.y = v; }},
      {"pass_kick_speed", [&](double v) { cfg.pass.kick_speed = v; }},
      {"pass_warmup_ticks",
       [&](double v) { cfg.pass.warmup_ticks = static_cast<int>(v); }},
      {"pass_timeout", [&](double v) { cfg.pass.timeout = v; }},
      {"pass_receiver_jitter", [&](double v) { cfg.pass.receiver_jitter = v; }},
      {"pass_angle_jitter", [&](double v) { cfg.pass.angle_jitter = v; }},
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = detail::trim(s.substr(0, eq));
    std::string value = detail::trim(s.substr(eq + 1));

    if (key == "fusion_mode") {
      if (value == "radial")
        cfg.tracker.fusion_mode = FusionWeighting::radial;
      else if (value == "inverse_radial")
        cfg.tracker.fusion_mode = FusionWeighting::inverse_radial;
      else
        throw std::runtime_error(
            "config: fusion_mode must be 'radial' or 'inverse_radial'");
      continue;
    }
    if (key == "arrival_mode") {
      if (value == "stop")
        cfg.arrival_mode = ArrivalMode::stop;
      else if (value == "fly_through")
        cfg.arrival_mode = ArrivalMode::fly_through;
      else
        throw std::runtime_error(
            "config: arrival_mode must be 'stop' or 'fly_through'");
      continue;
    }

    auto it = numeric.find(key);
    if (it == numeric.end())
      throw std::runtime_error("config: unknown key '" + key + "'");
    try {
      std::size_t used = 0;
      double v = std::stod(value, &used);
      if (detail::trim(value.substr(used)) != "")
        throw std::invalid_argument(value);
      it->second(v);
    } catch (const std::exception&) {
      throw std::runtime_error("config: key '" + key +
                               "' needs a numeric value, got '" + value + "'");
    }
  }
  return cfg;
}

}  // namespace sslkit
