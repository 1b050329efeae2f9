// io.hpp - file and wire formats: detection-frame records, camera configs,
// codec command files, scenario files, world-state records, hex dumps, and a
// small UDP line receiver.
//
// All structured text is JSON (one record per line for streams). Parse errors
// name the offending field.
#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sslkit/geom.hpp"
#include "sslkit/interception.hpp"
#include "sslkit/motion.hpp"
#include "sslkit/radio.hpp"
#include "sslkit/tactics.hpp"
#include "sslkit/tracker.hpp"

namespace sslkit {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error(std::string(ctx) + ": missing field '" + key +
                             "'");
  return *it;
}

inline double num(const json& j, const char* key, const char* ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number())
    throw std::runtime_error(std::string(ctx) + ": field '" + key +
                             "' must be a number");
  return v.get<double>();
}

inline double num_or(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<double>();
}

inline int integer(const json& j, const char* key, const char* ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number_integer())
    throw std::runtime_error(std::string(ctx) + ": field '" + key +
                             "' must be an integer");
  return v.get<int>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Detection frames
//
// {"t": s, "camera_id": n, "balls": [{"x","y"}],
//  "robots_blue": [{"id","x","y","theta"}], "robots_yellow": [...]}

inline DetectionFrame parse_detection_frame(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("frame record: ") + e.what());
  }
  const char* ctx = "frame record";
  DetectionFrame frame;
  frame.t = detail::num(j, "t", ctx);
  frame.camera_id = detail::integer(j, "camera_id", ctx);

  if (auto it = j.find("balls"); it != j.end()) {
    for (const auto& b : *it) {
      Detection d;
      d.camera_id = frame.camera_id;
      d.kind = ObjectKind::ball;
      d.position = {detail::num(b, "x", "balls entry"),
                    detail::num(b, "y", "balls entry")};
      frame.detections.push_back(d);
    }
  }
  auto robots = [&](const char* key, ObjectKind kind) {
    auto it = j.find(key);
    if (it == j.end()) return;
    for (const auto& r : *it) {
      Detection d;
      d.camera_id = frame.camera_id;
      d.kind = kind;
      d.robot_id = detail::integer(r, "id", key);
      d.position = {detail::num(r, "x", key), detail::num(r, "y", key)};
      d.orientation = detail::num_or(r, "theta", 0.0);
      frame.detections.push_back(d);
    }
  };
  robots("robots_blue", ObjectKind::robot_blue);
  robots("robots_yellow", ObjectKind::robot_yellow);
  return frame;
}

// ---------------------------------------------------------------------------
// Camera model config: array of {"id", "center": [x, y], "coverage_radius"}

inline std::vector<CameraModel> parse_camera_models(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("camera config: ") + e.what());
  }
  if (!j.is_array()) j = json::array({j});
  std::vector<CameraModel> cams;
  for (const auto& c : j) {
    CameraModel cam;
    cam.id = detail::integer(c, "id", "camera config");
    const json& center = detail::require(c, "center", "camera config");
    if (!center.is_array() || center.size() != 2)
      throw std::runtime_error("camera config: field 'center' must be [x, y]");
    cam.center = {center[0].get<double>(), center[1].get<double>()};
    cam.coverage_radius = detail::num(c, "coverage_radius", "camera config");
    cams.push_back(cam);
  }
  return cams;
}

// ---------------------------------------------------------------------------
// World-state records (tracker output stream)

inline std::string world_record(const TrackerWorld& world) {
  json rec;
  rec["t"] = world.time();
  json tracks = json::array();
  for (const auto& tr : world.tracks()) {
    json t;
    t["track_id"] = tr.track_id;
    switch (tr.id.kind) {
      case ObjectKind::ball: t["kind"] = "ball"; break;
      case ObjectKind::robot_blue: t["kind"] = "robot_blue"; break;
      case ObjectKind::robot_yellow: t["kind"] = "robot_yellow"; break;
    }
    if (is_robot(tr.id.kind)) {
      t["id"] = tr.id.number;
      t["theta"] = tr.theta();
    }
    t["x"] = tr.position().x;
    t["y"] = tr.position().y;
    t["vx"] = tr.velocity().x;
    t["vy"] = tr.velocity().y;
    t["confidence"] = tr.confidence;
    t["valid"] = is_valid(tr.confidence, world.config().confidence);
    tracks.push_back(t);
  }
  rec["tracks"] = tracks;
  return rec.dump();
}

// ---------------------------------------------------------------------------
// Codec command files
//
// {"packet_type", "group", "commands": [{"slot", "vx", "vy", "w", "dribble",
//  "kick_mode": "flat"|"chip", "kick_power"}]}; mask derives from the slots.

inline ControlPacket parse_control_packet(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("command file: ") + e.what());
  }
  const char* ctx = "command file";
  ControlPacket p;
  p.packet_type = static_cast<std::uint8_t>(detail::integer(j, "packet_type", ctx));
  p.group = static_cast<std::uint8_t>(detail::integer(j, "group", ctx));

  struct SlotCmd {
    int slot;
    RobotCommand cmd;
  };
  std::vector<SlotCmd> slots;
  for (const auto& c : detail::require(j, "commands", ctx)) {
    SlotCmd sc;
    sc.slot = detail::integer(c, "slot", "command entry");
    if (sc.slot < 0 || sc.slot > 3)
      throw std::runtime_error("command entry: field 'slot' must be 0..3");
    sc.cmd.vx = detail::integer(c, "vx", "command entry");
    sc.cmd.vy = detail::integer(c, "vy", "command entry");
    sc.cmd.w = detail::integer(c, "w", "command entry");
    sc.cmd.dribble =
        static_cast<std::uint8_t>(static_cast<int>(detail::num_or(c, "dribble", 0)));
    std::string mode = c.value("kick_mode", "flat");
    if (mode == "flat")
      sc.cmd.kick_mode = KickMode::flat;
    else if (mode == "chip")
      sc.cmd.kick_mode = KickMode::chip;
    else
      throw std::runtime_error(
          "command entry: field 'kick_mode' must be 'flat' or 'chip'");
    sc.cmd.kick_power =
        static_cast<std::uint8_t>(static_cast<int>(detail::num_or(c, "kick_power", 0)));
    slots.push_back(sc);
  }
  std::sort(slots.begin(), slots.end(),
            [](const SlotCmd& a, const SlotCmd& b) { return a.slot < b.slot; });
  for (const auto& sc : slots) {
    if (p.mask & (1 << sc.slot))
      throw std::runtime_error("command file: duplicate slot " +
                               std::to_string(sc.slot));
    p.mask |= static_cast<std::uint8_t>(1 << sc.slot);
    p.commands.push_back(sc.cmd);
  }
  return p;
}

inline std::string control_packet_to_json(const ControlPacket& p) {
  json j;
  j["packet_type"] = p.packet_type;
  j["group"] = p.group;
  json cmds = json::array();
  std::size_t next = 0;
  for (int slot = 0; slot < 4; ++slot) {
    if (!(p.mask & (1 << slot))) continue;
    const RobotCommand& c = p.commands[next++];
    json e;
    e["slot"] = slot;
    e["vx"] = c.vx;
    e["vy"] = c.vy;
    e["w"] = c.w;
    e["dribble"] = c.dribble;
    e["kick_mode"] = c.kick_mode == KickMode::flat ? "flat" : "chip";
    e["kick_power"] = c.kick_power;
    cmds.push_back(e);
  }
  j["commands"] = cmds;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Hex dumps (lowercase, space-separated byte pairs)

inline std::string bytes_to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 3);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back(digits[bytes[i] >> 4]);
    out.push_back(digits[bytes[i] & 0xF]);
  }
  return out;
}

inline std::vector<std::uint8_t> hex_to_bytes(const std::string& text) {
  std::vector<std::uint8_t> out;
  int hi = -1;
  for (char ch : text) {
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') continue;
    else throw std::runtime_error(std::string("hex input: invalid character '") + ch + "'");
    if (hi < 0) hi = v;
    else { out.push_back(static_cast<std::uint8_t>((hi << 4) | v)); hi = -1; }
  }
  if (hi >= 0) throw std::runtime_error("hex input: odd number of digits");
  return out;
}

// ---------------------------------------------------------------------------
// Scenario files

struct InterceptScenario {
  Vec2 ball_p, ball_v, robot_p, robot_v;
  FieldGeometry field;
  MotionLimits limits;
  BallModel ball_model;
  InterceptParams params;
};

inline MotionLimits parse_limits(const json& j, MotionLimits base) {
  base.v_max = detail::num_or(j, "v_max", base.v_max);
  base.a_acc = detail::num_or(j, "a_acc", base.a_acc);
  base.a_dec = detail::num_or(j, "a_dec", base.a_dec);
  base.w_max = detail::num_or(j, "w_max", base.w_max);
  base.aw = detail::num_or(j, "aw", base.aw);
  return base;
}

inline FieldGeometry parse_field(const json& j, FieldGeometry base) {
  base.length = detail::num_or(j, "length", base.length);
  base.width = detail::num_or(j, "width", base.width);
  return base;
}

inline InterceptScenario parse_intercept_scenario(
    const std::string& text, const InterceptScenario& base = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario file: ") + e.what());
  }
  const char* ctx = "scenario file";
  InterceptScenario sc = base;
  const json& ball = detail::require(j, "ball", ctx);
  sc.ball_p = {detail::num(ball, "x", "ball"), detail::num(ball, "y", "ball")};
  sc.ball_v = {detail::num_or(ball, "vx", 0.0), detail::num_or(ball, "vy", 0.0)};
  const json& robot = detail::require(j, "robot", ctx);
  sc.robot_p = {detail::num(robot, "x", "robot"), detail::num(robot, "y", "robot")};
  sc.robot_v = {detail::num_or(robot, "vx", 0.0), detail::num_or(robot, "vy", 0.0)};
  if (auto it = j.find("field"); it != j.end()) sc.field = parse_field(*it, sc.field);
  if (auto it = j.find("limits"); it != j.end()) sc.limits = parse_limits(*it, sc.limits);
  sc.ball_model.decel = detail::num_or(j, "ball_decel", sc.ball_model.decel);
  sc.params.dt = detail::num_or(j, "dt", sc.params.dt);
  sc.params.t_margin = detail::num_or(j, "t_margin", sc.params.t_margin);
  sc.params.max_horizon = detail::num_or(j, "max_horizon", sc.params.max_horizon);
  return sc;
}

struct AssignScenario {
  std::vector<RobotState> robots;
  std::vector<RoleTarget> targets;
  FieldGeometry field;
  MotionLimits limits;
  BallModel ball_model;
  InterceptParams params;
  AssignCostMode cost{AssignCostMode::time};
};

inline AssignScenario parse_assign_scenario(const std::string& text,
                                            const AssignScenario& base = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario file: ") + e.what());
  }
  const char* ctx = "scenario file";
  AssignScenario sc;
  sc.field = base.field;
  sc.limits = base.limits;
  sc.ball_model = base.ball_model;
  sc.params = base.params;
  sc.cost = base.cost;
  for (const auto& r : detail::require(j, "robots", ctx)) {
    RobotState rs;
    rs.pos = {detail::num(r, "x", "robots entry"), detail::num(r, "y", "robots entry")};
    rs.vel = {detail::num_or(r, "vx", 0.0), detail::num_or(r, "vy", 0.0)};
    sc.robots.push_back(rs);
  }
  for (const auto& t : detail::require(j, "targets", ctx)) {
    RoleTarget rt;
    std::string type = t.value("type", "point");
    if (type == "point") {
      rt.type = RoleTarget::Type::point;
    } else if (type == "ball") {
      rt.type = RoleTarget::Type::ball;
      rt.ball_vel = {detail::num_or(t, "vx", 0.0), detail::num_or(t, "vy", 0.0)};
    } else {
      throw std::runtime_error(
          "targets entry: field 'type' must be 'point' or 'ball'");
    }
    rt.point = {detail::num(t, "x", "targets entry"),
                detail::num(t, "y", "targets entry")};
    sc.targets.push_back(rt);
  }
  if (auto it = j.find("field"); it != j.end()) sc.field = parse_field(*it, sc.field);
  if (auto it = j.find("limits"); it != j.end()) sc.limits = parse_limits(*it, sc.limits);
  sc.ball_model.decel = detail::num_or(j, "ball_decel", sc.ball_model.decel);
  std::string cost = j.value("cost", "time");
  if (cost == "time")
    sc.cost = AssignCostMode::time;
  else if (cost == "squared_distance")
    sc.cost = AssignCostMode::squared_distance;
  else
    throw std::runtime_error(
        "scenario file: field 'cost' must be 'time' or 'squared_distance'");
  return sc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// UDP ingestion: one datagram carries one text record. Returns after
// max_msgs datagrams (or when the callback declines more).

inline void receive_udp_lines(
    std::uint16_t port, long max_msgs,
    const std::function<bool(const std::string&)>& on_line) {
  int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) throw std::runtime_error("udp: cannot create socket");
  int reuse = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw std::runtime_error("udp: cannot bind port " + std::to_string(port));
  }
  std::vector<char> buf(65536);
  long seen = 0;
  while (max_msgs < 0 || seen < max_msgs) {
    ssize_t n = ::recvfrom(fd, buf.data(), buf.size(), 0, nullptr, nullptr);
    if (n < 0) break;
    ++seen;
    if (!on_line(std::string(buf.data(), static_cast<std::size_t>(n)))) break;
  }
  ::close(fd);
}

}  // namespace sslkit
