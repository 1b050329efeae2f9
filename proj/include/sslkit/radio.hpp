// radio.hpp - compact robot-control wire format and bandwidth arithmetic.
//
// Wire format (normative for this project):
//   header byte: [type:2][group:2][mask:4]
//     type  - packet type, 0 = motion control, 1-3 reserved
//     group - robot id block; slot s in this packet addresses robot group*4+s
//     mask  - existence bitmap, bit s set = command present for slot s
//   then one 48-bit big-endian command block per set mask bit, ascending slot:
//     [vx:13][vy:13][w:12][dribble:2][kick_mode:1][kick_power:7]
//     vx, vy   mm/s, two's complement, valid range [-4095, 4095]
//     w        centirad/s, two's complement, valid range [-2047, 2047]
//     dribble  0..3
//     kick_mode 0 = flat, 1 = chip
//     kick_power 0..127
//
// A full packet (mask = 0b1111) is 1 + 4*6 = 25 bytes, exactly one radio
// frame payload. The 32-byte airframe adds 5 address bytes and 2 CRC bytes.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sslkit {

enum class KickMode : std::uint8_t { flat = 0, chip = 1 };

struct RobotCommand {
  int vx{0};                       // mm/s
  int vy{0};                       // mm/s
  int w{0};                        // centirad/s
  std::uint8_t dribble{0};         // 0..3
  KickMode kick_mode{KickMode::flat};
  std::uint8_t kick_power{0};      // 0..127

  bool operator==(const RobotCommand&) const = default;
};

struct ControlPacket {
  std::uint8_t packet_type{0};  // 0..3
  std::uint8_t group{0};        // 0..3
  std::uint8_t mask{0};         // 4-bit existence bitmap
  std::vector<RobotCommand> commands;  // popcount(mask) entries, slot order

  bool operator==(const ControlPacket&) const = default;
};

inline constexpr std::size_t kCommandBytes = 6;
inline constexpr std::size_t kMaxPacketBytes = 25;

inline int popcount4(std::uint8_t mask) {
  return ((mask >> 0) & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1) +
         ((mask >> 3) & 1);
}

inline std::size_t encoded_size(std::uint8_t mask) {
  return 1 + kCommandBytes * static_cast<std::size_t>(popcount4(mask & 0xF));
}

namespace detail {

inline void check_range(const char* field, long value, long lo, long hi) {
  if (value < lo || value > hi)
    throw std::out_of_range(std::string(field) + " out of range [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]: " + std::to_string(value));
}

inline std::uint64_t pack_command(const RobotCommand& c) {
  check_range("vx", c.vx, -4095, 4095);
  check_range("vy", c.vy, -4095, 4095);
  check_range("w", c.w, -2047, 2047);
  check_range("dribble", c.dribble, 0, 3);
  check_range("kick_power", c.kick_power, 0, 127);
  auto u13 = [](int v) { return static_cast<std::uint64_t>(v) & 0x1FFF; };
  auto u12 = [](int v) { return static_cast<std::uint64_t>(v) & 0xFFF; };
  return (u13(c.vx) << 35) | (u13(c.vy) << 22) | (u12(c.w) << 10) |
         (static_cast<std::uint64_t>(c.dribble & 0x3) << 8) |
         (static_cast<std::uint64_t>(c.kick_mode) << 7) |
         static_cast<std::uint64_t>(c.kick_power & 0x7F);
}

inline RobotCommand unpack_command(std::uint64_t bits) {
  auto s13 = [](std::uint64_t u) {
    int v = static_cast<int>(u & 0x1FFF);
    return (v & 0x1000) ? v - 0x2000 : v;
  };
  auto s12 = [](std::uint64_t u) {
    int v = static_cast<int>(u & 0xFFF);
    return (v & 0x800) ? v - 0x1000 : v;
  };
  RobotCommand c;
  c.vx = s13(bits >> 35);
  c.vy = s13(bits >> 22);
  c.w = s12(bits >> 10);
  c.dribble = static_cast<std::uint8_t>((bits >> 8) & 0x3);
  c.kick_mode = static_cast<KickMode>((bits >> 7) & 0x1);
  c.kick_power = static_cast<std::uint8_t>(bits & 0x7F);
  return c;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode(const ControlPacket& p) {
  detail::check_range("packet_type", p.packet_type, 0, 3);
  detail::check_range("group", p.group, 0, 3);
  detail::check_range("mask", p.mask, 0, 15);
  if (p.commands.size() != static_cast<std::size_t>(popcount4(p.mask)))
    throw std::invalid_argument(
        "commands size does not match mask popcount: " +
        std::to_string(p.commands.size()) + " vs " +
        std::to_string(popcount4(p.mask)));

  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(p.mask));
  out.push_back(static_cast<std::uint8_t>((p.packet_type << 6) |
                                          (p.group << 4) | p.mask));
  std::size_t next = 0;
  for (int slot = 0; slot < 4; ++slot) {
    if (!(p.mask & (1 << slot))) continue;
    std::uint64_t bits = detail::pack_command(p.commands[next++]);
    for (int i = 0; i < 6; ++i)
      out.push_back(static_cast<std::uint8_t>(bits >> (40 - 8 * i)));
  }
  return out;
}

inline ControlPacket decode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw std::length_error("framing: empty packet");
  std::uint8_t header = bytes[0];
  ControlPacket p;
  p.packet_type = header >> 6;
  p.group = (header >> 4) & 0x3;
  p.mask = header & 0xF;
  std::size_t expect = encoded_size(p.mask);
  if (bytes.size() != expect)
    throw std::length_error("framing: expected " + std::to_string(expect) +
                            " bytes, got " + std::to_string(bytes.size()));
  std::size_t pos = 1;
  for (int slot = 0; slot < 4; ++slot) {
    if (!(p.mask & (1 << slot))) continue;
    std::uint64_t bits = 0;
    for (int i = 0; i < 6; ++i)
      bits = (bits << 8) | bytes[pos + i];
    pos += 6;
    p.commands.push_back(detail::unpack_command(bits));
  }
  return p;
}

// Minimal radio data rate for a team: ceil(n/4) packets per control tick,
// each a 32-byte airframe (5 address + 2 CRC + 25 payload).
inline double bandwidth_estimate(int n_robots, double control_hz) {
  if (n_robots < 0) throw std::invalid_argument("n_robots must be >= 0");
  if (control_hz <= 0.0) throw std::invalid_argument("control_hz must be > 0");
  int packets = (n_robots + 3) / 4;
  return static_cast<double>(packets) * 32.0 * 8.0 * control_hz;
}

}  // namespace sslkit
