// sslkit-cli - batch front-end: interception heat maps, single interception
// queries, pass-rate sweeps, detection-stream tracking, the radio codec, and
// role assignment. Every subcommand reads/writes plain files and is
// deterministic under --seed.
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sslkit/config.hpp"
#include "sslkit/interception.hpp"
#include "sslkit/io.hpp"
#include "sslkit/simworld.hpp"
#include "sslkit/tactics.hpp"

namespace {

using namespace sslkit;

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

ToolConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return parse_tool_config(read_file(path));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  auto out = open_out(path);
  out << text;
}

const char* kind_name(InterceptKind k) {
  switch (k) {
    case InterceptKind::normal: return "normal";
    case InterceptKind::ball_stopped: return "ball_stopped";
    case InterceptKind::out_of_field: return "out_of_field";
  }
  return "?";
}

// --- heatmap ---------------------------------------------------------------

struct HeatmapArgs {
  double ball_x{0}, ball_y{0};
  std::optional<double> ball_vx, ball_vy, ball_speed;
  double ball_dir_deg{0.0};
  std::string units{"cm"};
  std::string grid{"120x90"};
  std::string out{"heatmap"};
  std::string format{"both"};
  std::string config;
  unsigned threads{0};
};

int run_heatmap(const HeatmapArgs& a) {
  ToolConfig cfg = load_config(a.config);

  Vec2 ball_p;
  if (a.units == "cm") {
    // Figure convention: centimeters from the field corner.
    ball_p = {a.ball_x * 10.0 - cfg.field.half_length(),
              a.ball_y * 10.0 - cfg.field.half_width()};
  } else if (a.units == "mm") {
    ball_p = {a.ball_x, a.ball_y};
  } else {
    throw std::runtime_error("--units must be cm or mm");
  }

  Vec2 ball_v{0, 0};
  if (a.ball_speed) {
    double dir = deg_to_rad(a.ball_dir_deg);
    ball_v = {*a.ball_speed * std::cos(dir), *a.ball_speed * std::sin(dir)};
  }
  if (a.ball_vx) ball_v.x = *a.ball_vx;
  if (a.ball_vy) ball_v.y = *a.ball_vy;

  int nx = 0, ny = 0;
  if (std::sscanf(a.grid.c_str(), "%dx%d", &nx, &ny) != 2)
    throw std::runtime_error("--grid must look like 120x90");

  Heatmap map = intercept_heatmap(ball_p, ball_v, nx, ny, cfg.field,
                                  cfg.limits, cfg.ball_model, cfg.intercept,
                                  a.threads);

  if (a.format == "csv" || a.format == "both") {
    auto out = open_out(a.out + ".csv");
    write_heatmap_csv(map, out);
  }
  if (a.format == "pgm" || a.format == "both") {
    auto out = open_out(a.out + ".pgm");
    write_heatmap_pgm(map, out);
  }
  if (a.format != "csv" && a.format != "pgm" && a.format != "both")
    throw std::runtime_error("--format must be csv, pgm or both");

  double t_min = std::numeric_limits<double>::infinity();
  int flagged = 0;
  for (const auto& c : map.cells) {
    if (c.out_of_field) ++flagged;
    else t_min = std::min(t_min, c.t_best);
  }
  std::cout << "heatmap " << nx << "x" << ny << " ball_mm=(" << fmt(ball_p.x)
            << ", " << fmt(ball_p.y) << ") v_mm_s=(" << fmt(ball_v.x) << ", "
            << fmt(ball_v.y) << ") min_t=" << fmt(t_min)
            << " out_of_field_cells=" << flagged << "\n";
  return 0;
}

// --- intercept ---------------------------------------------------------------

int run_intercept(const std::string& scenario_path, const std::string& config,
                  const std::string& out) {
  ToolConfig cfg = load_config(config);
  // Config file supplies defaults; the scenario file wins where it speaks.
  InterceptScenario base;
  base.field = cfg.field;
  base.limits = cfg.limits;
  base.ball_model = cfg.ball_model;
  base.params = cfg.intercept;
  InterceptScenario sc = parse_intercept_scenario(read_file(scenario_path), base);
  InterceptResult r = intercept(sc.ball_p, sc.ball_v, sc.robot_p, sc.robot_v,
                                sc.limits, sc.ball_model, sc.params, sc.field);
  std::ostringstream os;
  os << "kind: " << kind_name(r.kind) << "\n"
     << "p_best_mm: " << fmt(r.p_best.x) << " " << fmt(r.p_best.y) << "\n"
     << "t_best_s: " << fmt(r.t_best) << "\n"
     << "steps: " << r.steps << "\n";
  write_text(out, os.str());
  return 0;
}

// --- passrate ----------------------------------------------------------------

int run_passrate(const std::string& sweep, const std::string& values_csv,
                 int trials, std::uint64_t seed, const std::string& config,
                 const std::string& out) {
  ToolConfig cfg = load_config(config);
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) values.push_back(std::stod(item));
  if (values.empty()) throw std::runtime_error("--values: no values given");

  SimConfig sim;
  sim.seed = seed;
  sim.field = cfg.field;
  sim.limits = cfg.limits;
  sim.ball_model = cfg.ball_model;
  sim.catch_radius = cfg.catch_radius;
  sim.kick_speed_max = cfg.kick_speed_max;

  if (sweep != "sigma_xy" && sweep != "sigma_theta" && sweep != "loss")
    throw std::runtime_error("--sweep must be sigma_xy, sigma_theta or loss");

  // Sweep points are independent trials with independent rng streams; run
  // them in parallel, emit in order.
  std::vector<std::future<double>> jobs;
  for (double v : values)
    jobs.push_back(std::async(std::launch::async, [=]() {
      SimConfig point = sim;
      if (sweep == "sigma_xy") point.sigma_xy = v;
      else if (sweep == "sigma_theta") point.sigma_theta = v;
      else point.packet_loss = v;
      return pass_success_rate(point, trials, cfg.pass);
    }));

  std::ostringstream os;
  os << "param,value,rate\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    double rate = jobs[i].get();
    os << sweep << "," << fmt(values[i], "%.4f") << "," << fmt(rate, "%.4f")
       << "\n";
    std::cerr << sweep << "=" << fmt(values[i], "%.4f")
              << " rate=" << fmt(rate, "%.4f") << "\n";
  }
  write_text(out, os.str());
  return 0;
}

// --- track -------------------------------------------------------------------

int run_track(const std::string& frames_path, int udp_port,
              const std::string& cameras_path, const std::string& config,
              const std::string& out, long max_frames) {
  ToolConfig cfg = load_config(config);
  TrackerWorld world(cfg.tracker);
  if (!cameras_path.empty())
    for (const auto& cam : parse_camera_models(read_file(cameras_path)))
      world.add_camera(cam);

  std::ofstream file_out;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file_out = open_out(out);
    os = &file_out;
  }

  auto handle = [&](const std::string& line) {
    std::string trimmed = line;
    while (!trimmed.empty() &&
           (trimmed.back() == '\n' || trimmed.back() == '\r'))
      trimmed.pop_back();
    if (trimmed.empty()) return true;
    world.ingest_frame(parse_detection_frame(trimmed));
    (*os) << world_record(world) << "\n";
    return true;
  };

  if (!frames_path.empty()) {
    std::ifstream in(frames_path);
    if (!in) throw std::runtime_error("cannot open file: " + frames_path);
    std::string line;
    long n = 0;
    while (std::getline(in, line)) {
      handle(line);
      if (max_frames >= 0 && ++n >= max_frames) break;
    }
  } else if (udp_port > 0) {
    receive_udp_lines(static_cast<std::uint16_t>(udp_port), max_frames, handle);
  } else {
    throw std::runtime_error("track: need --frames FILE or --udp PORT");
  }
  return 0;
}

// --- codec -------------------------------------------------------------------

int run_codec(const std::string& mode, const std::string& in_path,
              const std::string& out) {
  std::string text = read_file(in_path);
  if (mode == "encode") {
    ControlPacket p = parse_control_packet(text);
    write_text(out, bytes_to_hex(encode(p)) + "\n");
  } else {
    std::vector<std::uint8_t> bytes = hex_to_bytes(text);
    ControlPacket p = decode(bytes);
    write_text(out, control_packet_to_json(p));
  }
  return 0;
}

// --- assign ------------------------------------------------------------------

int run_assign(const std::string& scenario_path, const std::string& config,
               const std::string& out) {
  ToolConfig cfg = load_config(config);
  AssignScenario base;
  base.field = cfg.field;
  base.limits = cfg.limits;
  base.ball_model = cfg.ball_model;
  base.params = cfg.intercept;
  AssignScenario sc = parse_assign_scenario(read_file(scenario_path), base);
  std::vector<int> match = assign_roles(sc.robots, sc.targets, sc.limits,
                                        sc.ball_model, sc.params, sc.field,
                                        sc.cost, cfg.arrival_mode);
  std::ostringstream os;
  double total = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    double c = role_cost(sc.robots[i], sc.targets[match[i]], sc.limits,
                         sc.ball_model, sc.params, sc.field, sc.cost,
                         cfg.arrival_mode);
    total += c;
    os << "robot " << i << " -> target " << match[i] << " (cost " << fmt(c)
       << ")\n";
  }
  os << "total_cost: " << fmt(total) << "\n";
  write_text(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robot-soccer perception & planning toolkit"};
  app.require_subcommand(1);

  // heatmap
  HeatmapArgs ha;
  auto* heatmap = app.add_subcommand(
      "heatmap", "interception-time heat map for a rolling ball");
  heatmap->add_option("--ball-x", ha.ball_x, "ball x (cm from field corner by default)")->required();
  heatmap->add_option("--ball-y", ha.ball_y, "ball y (cm from field corner by default)")->required();
  heatmap->add_option("--units", ha.units, "cm (corner origin) or mm (center origin) [cm]");
  double vx = 0, vy = 0, speed = 0;
  auto* ovx = heatmap->add_option("--ball-vx", vx, "ball velocity x (mm/s)");
  auto* ovy = heatmap->add_option("--ball-vy", vy, "ball velocity y (mm/s)");
  auto* ospeed = heatmap->add_option("--ball-speed", speed, "ball speed (mm/s)");
  heatmap->add_option("--ball-dir", ha.ball_dir_deg, "ball direction (deg, 0 = +x) [0]");
  heatmap->add_option("--grid", ha.grid, "grid cells, e.g. 120x90 [120x90]");
  heatmap->add_option("--out", ha.out, "output path prefix [heatmap]");
  heatmap->add_option("--format", ha.format, "csv, pgm or both [both]");
  heatmap->add_option("--config", ha.config, "key=value config file");
  heatmap->add_option("--threads", ha.threads, "worker threads (0 = auto)");

  // intercept
  std::string in_scenario, in_config, in_out;
  auto* icpt = app.add_subcommand("intercept", "single interception query");
  icpt->add_option("--scenario", in_scenario, "scenario JSON file")->required();
  icpt->add_option("--config", in_config, "key=value config file");
  icpt->add_option("--out", in_out, "output file [stdout]");

  // passrate
  std::string pr_sweep, pr_values, pr_config, pr_out;
  int pr_trials = 100;
  std::uint64_t pr_seed = 1;
  auto* pr = app.add_subcommand("passrate",
                                "closed-loop pass success-rate sweep");
  pr->add_option("--sweep", pr_sweep, "sigma_xy | sigma_theta | loss")->required();
  pr->add_option("--values", pr_values, "comma-separated sweep values")->required();
  pr->add_option("--trials", pr_trials, "trials per point [100]");
  pr->add_option("--seed", pr_seed, "rng seed [1]");
  pr->add_option("--config", pr_config, "key=value config file");
  pr->add_option("--out", pr_out, "output CSV file [stdout]");

  // track
  std::string tr_frames, tr_cameras, tr_config, tr_out;
  int tr_udp = 0;
  long tr_max = -1;
  auto* tr = app.add_subcommand("track", "run the tracker over a frame stream");
  tr->add_option("--frames", tr_frames, "line-delimited frame records");
  tr->add_option("--udp", tr_udp, "UDP port, one record per datagram");
  tr->add_option("--cameras", tr_cameras, "camera model JSON file");
  tr->add_option("--config", tr_config, "key=value config file");
  tr->add_option("--out", tr_out, "output file [stdout]");
  tr->add_option("--max-frames", tr_max, "stop after N frames [-1 = all]");

  // codec
  std::string cd_in, cd_out;
  auto* codec = app.add_subcommand("codec", "radio packet encode/decode");
  codec->require_subcommand(1);
  auto* enc = codec->add_subcommand("encode", "JSON command file -> hex");
  enc->add_option("--in", cd_in, "command JSON file")->required();
  enc->add_option("--out", cd_out, "output file [stdout]");
  auto* dec = codec->add_subcommand("decode", "hex -> JSON command file");
  dec->add_option("--in", cd_in, "hex dump file")->required();
  dec->add_option("--out", cd_out, "output file [stdout]");

  // assign
  std::string as_scenario, as_config, as_out;
  auto* as = app.add_subcommand("assign", "minimum-time role assignment");
  as->add_option("--scenario", as_scenario, "scenario JSON file")->required();
  as->add_option("--config", as_config, "key=value config file");
  as->add_option("--out", as_out, "output file [stdout]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (heatmap->parsed()) {
      if (*ovx) ha.ball_vx = vx;
      if (*ovy) ha.ball_vy = vy;
      if (*ospeed) ha.ball_speed = speed;
      return run_heatmap(ha);
    }
    if (icpt->parsed()) return run_intercept(in_scenario, in_config, in_out);
    if (pr->parsed())
      return run_passrate(pr_sweep, pr_values, pr_trials, pr_seed, pr_config,
                          pr_out);
    if (tr->parsed())
      return run_track(tr_frames, tr_udp, tr_cameras, tr_config, tr_out,
                       tr_max);
    if (codec->parsed())
      return run_codec(enc->parsed() ? "encode" : "decode", cd_in, cd_out);
    if (as->parsed()) return run_assign(as_scenario, as_config, as_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
