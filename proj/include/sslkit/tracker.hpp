// tracker.hpp - filtered world state from noisy per-camera detections.
//
// Pipeline per ingested frame: predict all tracks to the frame time, match
// detections to tracks by gated nearest neighbor, Kalman-update matched
// tracks (fusing co-visible detections from overlapping cameras within the
// same tick), step per-object confidence, spawn tracks for unmatched
// detections, and coast unmatched tracks on the motion model alone.
//
// Ingestion is single-writer; snapshots are plain values and safe to hand to
// other threads.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslkit/geom.hpp"
#include "sslkit/kalman.hpp"

namespace sslkit {

// ---------------------------------------------------------------------------
// Confidence (per-object score in [0,1], gated by a validity threshold)

struct ConfidenceParams {
  double p_seen{0.2};
  double p_lost{0.1};
  double p_valid{0.8};
};

inline double confidence_step(double c, bool seen,
                              const ConfidenceParams& params) {
  double next = seen ? c + params.p_seen : c - params.p_lost;
  return std::clamp(next, 0.0, 1.0);
}

// Strict threshold: an object sitting exactly at p_valid is invalid.
inline bool is_valid(double c, const ConfidenceParams& params) {
  return c > params.p_valid;
}

// ---------------------------------------------------------------------------
// Cameras and detections

struct CameraModel {
  int id{0};
  Vec2 center;                 // ground-plane projection of the camera
  double coverage_radius{0.0};
  long obs_count{0};           // detections folded into the running mean
};

// Online refinement: the center tracks the running mean of everything this
// camera has seen; the coverage radius is the running max distance from the
// center at observation time.
inline CameraModel camera_model_refine(CameraModel model, const Vec2& det_pos) {
  double dist = distance(model.center, det_pos);
  model.coverage_radius = std::max(model.coverage_radius, dist);
  long n = model.obs_count + 1;
  model.center = model.center + (det_pos - model.center) / static_cast<double>(n);
  model.obs_count = n;
  return model;
}

enum class ObjectKind { ball, robot_blue, robot_yellow };

inline bool is_robot(ObjectKind k) { return k != ObjectKind::ball; }

struct Detection {
  int camera_id{0};
  ObjectKind kind{ObjectKind::ball};
  int robot_id{-1};        // robots only
  Vec2 position;
  double orientation{0.0}; // robots only
};

struct DetectionFrame {
  double t{0.0};
  int camera_id{0};
  std::vector<Detection> detections;
};

// ---------------------------------------------------------------------------
// Multi-camera fusion

// Weight selection for fuse_detections. `radial` is the as-written rule
// (weight grows with distance from the camera center); `inverse_radial`
// weights center-near detections more, w = max(0, 1 - d/R).
enum class FusionWeighting { radial, inverse_radial };

// Weighted mean of co-visible detections of one object. Radial weights are
// w_i = |r_i - center_i| / R_i; if every weight is zero (all detections at
// their camera centers) the unweighted mean is returned.
inline Vec2 fuse_detections(
    const std::vector<std::pair<Detection, CameraModel>>& dets,
    FusionWeighting mode = FusionWeighting::radial) {
  if (dets.empty())
    throw std::invalid_argument("fuse_detections: empty detection list");
  Vec2 weighted{0.0, 0.0};
  Vec2 plain{0.0, 0.0};
  double wsum = 0.0;
  for (const auto& [det, cam] : dets) {
    double dist = distance(det.position, cam.center);
    if (cam.coverage_radius > 0.0 && dist > 1.05 * cam.coverage_radius)
      throw std::invalid_argument(
          "fuse_detections: detection outside camera " +
          std::to_string(cam.id) + " coverage");
    double w = 0.0;
    if (cam.coverage_radius > 0.0) {
      double radial = dist / cam.coverage_radius;
      w = (mode == FusionWeighting::radial) ? radial
                                            : std::max(0.0, 1.0 - radial);
    }
    weighted += w * det.position;
    wsum += w;
    plain += det.position;
  }
  if (wsum == 0.0) return plain / static_cast<double>(dets.size());
  return weighted / wsum;
}

// ---------------------------------------------------------------------------
// World state

struct ObjectId {
  ObjectKind kind{ObjectKind::ball};
  int number{-1};  // robots only

  bool operator==(const ObjectId&) const = default;
};

struct TrackerConfig {
  ConfidenceParams confidence;
  double gate_radius{300.0};      // mm, association gate
  double fusion_radius{150.0};    // mm, co-visible same-object window
  double tick_epsilon{1e-6};      // s, frames closer than this share a tick
  double expiry{2.0};             // s at confidence 0 before a track is dropped
  double sigma_accel_ball{1000.0};   // mm/s^2
  double sigma_accel_robot{2000.0};  // mm/s^2
  double sigma_meas{10.0};           // mm
  double sigma_accel_theta{20.0};    // rad/s^2
  double sigma_meas_theta{0.05};     // rad
  double spawn_vel_sigma{2000.0};    // mm/s, prior stddev on unseen velocity
  FusionWeighting fusion_mode{FusionWeighting::radial};
};

struct Track {
  int track_id{0};
  ObjectId id;
  KalmanState state;                   // [px, py, vx, vy]
  std::optional<KalmanState> orient;   // [theta, omega], robots only
  double confidence{0.0};
  int frames_since_seen{0};

  // Same-tick fusion bookkeeping: when a second camera reports this object
  // at the same timestamp, the update is redone from pre_tick_state with the
  // fused measurement so the object is corrected exactly once per tick.
  double tick_t{-1.0};
  KalmanState pre_tick_state;
  std::optional<KalmanState> pre_tick_orient;
  std::vector<Detection> tick_dets;

  double zero_conf_since{-1.0};

  Vec2 position() const { return {state.x(0), state.x(1)}; }
  Vec2 velocity() const { return {state.x(2), state.x(3)}; }
  double theta() const { return orient ? orient->x(0) : 0.0; }
};

class TrackerWorld {
 public:
  explicit TrackerWorld(TrackerConfig cfg = {})
      : cfg_(cfg),
        ball_model_(constant_velocity_model(cfg.sigma_accel_ball, cfg.sigma_meas)),
        robot_model_(constant_velocity_model(cfg.sigma_accel_robot, cfg.sigma_meas)),
        orient_model_(constant_rate_model(cfg.sigma_accel_theta, cfg.sigma_meas_theta)) {}

  const TrackerConfig& config() const { return cfg_; }
  double time() const { return time_; }
  const std::vector<Track>& tracks() const { return tracks_; }
  std::vector<Track> snapshot() const { return tracks_; }
  const std::map<int, CameraModel>& cameras() const { return cameras_; }

  void add_camera(const CameraModel& cam) { cameras_[cam.id] = cam; }

  // A copy of the track coasted to time t (>= its last filter time).
  Track predicted(const Track& tr, double t) const {
    Track out = tr;
    double dt = t - tr.state.t;
    if (dt > 0.0) {
      out.state = kalman_predict(tr.state, model_for(tr.id.kind), dt);
      if (tr.orient) out.orient = kalman_predict(*tr.orient, orient_model_, dt);
    }
    return out;
  }

  std::optional<Track> best_ball() const {
    const Track* best = nullptr;
    for (const auto& tr : tracks_)
      if (tr.id.kind == ObjectKind::ball &&
          (!best || tr.confidence > best->confidence))
        best = &tr;
    if (!best) return std::nullopt;
    return *best;
  }

  std::optional<Track> robot(ObjectKind team, int number) const {
    const Track* best = nullptr;
    for (const auto& tr : tracks_)
      if (tr.id.kind == team && tr.id.number == number &&
          (!best || tr.confidence > best->confidence))
        best = &tr;
    if (!best) return std::nullopt;
    return *best;
  }

  void ingest_frame(const DetectionFrame& frame) {
    auto last = last_frame_t_.find(frame.camera_id);
    if (last != last_frame_t_.end() && frame.t < last->second)
      throw std::runtime_error(
          "ingest_frame: out-of-order frame for camera " +
          std::to_string(frame.camera_id) + " (t=" + std::to_string(frame.t) +
          " < " + std::to_string(last->second) + ")");
    last_frame_t_[frame.camera_id] = frame.t;
    time_ = std::max(time_, frame.t);

    // Continuous camera identification: fold every detection into the
    // camera's model before it is used for fusion.
    CameraModel& cam = cameras_[frame.camera_id];
    cam.id = frame.camera_id;
    for (const auto& det : frame.detections)
      cam = camera_model_refine(cam, det.position);

    // Predict all tracks to the frame time. Frames from other cameras may
    // carry slightly older timestamps; tracks are never moved backward.
    for (auto& tr : tracks_) {
      double dt = frame.t - tr.state.t;
      if (dt > 0.0) {
        tr.state = kalman_predict(tr.state, model_for(tr.id.kind), dt);
        if (tr.orient) tr.orient = kalman_predict(*tr.orient, orient_model_, dt);
      }
    }

    // Gated nearest-neighbor association, deterministic: pairs ordered by
    // (distance, detection index).
    struct Pair {
      double dist;
      std::size_t det_index;
      std::size_t track_index;
    };
    std::vector<Pair> pairs;
    for (std::size_t d = 0; d < frame.detections.size(); ++d) {
      const Detection& det = frame.detections[d];
      for (std::size_t t = 0; t < tracks_.size(); ++t) {
        const Track& tr = tracks_[t];
        if (tr.id.kind != det.kind) continue;
        if (is_robot(det.kind) && tr.id.number != det.robot_id) continue;
        double dist = distance(det.position, tr.position());
        if (dist <= cfg_.gate_radius) pairs.push_back({dist, d, t});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.det_index != b.det_index) return a.det_index < b.det_index;
      return a.track_index < b.track_index;
    });

    std::vector<bool> det_used(frame.detections.size(), false);
    std::vector<bool> track_seen(tracks_.size(), false);
    for (const auto& pr : pairs) {
      if (det_used[pr.det_index] || track_seen[pr.track_index]) continue;
      det_used[pr.det_index] = true;
      track_seen[pr.track_index] = true;
      apply_detection(tracks_[pr.track_index], frame.detections[pr.det_index],
                      frame.t);
    }

    // Coasting + confidence decay for everything this frame did not confirm.
    for (std::size_t t = 0; t < tracks_.size(); ++t) {
      if (track_seen[t]) continue;
      Track& tr = tracks_[t];
      tr.confidence = confidence_step(tr.confidence, false, cfg_.confidence);
      tr.frames_since_seen += 1;
    }

    // Spawn tracks for unmatched detections.
    for (std::size_t d = 0; d < frame.detections.size(); ++d) {
      if (det_used[d]) continue;
      spawn_track(frame.detections[d], frame.t);
    }

    // Expire tracks that have sat at zero confidence too long.
    for (auto& tr : tracks_) {
      if (tr.confidence <= 0.0) {
        if (tr.zero_conf_since < 0.0) tr.zero_conf_since = frame.t;
      } else {
        tr.zero_conf_since = -1.0;
      }
    }
    std::erase_if(tracks_, [&](const Track& tr) {
      return tr.zero_conf_since >= 0.0 &&
             frame.t - tr.zero_conf_since > cfg_.expiry;
    });
  }

 private:
  const KalmanModel& model_for(ObjectKind kind) const {
    return kind == ObjectKind::ball ? ball_model_ : robot_model_;
  }

  void apply_detection(Track& tr, const Detection& det, double t) {
    bool same_tick = tr.tick_t >= 0.0 && std::abs(t - tr.tick_t) <= cfg_.tick_epsilon;
    if (!same_tick) {
      tr.tick_t = t;
      tr.pre_tick_state = tr.state;
      tr.pre_tick_orient = tr.orient;
      tr.tick_dets.clear();
    }
    tr.tick_dets.push_back(det);

    Vec2 measured = det.position;
    if (tr.tick_dets.size() > 1) {
      // Co-visible sightings from other cameras this tick, restricted to the
      // fusion window around the newest detection.
      std::vector<std::pair<Detection, CameraModel>> fusable;
      fusable.reserve(tr.tick_dets.size());
      for (const auto& d : tr.tick_dets)
        if (distance(d.position, det.position) <= cfg_.fusion_radius)
          fusable.push_back({d, cameras_.at(d.camera_id)});
      measured = fuse_detections(fusable, cfg_.fusion_mode);
      // Redo this tick's correction from the pre-update state so the fused
      // measurement is applied exactly once.
      tr.state = tr.pre_tick_state;
      tr.orient = tr.pre_tick_orient;
    }

    Eigen::VectorXd z(2);
    z << measured.x, measured.y;
    tr.state = kalman_update(tr.state, model_for(tr.id.kind), z);

    if (is_robot(tr.id.kind) && tr.orient) {
      double th = fused_orientation(tr.tick_dets);
      Eigen::VectorXd zt(1);
      zt << th;
      tr.orient =
          kalman_update(*tr.orient, orient_model_, zt, wrap_angle_innovation());
      tr.orient->x(0) = wrap_angle(tr.orient->x(0));
    }

    tr.confidence = confidence_step(tr.confidence, true, cfg_.confidence);
    tr.frames_since_seen = 0;
  }

  static double fused_orientation(const std::vector<Detection>& dets) {
    double sx = 0.0, sy = 0.0;
    for (const auto& d : dets) {
      sx += std::cos(d.orientation);
      sy += std::sin(d.orientation);
    }
    return std::atan2(sy, sx);
  }

  void spawn_track(const Detection& det, double t) {
    Track tr;
    tr.track_id = next_track_id_++;
    tr.id.kind = det.kind;
    tr.id.number = is_robot(det.kind) ? det.robot_id : -1;
    tr.state.x = Eigen::VectorXd::Zero(4);
    tr.state.x(0) = det.position.x;
    tr.state.x(1) = det.position.y;
    tr.state.P = Eigen::MatrixXd::Zero(4, 4);
    tr.state.P(0, 0) = tr.state.P(1, 1) = cfg_.sigma_meas * cfg_.sigma_meas;
    tr.state.P(2, 2) = tr.state.P(3, 3) =
        cfg_.spawn_vel_sigma * cfg_.spawn_vel_sigma;
    tr.state.t = t;
    if (is_robot(det.kind)) {
      KalmanState o;
      o.x = Eigen::VectorXd::Zero(2);
      o.x(0) = det.orientation;
      o.P = Eigen::MatrixXd::Zero(2, 2);
      o.P(0, 0) = cfg_.sigma_meas_theta * cfg_.sigma_meas_theta;
      o.P(1, 1) = 4.0;  // rad/s, generous prior on unseen spin
      o.t = t;
      tr.orient = o;
    }
    tr.confidence = confidence_step(0.0, true, cfg_.confidence);
    tr.frames_since_seen = 0;
    tr.tick_t = t;
    tr.pre_tick_state = tr.state;
    tr.pre_tick_orient = tr.orient;
    tr.tick_dets = {det};
    tracks_.push_back(std::move(tr));
  }

  TrackerConfig cfg_;
  KalmanModel ball_model_;
  KalmanModel robot_model_;
  KalmanModel orient_model_;
  std::vector<Track> tracks_;
  std::map<int, CameraModel> cameras_;
  std::map<int, double> last_frame_t_;
  double time_{0.0};
  int next_track_id_{1};
};

}  // namespace sslkit
