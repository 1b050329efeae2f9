// kalman.hpp - generic linear Kalman predict/update plus the two concrete
// models the tracker runs: a 2-D constant-velocity filter for positions and a
// 1-D constant-rate filter for robot orientation.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>

#include "sslkit/geom.hpp"

namespace sslkit {

// F, Q and B depend on the prediction interval; H and R are fixed.
struct KalmanModel {
  std::function<Eigen::MatrixXd(double)> transition;     // F(dt)
  std::function<Eigen::MatrixXd(double)> process_noise;  // Q(dt)
  Eigen::MatrixXd observation;                           // H
  Eigen::MatrixXd observation_noise;                     // R
  std::function<Eigen::MatrixXd(double)> control;        // B(dt), may be null
};

struct KalmanState {
  Eigen::VectorXd x;
  Eigen::MatrixXd P;
  double t{0.0};
};

inline KalmanState kalman_predict(
    const KalmanState& s, const KalmanModel& m, double dt,
    const std::optional<Eigen::VectorXd>& u = std::nullopt) {
  if (dt < 0.0)
    throw std::invalid_argument("kalman_predict: dt must be >= 0");
  Eigen::MatrixXd F = m.transition(dt);
  KalmanState out;
  out.x = F * s.x;
  if (u && m.control) out.x += m.control(dt) * (*u);
  out.P = F * s.P * F.transpose() + m.process_noise(dt);
  out.P = 0.5 * (out.P + out.P.transpose());
  out.t = s.t + dt;
  return out;
}

// Standard measurement update in Joseph form (keeps P symmetric PSD).
// `innovation_map` lets callers post-process the innovation, e.g. wrap an
// angular residual; identity when absent.
inline KalmanState kalman_update(
    const KalmanState& s, const KalmanModel& m, const Eigen::VectorXd& z,
    const std::function<Eigen::VectorXd(Eigen::VectorXd)>& innovation_map =
        nullptr) {
  const Eigen::MatrixXd& H = m.observation;
  const Eigen::MatrixXd& R = m.observation_noise;
  if (z.size() != H.rows())
    throw std::invalid_argument("kalman_update: measurement dimension");

  Eigen::VectorXd y = z - H * s.x;
  if (innovation_map) y = innovation_map(y);
  Eigen::MatrixXd S = H * s.P * H.transpose() + R;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
  if (!lu.isInvertible())
    throw std::runtime_error("kalman_update: singular innovation covariance");
  Eigen::MatrixXd K = s.P * H.transpose() * lu.inverse();

  KalmanState out;
  out.x = s.x + K * y;
  Eigen::MatrixXd IKH =
      Eigen::MatrixXd::Identity(s.P.rows(), s.P.cols()) - K * H;
  out.P = IKH * s.P * IKH.transpose() + K * R * K.transpose();
  out.P = 0.5 * (out.P + out.P.transpose());
  out.t = s.t;
  return out;
}

// Constant-velocity planar model, state [px, py, vx, vy], position observed.
// Q is the discrete white-acceleration form with spectral density
// sigma_accel^2 per axis.
inline KalmanModel constant_velocity_model(double sigma_accel,
                                           double sigma_meas) {
  KalmanModel m;
  m.transition = [](double dt) {
    Eigen::MatrixXd F = Eigen::MatrixXd::Identity(4, 4);
    F(0, 2) = dt;
    F(1, 3) = dt;
    return F;
  };
  m.process_noise = [sigma_accel](double dt) {
    double q = sigma_accel * sigma_accel;
    double dt2 = dt * dt, dt3 = dt2 * dt;
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 4);
    Q(0, 0) = Q(1, 1) = q * dt3 / 3.0;
    Q(0, 2) = Q(2, 0) = Q(1, 3) = Q(3, 1) = q * dt2 / 2.0;
    Q(2, 2) = Q(3, 3) = q * dt;
    return Q;
  };
  m.observation = Eigen::MatrixXd::Zero(2, 4);
  m.observation(0, 0) = 1.0;
  m.observation(1, 1) = 1.0;
  m.observation_noise =
      Eigen::MatrixXd::Identity(2, 2) * (sigma_meas * sigma_meas);
  return m;
}

// Constant-rate scalar model, state [theta, omega], angle observed. Callers
// must wrap the innovation (see kalman_update's innovation_map).
inline KalmanModel constant_rate_model(double sigma_accel, double sigma_meas) {
  KalmanModel m;
  m.transition = [](double dt) {
    Eigen::MatrixXd F = Eigen::MatrixXd::Identity(2, 2);
    F(0, 1) = dt;
    return F;
  };
  m.process_noise = [sigma_accel](double dt) {
    double q = sigma_accel * sigma_accel;
    double dt2 = dt * dt, dt3 = dt2 * dt;
    Eigen::MatrixXd Q(2, 2);
    Q << q * dt3 / 3.0, q * dt2 / 2.0, q * dt2 / 2.0, q * dt;
    return Q;
  };
  m.observation = Eigen::MatrixXd::Zero(1, 2);
  m.observation(0, 0) = 1.0;
  m.observation_noise =
      Eigen::MatrixXd::Identity(1, 1) * (sigma_meas * sigma_meas);
  return m;
}

inline std::function<Eigen::VectorXd(Eigen::VectorXd)> wrap_angle_innovation() {
  return [](Eigen::VectorXd y) {
    y(0) = wrap_angle(y(0));
    return y;
  };
}

}  // namespace sslkit
