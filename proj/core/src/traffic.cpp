#include "urllc/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "urllc/error.hpp"

namespace urllc {

namespace {

constexpr double kMinTheta = 1e-12;
constexpr double kMaxTheta = 1e6;

}  // namespace

void TrafficModel::validate() const {
  if (!(mean_arrivals_per_frame >= 0.0) || !std::isfinite(mean_arrivals_per_frame)) {
    throw DomainError("traffic: mean_arrivals_per_frame must be finite and >= 0");
  }
  if (!(frame_duration_s > 0.0) || !std::isfinite(frame_duration_s)) {
    throw DomainError("traffic: frame_duration_s must be finite and > 0");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "traffic: eta must lie in (0, 1], got " << eta;
    throw DomainError(msg.str());
  }
}

QosExponent::QosExponent(double theta) : theta_(theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    std::ostringstream msg;
    msg << "QoS exponent theta must be finite and > 0, got " << theta;
    throw DomainError(msg.str());
  }
}

DelayBound::DelayBound(double seconds) : seconds_(seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds)) {
    std::ostringstream msg;
    msg << "delay bound must be finite and > 0 seconds, got " << seconds;
    throw DomainError(msg.str());
  }
}

double effective_bandwidth(const TrafficModel& traffic, QosExponent qos) {
  traffic.validate();
  const double theta = qos.theta();
  // expm1 keeps the theta -> 0 limit (mean rate) accurate.
  return traffic.mean_arrivals_per_frame * std::expm1(theta) / (traffic.frame_duration_s * theta);
}

double delay_violation_probability(const TrafficModel& traffic, QosExponent qos,
                                   DelayBound bound) {
  const double exponent = qos.theta() * effective_bandwidth(traffic, qos) * bound.seconds();
  const double p = traffic.eta * std::exp(-exponent);
  return std::max(p, std::numeric_limits<double>::min());
}

QosExponent solve_qos_exponent(const TrafficModel& traffic, DelayBound bound, double target_eq) {
  traffic.validate();
  const double eta = traffic.eta;
  if (!(target_eq > 0.0 && target_eq < 1.0)) {
    std::ostringstream msg;
    msg << "solve_qos_exponent: target must lie in (0, 1), got " << target_eq;
    throw DomainError(msg.str());
  }

  // theta E_B(theta) D = lambda D (e^theta - 1) / T_f is strictly increasing in
  // theta, so the inverse is closed form.
  const double required_exponent = std::log(eta / target_eq);
  const double scale = traffic.mean_arrivals_per_frame * bound.seconds() / traffic.frame_duration_s;
  const double theta = scale > 0.0 ? std::log1p(required_exponent / scale) : 0.0;

  if (!(theta >= kMinTheta && theta <= kMaxTheta)) {
    const double lowest = eta * std::exp(-scale * std::expm1(std::min(kMaxTheta, 700.0)));
    const double highest = eta * std::exp(-scale * std::expm1(kMinTheta));
    std::ostringstream msg;
    msg << "solve_qos_exponent: target " << target_eq << " unreachable for theta in [" << kMinTheta
        << ", " << kMaxTheta << "]; achievable violation probabilities span [" << lowest << ", "
        << highest << "]";
    throw InfeasibleError(msg.str());
  }
  return QosExponent(theta);
}

}  // namespace urllc
