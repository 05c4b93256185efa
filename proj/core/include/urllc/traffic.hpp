#pragma once

#include "urllc/numerics.hpp"

namespace urllc {

// Poisson packet arrivals, counted per frame.
struct TrafficModel {
  double mean_arrivals_per_frame = 0.01;
  double frame_duration_s = 5e-4;
  // Probability of a non-empty buffer, in (0, 1]; 1 gives the conservative
  // form of the delay-violation approximation.
  double eta = 1.0;

  void validate() const;
  // Mean arrival rate in packets per second.
  double mean_rate() const { return mean_arrivals_per_frame / frame_duration_s; }
};

// Large-deviations decay exponent, per packet.
class QosExponent {
 public:
  explicit QosExponent(double theta);
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

// Queueing delay bound in seconds.
class DelayBound {
 public:
  explicit DelayBound(double seconds);
  double seconds() const noexcept { return seconds_; }

 private:
  double seconds_;
};

// Effective bandwidth of Poisson arrivals, in packets per second:
//   E_B(theta) = ln E[exp(theta A)] / (T_f theta) = lambda (e^theta - 1) / (T_f theta).
double effective_bandwidth(const TrafficModel& traffic, QosExponent qos);

// eta * exp(-theta E_B(theta) D), clamped into (0, 1]. D is in seconds and
// E_B in packets per second, so the exponent is dimensionless.
double delay_violation_probability(const TrafficModel& traffic, QosExponent qos,
                                   DelayBound bound);

// Inverts delay_violation_probability in theta. Throws InfeasibleError if the
// target is unreachable for theta in [1e-12, 1e6].
QosExponent solve_qos_exponent(const TrafficModel& traffic, DelayBound bound, double target_eq);

}  // namespace urllc
