#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "urllc/traffic.hpp"

namespace urllc {

struct QueueSimConfig {
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::uint64_t num_frames = 1'000'000;
  double service_packets_per_frame = 1.0;
  TrafficModel traffic;
  // Packets arriving before this frame are not recorded. Defaults to 1% of
  // num_frames.
  std::optional<std::uint64_t> warmup_frames;
  // Test hook: deterministic arrivals per frame instead of Poisson draws.
  std::optional<std::uint64_t> forced_arrivals_per_frame;

  std::uint64_t effective_warmup() const;
  // Throws DomainError on bad fields, StabilityError if service does not
  // exceed the mean arrivals per frame.
  void validate() const;
};

// Per-packet sojourn times in whole frames; a packet served in the frame it
// arrived in has delay 1.
struct DelayHistogram {
  // counts[d] = packets with delay d frames.
  std::vector<std::uint64_t> counts;
  std::uint64_t total_packets = 0;

  // Whole-run accounting, warmup included.
  std::uint64_t arrived = 0;
  std::uint64_t departed = 0;
  std::uint64_t backlog = 0;

  // Packets with delay > d frames.
  std::uint64_t tail_count(std::uint64_t d) const;
  // Empirical Pr{delay > d}; 0 when empty.
  double ccdf(std::uint64_t d) const;
  std::uint64_t max_delay() const { return counts.empty() ? 0 : counts.size() - 1; }

  // Associative, commutative accumulation of independent runs.
  DelayHistogram& merge(const DelayHistogram& other);

  // "delay_frames,count" rows for every nonzero bin.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const DelayHistogram&, const DelayHistogram&) = default;
};

DelayHistogram simulate_queue(const QueueSimConfig& cfg);

struct ViolationEstimate {
  double probability = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t threshold_frames = 0;
  std::uint64_t exceed_count = 0;
  std::uint64_t total = 0;
};

// Fraction of packets whose delay exceeds bound (rounded up to whole frames),
// with a Wilson 95% interval. Throws DomainError on an empty histogram.
ViolationEstimate empirical_violation(const DelayHistogram& hist, double bound_s,
                                      double frame_duration_s);

// Wilson score interval for k successes out of n at 95% confidence.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

// theta at which the effective bandwidth equals the constant service rate,
// i.e. lambda (e^theta - 1) / theta = service packets per frame.
QosExponent matched_qos_exponent(const TrafficModel& traffic, double service_packets_per_frame);

struct TailFit {
  double slope = 0.0;  // d ln Pr{delay > d} / d(frames)
  double intercept = 0.0;
  std::size_t points = 0;
};

// Least-squares line through ln ccdf(d) for d >= 1 over bins whose tail holds
// at least min_tail_count packets.
TailFit fit_tail(const DelayHistogram& hist, std::uint64_t min_tail_count = 100);

struct BoundCheck {
  std::uint64_t delay_frames = 0;
  double analytic = 0.0;
  ViolationEstimate empirical;
  bool pass = false;
};

struct QueueValidation {
  double theta = 0.0;
  double predicted_slope = 0.0;
  TailFit fit;
  double slope_relative_error = 0.0;
  bool slope_pass = false;
  std::vector<BoundCheck> bounds;
  bool bounds_pass = false;
  bool pass = false;
};

// Compares a simulated histogram against exp(-theta* E_B(theta*) D) with
// theta* from matched_qos_exponent: the log-CCDF slope must agree within
// slope_tolerance, and at every bound with at least min_tail_count tail
// packets the empirical violation must not exceed the analytic value by more
// than the upper CI half-width plus the relative slack.
QueueValidation validate_queue_approximation(const QueueSimConfig& cfg,
                                             const DelayHistogram& hist,
                                             double slope_tolerance = 0.15,
                                             double slack = 0.15,
                                             std::uint64_t min_tail_count = 100);

// Ordered (h1_sq, h2_sq) pairs with h1_sq >= h2_sq, each drawn i.i.d.
// exponential with the given mean (Rayleigh fading power gains).
std::vector<std::pair<double, double>> rayleigh_gains(std::uint64_t seed, std::size_t count,
                                                      double mean_gain);

}  // namespace urllc
