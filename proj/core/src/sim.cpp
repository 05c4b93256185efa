#include "urllc/sim.hpp"

#include <cmath>
#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>
#include <sstream>

#include "urllc/error.hpp"
#include "urllc/rng.hpp"

namespace urllc {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Batch {
  std::uint64_t frame;
  std::uint64_t count;
};

void record(DelayHistogram& hist, std::uint64_t delay, std::uint64_t count) {
  if (hist.counts.size() <= delay) {
    hist.counts.resize(delay + 1, 0);
  }
  hist.counts[delay] += count;
  hist.total_packets += count;
}

}  // namespace

std::uint64_t QueueSimConfig::effective_warmup() const {
  return warmup_frames.value_or(num_frames / 100);
}

void QueueSimConfig::validate() const {
  traffic.validate();
  if (num_frames < 1) {
    throw DomainError("queue sim: num_frames must be >= 1");
  }
  if (effective_warmup() >= num_frames) {
    throw DomainError("queue sim: warmup_frames must be smaller than num_frames");
  }
  if (!(service_packets_per_frame > 0.0) || !std::isfinite(service_packets_per_frame)) {
    throw DomainError("queue sim: service_packets_per_frame must be finite and > 0");
  }
  const bool stable = forced_arrivals_per_frame
                          ? service_packets_per_frame >= static_cast<double>(*forced_arrivals_per_frame)
                          : service_packets_per_frame > traffic.mean_arrivals_per_frame;
  if (!stable) {
    std::ostringstream msg;
    msg << "queue sim: unstable queue, service " << service_packets_per_frame
        << " packets/frame does not exceed mean arrivals "
        << (forced_arrivals_per_frame ? static_cast<double>(*forced_arrivals_per_frame)
                                      : traffic.mean_arrivals_per_frame)
        << " packets/frame";
    throw StabilityError(msg.str());
  }
}

std::uint64_t DelayHistogram::tail_count(std::uint64_t d) const {
  std::uint64_t tail = 0;
  for (std::size_t i = d + 1; i < counts.size(); ++i) {
    tail += counts[i];
  }
  return tail;
}

double DelayHistogram::ccdf(std::uint64_t d) const {
  if (total_packets == 0) {
    return 0.0;
  }
  return static_cast<double>(tail_count(d)) / static_cast<double>(total_packets);
}

DelayHistogram& DelayHistogram::merge(const DelayHistogram& other) {
  if (counts.size() < other.counts.size()) {
    counts.resize(other.counts.size(), 0);
  }
  for (std::size_t i = 0; i < other.counts.size(); ++i) {
    counts[i] += other.counts[i];
  }
  total_packets += other.total_packets;
  arrived += other.arrived;
  departed += other.departed;
  backlog += other.backlog;
  return *this;
}

void DelayHistogram::write_csv(std::ostream& out) const {
  out << "delay_frames,count\n";
  for (std::size_t d = 0; d < counts.size(); ++d) {
    if (counts[d] != 0) {
      out << d << ',' << counts[d] << '\n';
    }
  }
}

DelayHistogram simulate_queue(const QueueSimConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(cfg.seed, cfg.stream);
  const std::uint64_t warmup = cfg.effective_warmup();
  const double lambda = cfg.traffic.mean_arrivals_per_frame;

  DelayHistogram hist;
  std::deque<Batch> queue;
  std::uint64_t backlog = 0;
  double credit = 0.0;

  for (std::uint64_t frame = 0; frame < cfg.num_frames; ++frame) {
    const std::uint64_t arrivals =
        cfg.forced_arrivals_per_frame ? *cfg.forced_arrivals_per_frame : poisson(rng, lambda);
    if (arrivals > 0) {
      queue.push_back({frame, arrivals});
      backlog += arrivals;
      hist.arrived += arrivals;
    }

    // Fractional service accumulates as credit; one unit releases one packet.
    credit += cfg.service_packets_per_frame;
    while (credit >= 1.0 && !queue.empty()) {
      Batch& head = queue.front();
      const auto units = static_cast<std::uint64_t>(credit);
      const std::uint64_t served = std::min(units, head.count);
      if (head.frame >= warmup) {
        record(hist, frame - head.frame + 1, served);
      }
      head.count -= served;
      backlog -= served;
      hist.departed += served;
      credit -= static_cast<double>(served);
      if (head.count == 0) {
        queue.pop_front();
      }
    }
    if (queue.empty()) {
      // An idle server cannot bank whole packets of capacity.
      credit -= std::floor(credit);
    }
  }
  hist.backlog = backlog;

  if (hist.arrived != hist.departed + hist.backlog) {
    throw Error("queue sim: packet conservation violated");
  }
  return hist;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) {
    return {0.0, 1.0};
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  const double lo = k == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = k == n ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

ViolationEstimate empirical_violation(const DelayHistogram& hist, double bound_s,
                                      double frame_duration_s) {
  if (hist.total_packets == 0) {
    throw DomainError("empirical_violation: histogram holds no packets");
  }
  if (!(bound_s >= 0.0) || !(frame_duration_s > 0.0)) {
    throw DomainError("empirical_violation: bound must be >= 0 and frame duration > 0");
  }
  // Ratios like 8e-4 / 5e-4 must not round up past an exact frame count.
  const double frames = bound_s / frame_duration_s;
  const auto threshold = static_cast<std::uint64_t>(std::ceil(frames - 1e-9 * std::max(1.0, frames)));

  ViolationEstimate est;
  est.threshold_frames = threshold;
  est.total = hist.total_packets;
  est.exceed_count = hist.tail_count(threshold);
  est.probability = static_cast<double>(est.exceed_count) / static_cast<double>(est.total);
  std::tie(est.ci_low, est.ci_high) = wilson_interval(est.exceed_count, est.total);
  return est;
}

QosExponent matched_qos_exponent(const TrafficModel& traffic, double service_packets_per_frame) {
  traffic.validate();
  const double lambda = traffic.mean_arrivals_per_frame;
  if (!(service_packets_per_frame > lambda)) {
    std::ostringstream msg;
    msg << "matched_qos_exponent: service " << service_packets_per_frame
        << " packets/frame must exceed mean arrivals " << lambda;
    throw StabilityError(msg.str());
  }
  if (lambda == 0.0) {
    throw InfeasibleError("matched_qos_exponent: no arrivals, every theta is admissible");
  }
  // lambda (e^t - 1) / t increases from lambda to infinity.
  auto excess = [&](double t) { return lambda * std::expm1(t) / t - service_packets_per_frame; };
  double hi = 1.0;
  while (excess(hi) < 0.0) {
    hi *= 2.0;
  }
  SolverSettings s;
  s.rel_tolerance = 1e-14;
  s.abs_tolerance = 1e-300;
  s.max_iterations = 400;
  return QosExponent(bisect(excess, 1e-300, hi, s).value);
}

TailFit fit_tail(const DelayHistogram& hist, std::uint64_t min_tail_count) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::uint64_t d = 1; d < hist.counts.size(); ++d) {
    const std::uint64_t tail = hist.tail_count(d);
    if (tail < min_tail_count || tail == 0) {
      break;
    }
    const double x = static_cast<double>(d);
    const double y = std::log(hist.ccdf(d));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  TailFit fit;
  fit.points = n;
  if (n < 2) {
    return fit;
  }
  const double nn = static_cast<double>(n);
  fit.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / nn;
  return fit;
}

QueueValidation validate_queue_approximation(const QueueSimConfig& cfg,
                                             const DelayHistogram& hist, double slope_tolerance,
                                             double slack, std::uint64_t min_tail_count) {
  QueueValidation v;
  const QosExponent theta = matched_qos_exponent(cfg.traffic, cfg.service_packets_per_frame);
  const double eb = effective_bandwidth(cfg.traffic, theta);
  const double frame = cfg.traffic.frame_duration_s;
  v.theta = theta.theta();
  v.predicted_slope = -theta.theta() * eb * frame;
  v.fit = fit_tail(hist, min_tail_count);
  v.slope_relative_error = v.fit.points >= 2
                               ? std::abs(v.fit.slope - v.predicted_slope) / std::abs(v.predicted_slope)
                               : std::numeric_limits<double>::infinity();
  v.slope_pass = v.slope_relative_error <= slope_tolerance;

  v.bounds_pass = true;
  for (std::uint64_t d = 1; d < hist.counts.size(); ++d) {
    if (hist.tail_count(d) < min_tail_count) {
      break;
    }
    BoundCheck b;
    b.delay_frames = d;
    const double bound_s = static_cast<double>(d) * frame;
    b.analytic = delay_violation_probability(cfg.traffic, theta, DelayBound(bound_s));
    b.empirical = empirical_violation(hist, bound_s, frame);
    b.pass = b.empirical.probability <=
             b.analytic * (1.0 + slack) + (b.empirical.ci_high - b.empirical.probability);
    v.bounds_pass = v.bounds_pass && b.pass;
    v.bounds.push_back(b);
  }
  v.pass = v.slope_pass && v.bounds_pass && !v.bounds.empty();
  return v;
}

std::vector<std::pair<double, double>> rayleigh_gains(std::uint64_t seed, std::size_t count,
                                                      double mean_gain) {
  if (!(mean_gain > 0.0) || !std::isfinite(mean_gain)) {
    throw DomainError("rayleigh_gains: mean_gain must be positive and finite");
  }
  SplitMix64 rng(seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = exponential(rng, mean_gain);
    const double b = exponential(rng, mean_gain);
    out.emplace_back(std::max(a, b), std::min(a, b));
  }
  return out;
}

}  // namespace urllc
