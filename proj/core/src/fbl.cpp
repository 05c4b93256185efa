#include "urllc/fbl.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "urllc/error.hpp"

namespace urllc {

namespace {

// phi * B is computed in floating point; 1e-5 s * 1e5 Hz must still count as
// one channel use.
constexpr double kBlocklengthSlack = 1e-9;

double packets(Sinr gamma, const SystemConfig& cfg, Probability eps_c, DispersionMode mode,
               double users_sharing) {
  cfg.validate();
  const double n = cfg.blocklength() / users_sharing;
  const double v = channel_dispersion(gamma, mode);
  const double q_inv = inv_q_function(eps_c.value());
  const double nats = std::log1p(gamma.linear()) - std::sqrt(v / n) * q_inv;
  return n / (cfg.packet_size_bits * std::numbers::ln2) * nats;
}

}  // namespace

SystemConfig SystemConfig::with_packet_bytes(double bytes, double tx_phase_s) {
  SystemConfig cfg;
  cfg.packet_size_bits = bytes * kBitsPerByte;
  cfg.tx_phase_s = tx_phase_s;
  return cfg;
}

std::vector<std::string> SystemConfig::warnings() const {
  std::vector<std::string> out;
  if (small_blocklength()) {
    std::ostringstream msg;
    msg << "blocklength " << blocklength()
        << " < 50 channel uses: normal approximation is unreliable";
    out.push_back(msg.str());
  }
  return out;
}

void SystemConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "system config: " << name << " must be finite and > 0, got " << v;
      throw DomainError(msg.str());
    }
  };
  positive(frame_duration_s, "frame_duration_s");
  positive(bandwidth_hz, "bandwidth_hz");
  positive(packet_size_bits, "packet_size_bits");
  positive(tx_phase_s, "tx_phase_s");
  positive(noise_psd, "noise_psd");
  positive(delay_bound_s, "delay_bound_s");
  if (tx_phase_s > frame_duration_s) {
    std::ostringstream msg;
    msg << "system config: tx_phase_s (" << tx_phase_s << ") exceeds frame_duration_s ("
        << frame_duration_s << ")";
    throw DomainError(msg.str());
  }
  if (blocklength() < 1.0 - kBlocklengthSlack) {
    std::ostringstream msg;
    msg << "system config: blocklength tx_phase_s * bandwidth_hz = " << blocklength()
        << " is below one channel use";
    throw DomainError(msg.str());
  }
}

Sinr::Sinr(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0) || std::isinf(gamma)) {
    std::ostringstream msg;
    msg << "SINR must be finite and >= 0, got " << gamma;
    throw DomainError(msg.str());
  }
}

double Sinr::db() const { return 10.0 * std::log10(gamma_); }

double channel_dispersion(Sinr gamma, DispersionMode mode) {
  const double one_plus = 1.0 + gamma.linear();
  switch (mode) {
    case DispersionMode::PaperLiteral:
      return gamma.linear() / one_plus;
    case DispersionMode::Standard:
      return gamma.linear() * (1.0 + one_plus) / (one_plus * one_plus);
  }
  return 0.0;
}

double achievable_packets(Sinr gamma, const SystemConfig& cfg, Probability eps_c,
                          DispersionMode mode) {
  return packets(gamma, cfg, eps_c, mode, 1.0);
}

double achievable_packets_oma(Sinr gamma, const SystemConfig& cfg, Probability eps_c,
                              DispersionMode mode) {
  return packets(gamma, cfg, eps_c, mode, 2.0);
}

double transmission_error_probability(Sinr gamma, const SystemConfig& cfg,
                                      double packets_per_frame, DispersionMode mode) {
  cfg.validate();
  if (!(packets_per_frame >= 0.0)) {
    throw DomainError("transmission_error_probability: packets_per_frame must be >= 0");
  }
  if (!(gamma.linear() > 0.0)) {
    throw DomainError("transmission_error_probability: gamma must be > 0 (no rate at zero SINR)");
  }
  const double n = cfg.blocklength();
  const double v = channel_dispersion(gamma, mode);
  const double margin =
      std::log1p(gamma.linear()) - packets_per_frame * cfg.packet_size_bits * std::numbers::ln2 / n;
  return q_function(std::sqrt(n / v) * margin);
}

}  // namespace urllc
