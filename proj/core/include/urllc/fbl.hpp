#pragma once

#include <string>
#include <vector>

#include "urllc/numerics.hpp"

namespace urllc {

// Frame, bandwidth and packet parameters of the short-packet link.
//
// Rates are in nats: ln(1 + gamma) per channel use, with the u * ln 2 factor
// converting packets of u bits into nats. tx_phase_s * bandwidth_hz is the
// blocklength in channel uses.
struct SystemConfig {
  double frame_duration_s = 5e-4;
  double bandwidth_hz = 1e5;
  double packet_size_bits = 120.0;
  double tx_phase_s = 3e-4;
  double noise_psd = 4e-21;
  double delay_bound_s = 8e-4;

  static SystemConfig with_packet_bytes(double bytes, double tx_phase_s = 3e-4);

  double blocklength() const { return tx_phase_s * bandwidth_hz; }
  // Normal approximation gets unreliable below ~50 channel uses.
  bool small_blocklength() const { return blocklength() < 50.0; }
  // Human-readable warnings for valid but questionable settings.
  std::vector<std::string> warnings() const;

  // Throws DomainError if any invariant is violated.
  void validate() const;
};

constexpr double kBitsPerByte = 8.0;

// Linear (not dB) SINR.
class Sinr {
 public:
  explicit Sinr(double gamma);
  double linear() const noexcept { return gamma_; }
  double db() const;

 private:
  double gamma_;
};

enum class DispersionMode {
  // V = 1 - 1/(1 + gamma)
  PaperLiteral,
  // V = 1 - (1 + gamma)^-2, the usual AWGN dispersion in nats^2
  Standard,
};

double channel_dispersion(Sinr gamma, DispersionMode mode = DispersionMode::PaperLiteral);

// Packets per frame that fit at error probability eps_c:
//   s = n / (u ln 2) * [ln(1 + gamma) - sqrt(V / n) Qinv(eps_c)],  n = phi B.
// May be negative; see is_feasible().
double achievable_packets(Sinr gamma, const SystemConfig& cfg, Probability eps_c,
                          DispersionMode mode = DispersionMode::PaperLiteral);

// Two-user orthogonal split: each user sees half the blocklength,
//   s = n / (2 u ln 2) * [ln(1 + gamma) - sqrt(2 V / n) Qinv(eps_c)].
double achievable_packets_oma(Sinr gamma, const SystemConfig& cfg, Probability eps_c,
                              DispersionMode mode = DispersionMode::PaperLiteral);

// Error probability at which achievable_packets equals packets_per_frame.
// Requires gamma > 0 and packets_per_frame >= 0.
double transmission_error_probability(Sinr gamma, const SystemConfig& cfg,
                                      double packets_per_frame,
                                      DispersionMode mode = DispersionMode::PaperLiteral);

inline bool is_feasible(double packets_per_frame) { return packets_per_frame > 0.0; }

}  // namespace urllc
