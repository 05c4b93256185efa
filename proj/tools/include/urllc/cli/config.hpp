#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "urllc/error.hpp"
#include "urllc/fbl.hpp"
#include "urllc/noma.hpp"
#include "urllc/planner.hpp"
#include "urllc/sim.hpp"
#include "urllc/traffic.hpp"

namespace urllc::cli {

// Malformed or incomplete configuration. The message names the line (syntax
// errors) or the [section] key (missing/invalid values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// INI file with one section per module:
//
//   [system]      frame_duration_s, bandwidth_hz, packet_size_bytes | packet_size_bits,
//                 tx_phase_s, delay_bound_s, noise_psd (optional)
//   [traffic]     mean_arrivals_per_frame, eta (optional, default 1)
//   [traffic_11] [traffic_12] [traffic_22]
//                 optional per-message mean_arrivals_per_frame overrides
//   [link]        h1_sq, h2_sq, alpha1 / alpha2 (optional, default 0.2 / 0.8)
//   [reliability] eps_d, split = equal | fixed | optimized, split_ratio (fixed only)
//   [model]       mode = paper | corrected (optional)
//   [simulation]  seed, num_frames, service_packets_per_frame,
//                 warmup_frames (optional), stream (optional)
//   [sweep]       see SweepSpec
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path);
  static ConfigFile parse(const std::string& text);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  std::uint64_t integer(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  std::vector<double> number_list(const std::string& section, const std::string& key) const;

 private:
  explicit ConfigFile(boost::property_tree::ptree tree) : tree_(std::move(tree)) {}
  boost::property_tree::ptree tree_;
};

Modes parse_mode(const std::string& name);
std::string mode_name(const Modes& modes);

SystemConfig load_system(const ConfigFile& cfg);
TrafficModel load_traffic(const ConfigFile& cfg, double frame_duration_s);
MessageTraffic load_message_traffic(const ConfigFile& cfg, double frame_duration_s);
LinkGeometry load_link(const ConfigFile& cfg);
SplitPolicy load_split_policy(const ConfigFile& cfg);
Modes load_modes(const ConfigFile& cfg);
QueueSimConfig load_queue_sim(const ConfigFile& cfg);

}  // namespace urllc::cli
