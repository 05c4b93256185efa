#include "urllc/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

namespace urllc::cli {

namespace {

std::string field(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing "; ..." or "# ..." comment (the marker must follow
// whitespace), then surrounding blanks.
std::string strip_value(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == ';' || s[i] == '#') && (s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return trim(s.substr(0, i));
    }
  }
  return trim(s);
}

double to_number(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("invalid number for " + where + ": '" + raw + "'");
  }
  return value;
}

template <class Fn>
auto wrap(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ConfigFile ConfigFile::parse(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::ostringstream msg;
    msg << "line " << e.line() << ": " << e.message();
    throw ConfigError(msg.str());
  }
  return ConfigFile(std::move(tree));
}

bool ConfigFile::has_section(const std::string& section) const {
  return tree_.get_child_optional(boost::property_tree::ptree::path_type(section, '/'))
      .has_value();
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(section + "/" + key, '/'))
      .has_value();
}

std::string ConfigFile::text(const std::string& section, const std::string& key) const {
  const auto value =
      tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(section + "/" + key, '/'));
  if (!value) {
    throw ConfigError("missing required field " + field(section, key));
  }
  return strip_value(*value);
}

std::string ConfigFile::text_or(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double ConfigFile::number(const std::string& section, const std::string& key) const {
  return to_number(text(section, key), field(section, key));
}

double ConfigFile::number_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

std::uint64_t ConfigFile::integer(const std::string& section, const std::string& key) const {
  const std::string s = text(section, key);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    // Accept integral values written in scientific notation, e.g. 1e7.
    const double d = to_number(s, field(section, key));
    if (!(d >= 0.0) || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
      throw ConfigError("invalid non-negative integer for " + field(section, key) + ": '" + s + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return value;
}

std::vector<double> ConfigFile::number_list(const std::string& section,
                                            const std::string& key) const {
  const std::string s = text(section, key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    out.push_back(to_number(item, field(section, key)));
  }
  if (out.empty()) {
    throw ConfigError("empty list for " + field(section, key));
  }
  return out;
}

Modes parse_mode(const std::string& name) {
  if (name == "paper") {
    return {DispersionMode::PaperLiteral, SinrMode::PaperLiteral};
  }
  if (name == "corrected") {
    return {DispersionMode::Standard, SinrMode::Corrected};
  }
  throw ConfigError("unknown mode '" + name + "' (expected paper or corrected)");
}

std::string mode_name(const Modes& modes) {
  return modes.dispersion == DispersionMode::PaperLiteral && modes.sinr == SinrMode::PaperLiteral
             ? "paper"
             : "corrected";
}

SystemConfig load_system(const ConfigFile& cfg) {
  SystemConfig s;
  s.frame_duration_s = cfg.number("system", "frame_duration_s");
  s.bandwidth_hz = cfg.number("system", "bandwidth_hz");
  const bool bytes = cfg.has("system", "packet_size_bytes");
  const bool bits = cfg.has("system", "packet_size_bits");
  if (bytes == bits) {
    throw ConfigError(
        "exactly one of [system] packet_size_bytes or [system] packet_size_bits is required");
  }
  s.packet_size_bits = bytes ? cfg.number("system", "packet_size_bytes") * kBitsPerByte
                             : cfg.number("system", "packet_size_bits");
  s.tx_phase_s = cfg.number("system", "tx_phase_s");
  s.delay_bound_s = cfg.number("system", "delay_bound_s");
  s.noise_psd = cfg.number_or("system", "noise_psd", s.noise_psd);
  wrap("[system]", [&] {
    s.validate();
    return 0;
  });
  return s;
}

TrafficModel load_traffic(const ConfigFile& cfg, double frame_duration_s) {
  TrafficModel t;
  t.mean_arrivals_per_frame = cfg.number("traffic", "mean_arrivals_per_frame");
  t.eta = cfg.number_or("traffic", "eta", 1.0);
  t.frame_duration_s = frame_duration_s;
  wrap("[traffic]", [&] {
    t.validate();
    return 0;
  });
  return t;
}

MessageTraffic load_message_traffic(const ConfigFile& cfg, double frame_duration_s) {
  const TrafficModel base = load_traffic(cfg, frame_duration_s);
  MessageTraffic out = MessageTraffic::uniform(base);
  auto override_for = [&](const char* section, TrafficModel& t) {
    if (cfg.has(section, "mean_arrivals_per_frame")) {
      t.mean_arrivals_per_frame = cfg.number(section, "mean_arrivals_per_frame");
      wrap(std::string("[") + section + "]", [&] {
        t.validate();
        return 0;
      });
    }
  };
  override_for("traffic_11", out.m11);
  override_for("traffic_12", out.m12);
  override_for("traffic_22", out.m22);
  return out;
}

LinkGeometry load_link(const ConfigFile& cfg) {
  const double h1 = cfg.number("link", "h1_sq");
  const double h2 = cfg.number("link", "h2_sq");
  const double a1 = cfg.number_or("link", "alpha1", LinkGeometry::kDefaultAlpha1);
  const double a2 = cfg.number_or("link", "alpha2", LinkGeometry::kDefaultAlpha2);
  return wrap("[link]", [&] { return LinkGeometry(h1, h2, a1, a2); });
}

SplitPolicy load_split_policy(const ConfigFile& cfg) {
  const std::string name = cfg.text_or("reliability", "split", "equal");
  if (name == "equal") {
    return SplitPolicy::equal();
  }
  if (name == "fixed") {
    const double r = cfg.number("reliability", "split_ratio");
    if (!(r > 0.0 && r < 1.0)) {
      throw ConfigError("[reliability] split_ratio must lie in (0, 1)");
    }
    return SplitPolicy::fixed(r);
  }
  if (name == "optimized") {
    return SplitPolicy::optimized();
  }
  throw ConfigError("[reliability] split: unknown policy '" + name +
                    "' (expected equal, fixed or optimized)");
}

Modes load_modes(const ConfigFile& cfg) {
  return wrap("[model] mode", [&] { return parse_mode(cfg.text_or("model", "mode", "paper")); });
}

QueueSimConfig load_queue_sim(const ConfigFile& cfg) {
  QueueSimConfig q;
  q.seed = cfg.integer("simulation", "seed");
  q.num_frames = cfg.integer("simulation", "num_frames");
  q.service_packets_per_frame = cfg.number("simulation", "service_packets_per_frame");
  if (cfg.has("simulation", "warmup_frames")) {
    q.warmup_frames = cfg.integer("simulation", "warmup_frames");
  }
  if (cfg.has("simulation", "stream")) {
    q.stream = cfg.integer("simulation", "stream");
  }
  q.traffic = load_traffic(cfg, cfg.number("system", "frame_duration_s"));
  return q;
}

}  // namespace urllc::cli
