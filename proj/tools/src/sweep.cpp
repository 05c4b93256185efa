#include "urllc/cli/sweep.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "urllc/cli/format.hpp"
#include "urllc/planner.hpp"

namespace urllc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  SystemConfig cfg;
  double theta;
  double eps_c;
};

void apply(Param p, double value, Point& point) {
  switch (p) {
    case Param::None:
      break;
    case Param::EpsC:
      point.eps_c = value;
      break;
    case Param::Theta:
      point.theta = value;
      break;
    case Param::PacketBytes:
      point.cfg.packet_size_bits = value * kBitsPerByte;
      break;
    case Param::TxPhase:
      point.cfg.tx_phase_s = value;
      break;
  }
}

std::vector<double> overlays(const SweepSpec& spec) {
  if (spec.overlay == Param::None) {
    return {0.0};
  }
  return spec.overlay_values;
}

template <class Fn>
void for_each_point(const SweepSpec& spec, Fn&& fn) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  for (const double overlay : overlays(spec)) {
    for (const double x : grid) {
      Point p{spec.base, spec.theta, spec.eps_c};
      apply(spec.overlay, overlay, p);
      apply(spec.variable, x, p);
      fn(x, overlay, p);
    }
  }
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string_view param_name(Param p) {
  switch (p) {
    case Param::None:
      return "overlay";
    case Param::EpsC:
      return "eps_c";
    case Param::Theta:
      return "theta";
    case Param::PacketBytes:
      return "packet_size_bytes";
    case Param::TxPhase:
      return "tx_phase_s";
  }
  return "";
}

Param parse_param(const std::string& name) {
  if (name == "eps_c") return Param::EpsC;
  if (name == "theta") return Param::Theta;
  if (name == "u" || name == "packet_size_bytes") return Param::PacketBytes;
  if (name == "phi" || name == "tx_phase_s") return Param::TxPhase;
  if (name == "none" || name == "overlay") return Param::None;
  throw ConfigError("unknown sweep parameter '" + name +
                    "' (expected eps_c, theta, packet_size_bytes or tx_phase_s)");
}

void SweepSpec::validate() const {
  if (variable == Param::None) {
    throw ConfigError("[sweep] variable must name a parameter");
  }
  if (overlay == variable) {
    throw ConfigError("[sweep] overlay must differ from the swept variable");
  }
  if (!(start < stop)) {
    throw ConfigError("[sweep] start must be smaller than stop");
  }
  if (points < 2) {
    throw ConfigError("[sweep] points must be >= 2");
  }
  if (spacing == Spacing::Log && !(start > 0.0)) {
    throw ConfigError("[sweep] log spacing requires positive endpoints");
  }
  if (overlay != Param::None && overlay_values.empty()) {
    throw ConfigError("[sweep] overlay_values must list at least one value");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double last = points - 1;
  for (int i = 0; i < points; ++i) {
    const double t = i / last;
    if (i == 0) {
      out[i] = start;
    } else if (i == points - 1) {
      out[i] = stop;
    } else if (spacing == Spacing::Log) {
      out[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    } else {
      out[i] = start + t * (stop - start);
    }
  }
  return out;
}

SweepSpec preset(const std::string& name) {
  SweepSpec s;
  s.base = SystemConfig::with_packet_bytes(15.0, 3e-4);
  s.traffic = TrafficModel{};
  s.traffic.frame_duration_s = s.base.frame_duration_s;
  s.points = 20;
  s.spacing = Spacing::Log;
  if (name == "fig1" || name == "fig2") {
    s.variable = Param::EpsC;
    s.start = 1e-5;
    s.stop = 1e-3;
    s.theta = 0.1;
  } else if (name == "fig3" || name == "fig4") {
    s.variable = Param::Theta;
    s.start = 1e-3;
    s.stop = 1.0;
    s.eps_c = 1e-5;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig1, fig2, fig3 or fig4)");
  }
  if (name == "fig1" || name == "fig3") {
    s.overlay = Param::PacketBytes;
    s.overlay_values = {5.0, 15.0, 25.0};
  } else {
    s.overlay = Param::TxPhase;
    s.overlay_values = {1e-5, 3e-4};
  }
  return s;
}

SweepSpec load_sweep(const ConfigFile& cfg) {
  SweepSpec s;
  s.base = load_system(cfg);
  s.traffic = load_traffic(cfg, s.base.frame_duration_s);
  s.mode = load_modes(cfg).dispersion;
  s.variable = parse_param(cfg.text("sweep", "variable"));
  const std::string spacing = cfg.text_or("sweep", "spacing", "log");
  if (spacing == "log") {
    s.spacing = Spacing::Log;
  } else if (spacing == "linear") {
    s.spacing = Spacing::Linear;
  } else {
    throw ConfigError("[sweep] spacing: expected log or linear, got '" + spacing + "'");
  }
  s.start = cfg.number("sweep", "start");
  s.stop = cfg.number("sweep", "stop");
  s.points = static_cast<int>(cfg.integer("sweep", "points"));
  s.overlay = parse_param(cfg.text_or("sweep", "overlay", "none"));
  if (s.overlay != Param::None) {
    s.overlay_values = cfg.number_list("sweep", "overlay_values");
  }
  s.theta = cfg.number_or("sweep", "theta", s.theta);
  s.eps_c = cfg.number_or("sweep", "eps_c", s.eps_c);
  s.validate();
  return s;
}

SweepResult run_sweep(const SweepSpec& spec, bool oma) {
  SweepResult result;
  result.variable = spec.variable;
  result.overlay = spec.overlay;
  for_each_point(spec, [&](double x, double overlay, const Point& p) {
    SweepRow row{x, overlay, kNaN, kNaN, false, 0};
    try {
      const QosExponent qos(p.theta);
      const Probability eps(p.eps_c);
      const SinrSolution sol = oma ? solve_required_sinr_oma(p.cfg, spec.traffic, qos, eps, spec.mode)
                                   : solve_required_sinr(p.cfg, spec.traffic, qos, eps, spec.mode);
      row.snr_linear = sol.gamma.linear();
      row.snr_db = to_db(row.snr_linear);
      row.feasible = true;
      row.iterations = sol.iterations;
    } catch (const Error&) {
      row.feasible = false;
    }
    result.rows.push_back(row);
  });
  return result;
}

CompareResult run_compare(const SweepSpec& spec) {
  CompareResult result;
  result.variable = spec.variable;
  result.overlay = spec.overlay;
  for_each_point(spec, [&](double x, double overlay, const Point& p) {
    CompareRow row{x, overlay, kNaN, kNaN, kNaN, kNaN, kNaN, false};
    try {
      const QosExponent qos(p.theta);
      const Probability eps(p.eps_c);
      row.noma_linear = required_sinr(p.cfg, spec.traffic, qos, eps, spec.mode).linear();
      row.oma_linear = required_sinr_oma(p.cfg, spec.traffic, qos, eps, spec.mode).linear();
      row.noma_db = to_db(row.noma_linear);
      row.oma_db = to_db(row.oma_linear);
      row.gap_db = row.oma_linear == row.noma_linear ? 0.0 : row.oma_db - row.noma_db;
      row.feasible = true;
    } catch (const Error&) {
      row.feasible = false;
    }
    result.rows.push_back(row);
  });
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << param_name(result.variable) << ',' << param_name(result.overlay)
      << ",snr_db,snr_linear,feasible,iterations\n";
  for (const SweepRow& r : result.rows) {
    out << format_number(r.variable) << ',' << format_number(r.overlay) << ','
        << format_number(r.snr_db) << ',' << format_number(r.snr_linear) << ','
        << (r.feasible ? "true" : "false") << ',' << r.iterations << '\n';
  }
}

void write_csv(std::ostream& out, const CompareResult& result) {
  out << param_name(result.variable) << ',' << param_name(result.overlay)
      << ",snr_noma_linear,snr_oma_linear,snr_noma_db,snr_oma_db,gap_db,feasible\n";
  for (const CompareRow& r : result.rows) {
    out << format_number(r.variable) << ',' << format_number(r.overlay) << ','
        << format_number(r.noma_linear) << ',' << format_number(r.oma_linear) << ','
        << format_number(r.noma_db) << ',' << format_number(r.oma_db) << ','
        << format_number(r.gap_db) << ',' << (r.feasible ? "true" : "false") << '\n';
  }
}

SweepResult read_sweep_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("sweep csv: missing header");
  }
  const auto header = split_line(line);
  if (header.size() != 6) {
    throw ConfigError("sweep csv: header must have 6 columns");
  }
  result.variable = parse_param(header[0]);
  result.overlay = parse_param(header[1]);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = split_line(line);
    if (cells.size() != 6) {
      throw ConfigError("sweep csv line " + std::to_string(line_no) + ": expected 6 columns");
    }
    SweepRow r;
    r.variable = parse_number(cells[0]);
    r.overlay = parse_number(cells[1]);
    r.snr_db = parse_number(cells[2]);
    r.snr_linear = parse_number(cells[3]);
    if (cells[4] != "true" && cells[4] != "false") {
      throw ConfigError("sweep csv line " + std::to_string(line_no) + ": bad feasible flag");
    }
    r.feasible = cells[4] == "true";
    r.iterations = static_cast<int>(parse_number(cells[5]));
    result.rows.push_back(r);
  }
  return result;
}

}  // namespace urllc::cli
