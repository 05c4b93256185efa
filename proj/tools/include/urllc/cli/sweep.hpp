#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "urllc/cli/config.hpp"
#include "urllc/fbl.hpp"
#include "urllc/traffic.hpp"

namespace urllc::cli {

// Parameters a sweep axis or overlay can vary.
enum class Param { None, EpsC, Theta, PacketBytes, TxPhase };

std::string_view param_name(Param p);
Param parse_param(const std::string& name);

enum class Spacing { Linear, Log };

// Required-SNR sweep over one variable, repeated for every overlay value.
//
// [sweep] keys: variable, spacing (log | linear), start, stop, points,
// overlay (optional), overlay_values (with overlay), theta, eps_c; the swept or
// overlaid parameter ignores its fixed value.
struct SweepSpec {
  Param variable = Param::EpsC;
  Spacing spacing = Spacing::Log;
  double start = 1e-5;
  double stop = 1e-3;
  int points = 20;
  Param overlay = Param::None;
  std::vector<double> overlay_values;
  SystemConfig base;
  TrafficModel traffic;
  double theta = 0.1;
  double eps_c = 1e-5;
  DispersionMode mode = DispersionMode::PaperLiteral;

  // Throws ConfigError on a bad axis.
  void validate() const;
  // Grid along the variable; endpoints are exact.
  std::vector<double> grid() const;
};

// fig1: eps_c 1e-5..1e-3 (log, 20) x packet size {5, 15, 25} bytes, theta 0.1
// fig2: eps_c 1e-5..1e-3 (log, 20) x phi {1e-5, 3e-4} s, 15 bytes, theta 0.1
// fig3: theta 1e-3..1 (log, 20) x packet size {5, 15, 25} bytes, eps_c 1e-5
// fig4: theta 1e-3..1 (log, 20) x phi {1e-5, 3e-4} s, 15 bytes, eps_c 1e-5
// All on the default frame: T_f 0.5 ms, B 100 kHz, D 0.8 ms, lambda 0.01.
SweepSpec preset(const std::string& name);

SweepSpec load_sweep(const ConfigFile& cfg);

struct SweepRow {
  double variable = 0.0;
  double overlay = 0.0;
  double snr_db = 0.0;
  double snr_linear = 0.0;
  bool feasible = false;
  int iterations = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  Param variable = Param::EpsC;
  Param overlay = Param::None;
  std::vector<SweepRow> rows;
};

// Rows are ordered overlay-major, then along the grid. Solver failures are
// recorded as infeasible rows with NaN SNR.
SweepResult run_sweep(const SweepSpec& spec, bool oma = false);

struct CompareRow {
  double variable = 0.0;
  double overlay = 0.0;
  double noma_linear = 0.0;
  double oma_linear = 0.0;
  double noma_db = 0.0;
  double oma_db = 0.0;
  double gap_db = 0.0;
  bool feasible = false;
};

struct CompareResult {
  Param variable = Param::EpsC;
  Param overlay = Param::None;
  std::vector<CompareRow> rows;
};

CompareResult run_compare(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepResult& result);
void write_csv(std::ostream& out, const CompareResult& result);
// Inverse of write_csv for sweeps. Throws ConfigError on malformed input.
SweepResult read_sweep_csv(std::istream& in);

}  // namespace urllc::cli
