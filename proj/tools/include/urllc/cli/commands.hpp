#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "urllc/planner.hpp"
#include "urllc/sim.hpp"

namespace urllc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,    // bad flags or configuration
  kExitRuntime = 2,  // solver, stability or I/O failure
  kExitValidation = 3,  // simulate: slope check failed
};

struct CommandOptions {
  std::string config;
  std::string output;
  std::string preset;
  std::optional<std::string> mode;
  bool oma = false;
};

// Each command writes its primary result to `out` (or to options.output for
// CSV-producing commands) and messages to `err`, and returns an ExitCode.
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_plan(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err);

// Canonical JSON (sorted keys, no whitespace).
std::string plan_json(const PlanResult& plan, const std::optional<VerifyReport>& verify);
std::string simulation_json(const QueueSimConfig& cfg, const DelayHistogram& hist,
                            const QueueValidation& validation, double delay_bound_s);

// Full command line front end.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace urllc::cli
