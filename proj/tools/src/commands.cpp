#include "urllc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "urllc/cli/config.hpp"
#include "urllc/cli/sweep.hpp"

namespace urllc::cli {

namespace {

using nlohmann::json;

json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) {
    return nullptr;
  }
  return *v;
}

json db_or_null(const std::optional<double>& linear) {
  if (!linear || !(*linear > 0.0)) {
    return nullptr;
  }
  return 10.0 * std::log10(*linear);
}

std::string policy_name(const SplitPolicy& p) {
  switch (p.kind) {
    case SplitPolicy::Kind::Equal:
      return "equal";
    case SplitPolicy::Kind::Fixed:
      return "fixed";
    case SplitPolicy::Kind::Optimized:
      return "optimized";
  }
  return "";
}

SweepSpec resolve_spec(const CommandOptions& options) {
  if (options.preset.empty() == options.config.empty()) {
    throw ConfigError("exactly one of --preset or --config is required");
  }
  SweepSpec spec = options.preset.empty() ? load_sweep(ConfigFile::load(options.config))
                                          : preset(options.preset);
  if (options.mode) {
    spec.mode = parse_mode(*options.mode).dispersion;
  }
  return spec;
}

template <class Result>
int emit_csv(const CommandOptions& options, const Result& result, std::ostream& out,
             std::ostream& err) {
  if (options.output.empty()) {
    write_csv(out, result);
    return kExitOk;
  }
  std::ofstream file(options.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << options.output << "'\n";
    return kExitRuntime;
  }
  write_csv(file, result);
  if (!file) {
    err << "error: failed writing '" << options.output << "'\n";
    return kExitRuntime;
  }
  return kExitOk;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StabilityError& e) {
    err << "stability error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

std::string plan_json(const PlanResult& plan, const std::optional<VerifyReport>& verify) {
  json messages = json::array();
  for (const MessagePlan& mp : plan.messages) {
    json m;
    m["label"] = std::string(message_label(mp.message));
    m["mean_arrivals_per_frame"] = mp.traffic.mean_arrivals_per_frame;
    if (mp.budget) {
      m["budget"] = {{"eps_c", mp.budget->eps_c},
                     {"eps_d", mp.budget->eps_d},
                     {"eps_q", mp.budget->eps_q}};
    } else {
      m["budget"] = nullptr;
    }
    m["theta"] = number_or_null(mp.theta);
    m["demand_packets_per_frame"] = mp.demand_packets_per_frame;
    m["required_sinr"] = number_or_null(mp.required_sinr);
    m["required_sinr_db"] = db_or_null(mp.required_sinr);
    m["iterations"] = mp.iterations;
    messages.push_back(std::move(m));
  }

  json j;
  j["feasible"] = plan.feasible;
  j["diagnostics"] = plan.diagnostics;
  j["warnings"] = plan.warnings;
  j["eps_d"] = plan.eps_d;
  j["split_policy"] = policy_name(plan.policy);
  j["mode"] = mode_name(plan.modes);
  j["messages"] = std::move(messages);
  j["required_rho"] = number_or_null(plan.required_rho);
  j["required_rho_db"] = db_or_null(plan.required_rho);
  if (verify) {
    json residuals = json::object();
    for (const MessageResidual& r : verify->residuals) {
      residuals[std::string(message_label(r.message))] = r.residual;
    }
    j["verification"] = {{"pass", verify->pass},
                         {"tolerance", verify->tolerance},
                         {"residuals", std::move(residuals)}};
  } else {
    j["verification"] = nullptr;
  }
  return j.dump();
}

std::string simulation_json(const QueueSimConfig& cfg, const DelayHistogram& hist,
                            const QueueValidation& v, double delay_bound_s) {
  json bounds = json::array();
  for (const BoundCheck& b : v.bounds) {
    bounds.push_back({{"delay_frames", b.delay_frames},
                      {"analytic", b.analytic},
                      {"empirical", b.empirical.probability},
                      {"ci_low", b.empirical.ci_low},
                      {"ci_high", b.empirical.ci_high},
                      {"pass", b.pass}});
  }

  json j;
  j["config"] = {{"seed", cfg.seed},
                 {"stream", cfg.stream},
                 {"num_frames", cfg.num_frames},
                 {"warmup_frames", cfg.effective_warmup()},
                 {"mean_arrivals_per_frame", cfg.traffic.mean_arrivals_per_frame},
                 {"service_packets_per_frame", cfg.service_packets_per_frame},
                 {"frame_duration_s", cfg.traffic.frame_duration_s}};
  j["packets"] = {{"arrived", hist.arrived},
                  {"departed", hist.departed},
                  {"backlog", hist.backlog},
                  {"recorded", hist.total_packets}};
  j["theta"] = v.theta;
  j["predicted_slope"] = v.predicted_slope;
  j["fitted_slope"] = v.fit.slope;
  j["fit_points"] = v.fit.points;
  j["slope_relative_error"] = v.slope_relative_error;
  j["slope_pass"] = v.slope_pass;
  j["bounds"] = std::move(bounds);
  j["bounds_pass"] = v.bounds_pass;

  const QosExponent theta(v.theta);
  const ViolationEstimate emp = empirical_violation(hist, delay_bound_s, cfg.traffic.frame_duration_s);
  j["delay_bound_s"] = delay_bound_s;
  j["analytic_eps_q"] = delay_violation_probability(cfg.traffic, theta, DelayBound(delay_bound_s));
  j["empirical_eps_q"] = {{"probability", emp.probability},
                          {"ci_low", emp.ci_low},
                          {"ci_high", emp.ci_high},
                          {"threshold_frames", emp.threshold_frames},
                          {"exceed_count", emp.exceed_count}};
  j["pass"] = v.slope_pass;
  return j.dump();
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec spec = resolve_spec(options);
    return emit_csv(options, run_sweep(spec, options.oma), out, err);
  });
}

int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec spec = resolve_spec(options);
    return emit_csv(options, run_compare(spec), out, err);
  });
}

int cmd_plan(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.config.empty()) {
      throw ConfigError("plan requires --config");
    }
    const ConfigFile file = ConfigFile::load(options.config);
    const SystemConfig system = load_system(file);
    const MessageTraffic traffic = load_message_traffic(file, system.frame_duration_s);
    const LinkGeometry link = load_link(file);
    const double eps_d = file.number("reliability", "eps_d");
    if (!(eps_d > 0.0 && eps_d < 1.0)) {
      throw ConfigError("[reliability] eps_d must lie in (0, 1)");
    }
    const SplitPolicy policy = load_split_policy(file);
    Modes modes = load_modes(file);
    if (options.mode) {
      modes = parse_mode(*options.mode);
    }

    const PlanResult plan = plan_noma(system, traffic, link, eps_d, policy, modes);
    std::optional<VerifyReport> verify;
    if (plan.feasible) {
      verify = verify_plan(plan, system);
    }
    out << plan_json(plan, verify) << '\n';
    return kExitOk;
  });
}

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.config.empty()) {
      throw ConfigError("simulate requires --config");
    }
    const ConfigFile file = ConfigFile::load(options.config);
    const QueueSimConfig cfg = load_queue_sim(file);
    const double bound = file.number("system", "delay_bound_s");
    if (!(bound > 0.0)) {
      throw ConfigError("[system] delay_bound_s must be > 0");
    }

    const DelayHistogram hist = simulate_queue(cfg);
    const QueueValidation validation = validate_queue_approximation(cfg, hist);
    out << simulation_json(cfg, hist, validation, bound) << '\n';

    if (!options.output.empty()) {
      std::ofstream file_out(options.output, std::ios::binary);
      if (!file_out) {
        err << "error: cannot open output file '" << options.output << "'\n";
        return static_cast<int>(kExitRuntime);
      }
      hist.write_csv(file_out);
    }
    if (!validation.bounds_pass) {
      err << "note: empirical violation exceeds the analytic bound plus slack at some delay bounds\n";
    }
    return static_cast<int>(validation.slope_pass ? kExitOk : kExitValidation);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Required-SNR planning for two-user NOMA URLLC downlinks"};
  app.require_subcommand(1);

  CommandOptions options;
  std::string mode;

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "Model variant: paper or corrected")
        ->check(CLI::IsMember({"paper", "corrected"}));
  };

  CLI::App* sweep = app.add_subcommand("sweep", "Required SNR along one parameter, CSV output");
  sweep->add_option("--config", options.config, "INI config with a [sweep] section");
  sweep->add_option("--preset", options.preset, "fig1, fig2, fig3 or fig4")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  sweep->add_option("--output", options.output, "CSV path (default: stdout)");
  sweep->add_flag("--oma", options.oma, "Use the orthogonal baseline");
  add_mode(sweep);

  CLI::App* compare = app.add_subcommand("compare", "NOMA vs OMA required SNR, CSV output");
  compare->add_option("--config", options.config, "INI config with a [sweep] section");
  compare->add_option("--preset", options.preset, "fig1, fig2, fig3 or fig4")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  compare->add_option("--output", options.output, "CSV path (default: stdout)");
  add_mode(compare);

  CLI::App* plan = app.add_subcommand("plan", "Plan one operating point, JSON to stdout");
  plan->add_option("--config", options.config, "INI config")->required();
  add_mode(plan);

  CLI::App* simulate = app.add_subcommand("simulate", "Validate the queueing approximation");
  simulate->add_option("--config", options.config, "INI config")->required();
  simulate->add_option("--output", options.output, "Histogram CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) {
      err << app.help();
    }
    return kExitUsage;
  }
  if (!mode.empty()) {
    options.mode = mode;
  }

  if (sweep->parsed()) {
    return cmd_sweep(options, out, err);
  }
  if (compare->parsed()) {
    return cmd_compare(options, out, err);
  }
  if (plan->parsed()) {
    return cmd_plan(options, out, err);
  }
  return cmd_simulate(options, out, err);
}

}  // namespace urllc::cli
