#include "urllc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "urllc/error.hpp"

namespace urllc {

namespace {

constexpr double kSplitLimit = 1e-6;
constexpr int kSplitGridPoints = 41;
constexpr double kFrameMismatchTolerance = 1e-12;

void check_frames_agree(const SystemConfig& cfg, const TrafficModel& traffic) {
  if (std::abs(cfg.frame_duration_s - traffic.frame_duration_s) >
      kFrameMismatchTolerance * cfg.frame_duration_s) {
    std::ostringstream msg;
    msg << "frame duration mismatch: system " << cfg.frame_duration_s << " s vs traffic "
        << traffic.frame_duration_s << " s";
    throw DomainError(msg.str());
  }
}

// d/dy V(e^y - 1) for the two dispersion forms.
double dispersion_slope(double y, DispersionMode mode) {
  switch (mode) {
    case DispersionMode::PaperLiteral:
      return std::exp(-y);
    case DispersionMode::Standard:
      return 2.0 * std::exp(-2.0 * y);
  }
  return 0.0;
}

// Works in y = ln(1 + gamma). `users_sharing` is 1 for NOMA, 2 for the
// orthogonal split.
SinrSolution solve_sinr(const SystemConfig& cfg, const TrafficModel& traffic, QosExponent qos,
                        Probability eps_c, DispersionMode mode, double users_sharing) {
  cfg.validate();
  check_frames_agree(cfg, traffic);

  const double demand = cfg.frame_duration_s * effective_bandwidth(traffic, qos);
  if (demand == 0.0) {
    return {};
  }
  const double n = cfg.blocklength() / users_sharing;
  const double demand_nats = demand * cfg.packet_size_bits * std::numbers::ln2 / n;
  const double q_inv = inv_q_function(eps_c.value());
  if (q_inv == 0.0) {
    return {Sinr(std::expm1(demand_nats)), 0, false};
  }

  auto rhs = [&](double y) {
    const double v = channel_dispersion(Sinr(std::expm1(std::max(y, 0.0))), mode);
    return demand_nats + std::sqrt(v / n) * q_inv;
  };

  // Seed with V = 1, its supremum.
  const double seed = std::max(demand_nats + q_inv / std::sqrt(n), 0.0);
  RootResult root = fixed_point(rhs, seed);

  // Newton polish on y - rhs(y) so the packet identity holds to rounding.
  double y = root.value;
  double residual = y - rhs(y);
  for (int i = 0; i < 6 && residual != 0.0; ++i) {
    const double v = channel_dispersion(Sinr(std::expm1(std::max(y, 0.0))), mode);
    if (!(v > 0.0)) {
      break;
    }
    const double slope = 1.0 - q_inv * dispersion_slope(y, mode) / (2.0 * std::sqrt(n * v));
    if (slope == 0.0 || !std::isfinite(slope)) {
      break;
    }
    const double next = y - residual / slope;
    const double next_residual = next - rhs(next);
    if (!(next >= 0.0) || !(std::abs(next_residual) < std::abs(residual))) {
      break;
    }
    y = next;
    residual = next_residual;
  }
  return {Sinr(std::expm1(std::max(y, 0.0))), root.iterations, root.used_fallback};
}

double split_objective(double ratio, double eps_d, const SystemConfig& cfg,
                       const TrafficModel& traffic, DispersionMode mode) {
  try {
    const ReliabilityBudget b = ReliabilityBudget::from_ratio(eps_d, ratio);
    const QosExponent qos = solve_qos_exponent(traffic, DelayBound(cfg.delay_bound_s), b.eps_q);
    return required_sinr(cfg, traffic, qos, Probability(b.eps_c), mode).linear();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

ReliabilityBudget ReliabilityBudget::from_ratio(double eps_d, double ratio) {
  if (!(eps_d > 0.0 && eps_d < 1.0)) {
    std::ostringstream msg;
    msg << "reliability budget: eps_d must lie in (0, 1), got " << eps_d;
    throw DomainError(msg.str());
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    std::ostringstream msg;
    msg << "reliability budget: split ratio must lie in (0, 1), got " << ratio;
    throw DomainError(msg.str());
  }
  ReliabilityBudget b;
  b.eps_d = eps_d;
  b.eps_c = ratio == 0.5 ? 0.5 * eps_d : ratio * eps_d;
  b.eps_q = eps_d - b.eps_c;
  if (!(b.eps_c > 0.0 && b.eps_q > 0.0)) {
    throw DomainError("reliability budget: split leaves an empty share");
  }
  return b;
}

SinrSolution solve_required_sinr(const SystemConfig& cfg, const TrafficModel& traffic,
                                 QosExponent qos, Probability eps_c, DispersionMode mode) {
  return solve_sinr(cfg, traffic, qos, eps_c, mode, 1.0);
}

SinrSolution solve_required_sinr_oma(const SystemConfig& cfg, const TrafficModel& traffic,
                                     QosExponent qos, Probability eps_c, DispersionMode mode) {
  return solve_sinr(cfg, traffic, qos, eps_c, mode, 2.0);
}

ReliabilityBudget split_budget(double eps_d, SplitPolicy policy, const SystemConfig& cfg,
                               const TrafficModel& traffic, DispersionMode mode) {
  switch (policy.kind) {
    case SplitPolicy::Kind::Equal:
      return ReliabilityBudget::from_ratio(eps_d, 0.5);
    case SplitPolicy::Kind::Fixed:
      return ReliabilityBudget::from_ratio(eps_d, policy.ratio);
    case SplitPolicy::Kind::Optimized:
      break;
  }

  ReliabilityBudget::from_ratio(eps_d, 0.5);  // validates eps_d
  auto objective = [&](double t) {
    return split_objective(logistic(t), eps_d, cfg, traffic, mode);
  };

  // Coarse log-odds grid, then golden-section refinement around the best cell.
  const double t_max = std::log((1.0 - kSplitLimit) / kSplitLimit);
  const double step = 2.0 * t_max / (kSplitGridPoints - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSplitGridPoints; ++i) {
    const double value = objective(-t_max + i * step);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  if (!std::isfinite(best_value)) {
    std::ostringstream msg;
    msg << "split_budget: no split of eps_d = " << eps_d << " in (" << kSplitLimit << ", "
        << 1.0 - kSplitLimit << ") yields a solvable plan";
    throw InfeasibleError(msg.str());
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -t_max + std::max(best - 1, 0) * step;
  double b = -t_max + std::min(best + 1, kSplitGridPoints - 1) * step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int i = 0; i < 100 && b - a > 1e-9; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }

  double best_t = -t_max + best * step;
  if (std::min(fc, fd) < best_value) {
    best_t = fc < fd ? c : d;
    best_value = std::min(fc, fd);
  }
  if (objective(0.0) <= best_value) {
    return ReliabilityBudget::from_ratio(eps_d, 0.5);
  }
  return ReliabilityBudget::from_ratio(eps_d, logistic(best_t));
}

std::string_view message_label(Message m) {
  switch (m) {
    case Message::M11:
      return "11";
    case Message::M12:
      return "12";
    case Message::M22:
      return "22";
  }
  return "";
}

const TrafficModel& MessageTraffic::operator[](Message m) const {
  switch (m) {
    case Message::M11:
      return m11;
    case Message::M12:
      return m12;
    case Message::M22:
      break;
  }
  return m22;
}

PlanResult plan_noma(const SystemConfig& cfg, const MessageTraffic& traffic,
                     const LinkGeometry& geometry, double eps_d, SplitPolicy policy,
                     Modes modes) {
  PlanResult result;
  result.modes = modes;
  result.policy = policy;
  result.eps_d = eps_d;
  if (geometry.swapped()) {
    result.warnings.push_back("channel gains were reordered so that h1_sq >= h2_sq");
  }

  try {
    cfg.validate();
  } catch (const Error& e) {
    result.diagnostics = std::string("blocklength/system: ") + e.what();
    return result;
  }
  for (const auto& w : cfg.warnings()) {
    result.warnings.push_back(w);
  }

  constexpr std::array<Message, 3> kMessages{Message::M11, Message::M12, Message::M22};
  std::array<double, 3> targets{};
  for (std::size_t i = 0; i < kMessages.size(); ++i) {
    MessagePlan& mp = result.messages[i];
    mp.message = kMessages[i];
    mp.traffic = traffic[mp.message];
    const std::string label = "message " + std::string(message_label(mp.message)) + ": ";
    try {
      mp.traffic.validate();
      check_frames_agree(cfg, mp.traffic);
      if (mp.traffic.mean_arrivals_per_frame == 0.0) {
        // Nothing arrives: no queue, no rate to carry.
        mp.required_sinr = 0.0;
        targets[i] = 0.0;
        continue;
      }
      const ReliabilityBudget budget = split_budget(eps_d, policy, cfg, mp.traffic, modes.dispersion);
      mp.budget = budget;
      const QosExponent qos =
          solve_qos_exponent(mp.traffic, DelayBound(cfg.delay_bound_s), budget.eps_q);
      mp.theta = qos.theta();
      mp.demand_packets_per_frame = cfg.frame_duration_s * effective_bandwidth(mp.traffic, qos);
      const SinrSolution sol =
          solve_required_sinr(cfg, mp.traffic, qos, Probability(budget.eps_c), modes.dispersion);
      mp.required_sinr = sol.gamma.linear();
      mp.iterations = sol.iterations;
      targets[i] = sol.gamma.linear();
    } catch (const InfeasibleError& e) {
      result.diagnostics = label + "queue/budget infeasible: " + e.what();
      return result;
    } catch (const BracketError& e) {
      result.diagnostics = label + "solver bracket: " + e.what();
      return result;
    } catch (const Error& e) {
      result.diagnostics = label + e.what();
      return result;
    }
  }

  try {
    const SinrTriple target{.gamma_22 = Sinr(targets[2]),
                            .gamma_12 = Sinr(targets[1]),
                            .gamma_11 = Sinr(targets[0])};
    result.required_rho = solve_rho_for_targets(geometry, target, modes.sinr);
    result.feasible = true;
  } catch (const InfeasibleError& e) {
    std::ostringstream msg;
    msg << "ceiling: " << e.what() << " (weak-user ceiling alpha2/alpha1 = "
        << weak_user_sinr_ceiling(geometry) << ")";
    result.diagnostics = msg.str();
  }
  return result;
}

VerifyReport verify_plan(const PlanResult& plan, const SystemConfig& cfg, double tolerance) {
  VerifyReport report;
  report.tolerance = tolerance;
  report.pass = plan.feasible;
  for (const MessagePlan& mp : plan.messages) {
    MessageResidual r;
    r.message = mp.message;
    if (!mp.required_sinr) {
      report.pass = false;
      report.residuals.push_back(r);
      continue;
    }
    const Sinr gamma(*mp.required_sinr);
    if (!mp.budget || mp.demand_packets_per_frame == 0.0) {
      // No arrivals: zero SINR carries exactly zero packets.
      r.residual = gamma.linear();
    } else {
      const double carried =
          achievable_packets(gamma, cfg, Probability(mp.budget->eps_c), plan.modes.dispersion);
      r.residual = (carried - mp.demand_packets_per_frame) / mp.demand_packets_per_frame;
    }
    r.pass = std::abs(r.residual) <= tolerance;
    report.pass = report.pass && r.pass;
    report.residuals.push_back(r);
  }
  return report;
}

}  // namespace urllc
